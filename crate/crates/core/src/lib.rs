//! Exact, order-by-order computation of both sides of the torus-knot mirror
//! identity on the resolved conifold.
//!
//! The A-side ([`amodel`]) computes open Gromov-Witten potentials
//! `F_{g,n}(X_1..X_n; q)` by virtual localization on
//! `O(-1) ⊕ O(-1) → P¹` with the torus-knot boundary condition. The B-side
//! ([`curve`], [`eo`]) runs the Eynard-Orantin residue recursion and an
//! independent graph sum on the spectral curve `1 + U + V + qUV = 0` with
//! `X = U^Q V^P`, producing `W_{g,n}(η_1..η_n; q)`. The [`mirror`] module
//! projects the B-side onto η-degrees divisible by `Q` and checks
//!
//! ```text
//! F_{g,n} = (-1)^{g-1+n} Q^n · (h · W_{g,n})        under X = η^Q, τ₁ = log q
//! ```
//!
//! coefficient by coefficient in exact arithmetic: all scalars live in the
//! cyclotomic field ℚ(ζ_{2Q}) (B-side) or in ℚ[s,s⁻¹] with the equivariant
//! parameter s carried symbolically (A-side). There is no floating point
//! anywhere in the pipelines.
//!
//! Series and polynomial containers are generic over the scalar via
//! [`arith::Scalar`]; the concrete instantiations used throughout are the
//! aliases below.

pub mod arith;
pub mod intersection;
pub mod curve;
pub mod eo;
pub mod amodel;
pub mod mirror;

mod error;
pub use error::Error;

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Rat = num::BigRational;

/// Element of ℚ(ζ_{2Q}), the universal coefficient field of the B-side.
pub use arith::cyclotomic::CoefNum;

/// Truncated Laurent series in the Kähler parameter q over ℚ(ζ_{2Q}).
pub type QLaurent = arith::laurent::Laurent<CoefNum>;

/// Local series in a ramification-point coordinate, coefficients in q-series.
pub type XiSeries = arith::laurent::Laurent<QLaurent>;

/// Laurent polynomial in the equivariant parameter s over ℚ (always exact).
pub type SRat = arith::laurent::Laurent<Rat>;

/// q-series with coefficients rational in s — the A-side scalar.
pub type AQSeries = arith::laurent::Laurent<SRat>;

/// Polynomial in the global curve coordinate U over q-series.
pub type UPoly = arith::poly::Poly<QLaurent>;

/// Rational function in U over q-series: meromorphic data on the mirror curve.
pub type URat = arith::ratfn::RatFn<QLaurent>;

/// Sparse multivariate power series (η's, X's) over a scalar ring.
pub type PSeries<T> = arith::mseries::MSeries<T>;

pub type Result<T> = std::result::Result<T, Error>;
