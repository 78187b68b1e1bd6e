//! The torus-knot spectral curve `1 + U + V + qUV = 0` with `X = U^Q V^P`,
//! `Y = U^γ V^δ`, and all local B-model data derived from it.
//!
//! `V` is eliminated globally — the curve is rational with coordinate `U` and
//! `V(U) = -(1+U)/(1+qU)` — so every 1-form in play is a rational function
//! of `U` over q-series and residues are algorithmic. The coordinate
//! `x = -log X` never appears by itself: only the differences `x - x_σ` and
//! the rational form `dx = -dX/X` are used.
//!
//! # Square-root bookkeeping
//!
//! The local coordinate at a ramification point is `ζ_σ` with
//! `x = x_σ + ζ_σ²`. Its leading coefficient `ε_σ = √r_σ` (where
//! `x - x_σ = r_σ·(U-U_σ)²·(1 + …)`) generally lives in a quadratic
//! extension of ℚ(ζ_{2Q})((q)). Nothing here ever materializes `ε_σ`:
//! every stored series is expanded in the rational local coordinate
//! `ξ_σ = ζ_σ/ε_σ`, and quantities that carry odd powers of `ε_σ`
//! (the normalized differentials `θ^d_σ`, the jet coefficients `h_k`,
//! off-diagonal Laplace entries) are stored via their rationally-normalized
//! counterparts:
//!
//! * `θ̃^d_σ := ε_σ^{2d+1} θ^d_σ` — a rational 1-form in `U`;
//! * `H_k := ε_σ^k h_k` — the `ξ_σ^k` coefficient of `y - y_σ`;
//! * off-diagonal Laplace entries are stored times `ε_0 ε_1`.
//!
//! All mirror-identity outputs are even in each `ε_σ`, so the normalization
//! cancels; the graph sums account for the residual `r_σ = ε_σ²` powers.

mod build;
mod disk;

pub use build::{CurveCtx, RCheckData, RamPoint, ThetaTilde};
pub use disk::{closed_b01, DiskData};

use crate::{Error, Result};

/// Geometry and truncation orders of one spectral-curve computation.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub p: u32,
    pub q: u32,
    pub gamma: i64,
    pub delta: i64,
    /// q-orders carried by every series.
    pub q_order: i64,
    /// η-order for open-string expansions.
    pub eta_order: u32,
    /// z-order for the Laplace-transform matrix.
    pub z_order: i64,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CurveSpec {
    /// Default framing: the smallest `(γ,δ)` with `Qδ - Pγ = 1`.
    pub fn new(p: u32, q: u32, q_order: i64, eta_order: u32, z_order: i64) -> Result<Self> {
        if p == 0 || q == 0 || gcd(p, q) != 1 {
            return Err(Error::InvalidInput(format!("(P,Q) = ({p},{q}) must be coprime positive")));
        }
        let (mut g0, mut d0): (i64, i64) = (0, 0);
        for delta in 0..=p as i64 {
            let lhs = q as i64 * delta - 1;
            if lhs.rem_euclid(p as i64) == 0 {
                g0 = lhs / p as i64;
                d0 = delta;
                break;
            }
        }
        let spec = CurveSpec { p, q, gamma: g0, delta: d0, q_order, eta_order, z_order };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_framing(mut self, gamma: i64, delta: i64) -> Result<Self> {
        self.gamma = gamma;
        self.delta = delta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 || self.q == 0 || gcd(self.p, self.q) != 1 {
            return Err(Error::InvalidInput("P, Q must be coprime positive".into()));
        }
        if self.q as i64 * self.delta - self.p as i64 * self.gamma != 1 {
            return Err(Error::InvalidFraming);
        }
        if self.q_order < 1 || self.eta_order < 1 || self.z_order < 1 {
            return Err(Error::InvalidInput("orders must be >= 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_framing_is_valid() {
        for (p, q) in [(2u32, 3u32), (3, 4), (2, 5), (1, 1), (5, 2)] {
            let s = CurveSpec::new(p, q, 4, 4, 3).unwrap();
            assert_eq!(q as i64 * s.delta - p as i64 * s.gamma, 1, "({p},{q})");
        }
    }

    #[test]
    fn bad_framing_rejected() {
        let s = CurveSpec::new(2, 3, 4, 4, 3).unwrap().with_framing(1, 2);
        assert!(matches!(s, Err(Error::InvalidFraming)));
        assert!(CurveSpec::new(2, 4, 4, 4, 3).is_err());
    }
}
