//! Exact scalar and series arithmetic: big rationals, cyclotomic numbers,
//! truncated Laurent/power series, polynomials, rational functions and their
//! residues, Bernoulli numbers, partitions.
//!
//! Containers ([`laurent::Laurent`], [`poly::Poly`], [`mseries::MSeries`],
//! [`ratfn::RatFn`]) are generic over the [`Scalar`] coefficient ring; the
//! concrete scalars are [`crate::Rat`], [`cyclotomic::CoefNum`] and nested
//! series types. There is deliberately no floating-point instantiation.

pub mod bernoulli;
pub mod combinat;
pub mod cyclotomic;
pub mod laurent;
pub mod mseries;
pub mod poly;
pub mod ratfn;

use crate::{Error, Rat, Result};
use num::{BigInt, BigRational};
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Neg, Sub};

/// Coefficient ring for the generic series containers.
///
/// `from_rat` must be the canonical embedding of ℚ; `try_inv` fails on zero
/// (and, for truncated series scalars, on "zero as far as known", which
/// surfaces as [`Error::PrecisionLoss`]). `try_sqrt` only needs to succeed
/// where the pipelines require it and reports [`Error::NonSquareLeading`]
/// otherwise.
pub trait Scalar:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_rat(r: &Rat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(n)))
    }

    /// True when the value is zero *exactly*, not merely zero to its own
    /// truncation. Exact scalars coincide with `is_zero`; truncated series
    /// scalars distinguish the two, and only exactly-zero coefficients may
    /// be dropped or skipped by container arithmetic.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    fn mul_rat(&self, r: &Rat) -> Self {
        self.clone() * Self::from_rat(r)
    }

    fn try_inv(&self) -> Result<Self>;

    fn try_sqrt(&self) -> Result<Self>;
}

/// Square root of a rational if it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_zero() {
        return Some(Rat::zero());
    }
    if r.numer().sign() == num::bigint::Sign::Minus {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

impl Scalar for BigRational {
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::one() / self)
    }

    fn try_sqrt(&self) -> Result<Self> {
        rat_sqrt(self).ok_or(Error::NonSquareLeading)
    }
}

/// Convenience: rational from an integer pair.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}
