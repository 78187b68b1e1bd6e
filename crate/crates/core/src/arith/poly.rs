//! Dense polynomials over a [`Scalar`] ring, constant coefficient first.

use super::laurent::Laurent;
use super::Scalar;
use crate::{Error, Rat, Result};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(k: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// x - c
    pub fn linear_root(c: T) -> Self {
        Poly::new(vec![-c, T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.mul_rat(r)).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul_rat(&super::rat_int(k as i64)));
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate on a Laurent series argument (Horner).
    pub fn eval_series(&self, x: &Laurent<T>) -> Laurent<T> {
        let mut acc: Laurent<T> = Laurent::exact_zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(&Laurent::constant(c.clone()));
        }
        acc
    }

    /// Taylor coefficients of `p(center + ε)` as a polynomial in ε.
    pub fn shift_expand(&self, center: &T) -> Poly<T> {
        let n = self.coeffs.len();
        let mut a = self.coeffs.clone();
        // repeated synthetic division by (x - center)
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone() * center.clone();
                a[j] = a[j].clone() + t;
            }
        }
        Poly::new(a)
    }

    /// Quotient and remainder; needs an invertible leading coefficient in the
    /// divisor (truncated-series leading zeros surface as `PrecisionLoss`).
    pub fn divmod(&self, den: &Self) -> Result<(Self, Self)> {
        let dd = match den.degree() {
            None => return Err(Error::DivisionByZero),
            Some(d) => d,
        };
        let lead_inv = den.coeffs[dd].try_inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let nd = rem.len() - 1;
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone() * lead_inv.clone();
            if !c.is_exact_zero() {
                for j in 0..=dd {
                    let t = c.clone() * den.coeffs[j].clone();
                    rem[k + j] = rem[k + j].clone() - t;
                }
            }
            quot[k] = c;
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading() {
            let li = lead.try_inv()?;
            a = a.scale(&li);
        }
        Ok(a)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::constant(T::one());
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn map<F: Fn(&T) -> T>(&self, f: F) -> Self {
        Poly::new(self.coeffs.iter().map(|c| f(c)).collect())
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})*U^{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::Rat;

    #[test]
    fn shift_expand_is_taylor() {
        // p = x² + 3x + 5 at center 2: p(2+ε) = 15 + 7ε + ε²
        let p: Poly<Rat> = Poly::new(vec![rat(5, 1), rat(3, 1), rat(1, 1)]);
        let s = p.shift_expand(&rat(2, 1));
        assert_eq!(s.coeff(0), rat(15, 1));
        assert_eq!(s.coeff(1), rat(7, 1));
        assert_eq!(s.coeff(2), rat(1, 1));
    }

    #[test]
    fn divmod_and_gcd() {
        // (x²-1) and (x-1): gcd = x-1 monic
        let a: Poly<Rat> = Poly::new(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        let b: Poly<Rat> = Poly::new(vec![rat(-1, 1), rat(1, 1)]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g.coeffs(), b.coeffs());
        let (q, r) = a.divmod(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.coeff(1), rat(1, 1));
        assert_eq!(q.coeff(0), rat(1, 1));
    }
}
