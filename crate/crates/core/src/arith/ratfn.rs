//! Rational functions in the global curve coordinate, and residues of the
//! associated 1-forms `f(U)·dU`.

use super::laurent::Laurent;
use super::poly::Poly;
use super::Scalar;
use crate::{Error, Rat, Result};

/// `num/den` with gcd-reduced representation where reduction is decidable.
#[derive(Clone, Debug)]
pub struct RatFn<T: Scalar> {
    pub num: Poly<T>,
    pub den: Poly<T>,
}

impl<T: Scalar> RatFn<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut f = RatFn { num, den };
        f.reduce()?;
        Ok(f)
    }

    pub fn from_poly(num: Poly<T>) -> Self {
        RatFn { num, den: Poly::constant(T::one()) }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    fn reduce(&mut self) -> Result<()> {
        if self.num.is_zero() {
            self.den = Poly::constant(T::one());
            return Ok(());
        }
        // Best effort: over truncated-series coefficient rings the Euclidean
        // chain can hit leading coefficients without a representable inverse
        // (exact non-monomial series). Reduction is then skipped; every
        // consumer that needs a valuation guards it at division time.
        if let Ok(g) = self.num.gcd(&self.den) {
            if g.degree().unwrap_or(0) > 0 {
                if let (Ok((qn, rn)), Ok((qd, rd))) = (self.num.divmod(&g), self.den.divmod(&g)) {
                    if rn.is_zero() && rd.is_zero() {
                        self.num = qn;
                        self.den = qd;
                    }
                }
            }
        }
        if let Some(lead) = self.den.leading() {
            if let Ok(li) = lead.try_inv() {
                self.den = self.den.scale(&li);
                self.num = self.num.scale(&li);
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add_ref(&self, rhs: &Self) -> Result<Self> {
        RatFn::new(
            self.num.mul_ref(&rhs.den).add_ref(&rhs.num.mul_ref(&self.den)),
            self.den.mul_ref(&rhs.den),
        )
    }

    pub fn sub_ref(&self, rhs: &Self) -> Result<Self> {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        RatFn { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn mul_ref(&self, rhs: &Self) -> Result<Self> {
        RatFn::new(self.num.mul_ref(&rhs.num), self.den.mul_ref(&rhs.den))
    }

    pub fn div_ref(&self, rhs: &Self) -> Result<Self> {
        if rhs.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.num.mul_ref(&rhs.den), self.den.mul_ref(&rhs.num))
    }

    pub fn scale(&self, c: &T) -> Self {
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        RatFn { num: self.num.scale_rat(r), den: self.den.clone() }
    }

    /// d/dU.
    pub fn derivative(&self) -> Result<Self> {
        let n = self.num.derivative().mul_ref(&self.den);
        let d = self.num.mul_ref(&self.den.derivative());
        RatFn::new(n.sub_ref(&d), self.den.mul_ref(&self.den))
    }

    /// Evaluate on a series argument; denominator inversion carries the
    /// precision guard.
    pub fn eval_series(&self, x: &Laurent<T>) -> Result<Laurent<T>> {
        let n = self.num.eval_series(x);
        let d = self.den.eval_series(x);
        n.try_div(&d)
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        let d = self.den.eval(x);
        Ok(self.num.eval(x) * d.try_inv()?)
    }

    /// Laurent expansion in ε of `self(center + ε)`, reliable through ε^order.
    pub fn expand_at(&self, center: &T, order: i64) -> Result<Laurent<T>> {
        let ns = self.num.shift_expand(center);
        let ds = self.den.shift_expand(center);
        let n: Laurent<T> = Laurent::from_coeffs(0, ns.coeffs().to_vec()).truncate(order + self.den.coeffs().len() as i64 + 1);
        let d: Laurent<T> = Laurent::from_coeffs(0, ds.coeffs().to_vec()).truncate(order + self.den.coeffs().len() as i64 + 1);
        n.try_div(&d).map(|s| s.truncate(order))
    }

    /// Residue at `U = center` of the 1-form `self · dU`.
    ///
    /// A regular point is not an error: the residue is simply zero. A
    /// denominator whose low ε-coefficients all vanish only up to their
    /// q-truncation raises `PrecisionLoss` (inherited from series division).
    pub fn residue_at(&self, center: &T) -> Result<T> {
        let deg_den = self.den.degree().unwrap_or(0) as i64;
        let exp = self.expand_at(center, deg_den.max(1))?;
        exp.coeff(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::Rat;

    fn upoly(cs: &[i64]) -> Poly<Rat> {
        Poly::new(cs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn residue_double_pole_no_residue() {
        // dU/(U-c)² at c → 0
        let c = rat(3, 1);
        let f = RatFn::new(upoly(&[1]), Poly::linear_root(c.clone()).pow(2)).unwrap();
        assert_eq!(f.residue_at(&c).unwrap(), rat(0, 1));
    }

    #[test]
    fn residue_simple_pole() {
        // dU/(U-c) at c → 1
        let c = rat(-2, 1);
        let f = RatFn::new(upoly(&[1]), Poly::linear_root(c.clone())).unwrap();
        assert_eq!(f.residue_at(&c).unwrap(), rat(1, 1));
    }

    #[test]
    fn residue_u_over_double_pole() {
        // (U dU)/(U-c)² at c → 1
        let c = rat(5, 1);
        let f = RatFn::new(upoly(&[0, 1]), Poly::linear_root(c.clone()).pow(2)).unwrap();
        assert_eq!(f.residue_at(&c).unwrap(), rat(1, 1));
    }

    #[test]
    fn residue_regular_point_is_zero() {
        let f = RatFn::new(upoly(&[1, 1]), Poly::linear_root(rat(1, 1))).unwrap();
        assert_eq!(f.residue_at(&rat(7, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn gcd_reduction() {
        // (U²-1)/(U-1) = U+1
        let f = RatFn::new(upoly(&[-1, 0, 1]), upoly(&[-1, 1])).unwrap();
        assert_eq!(f.den.degree(), Some(0));
        assert_eq!(f.num.coeff(1), rat(1, 1));
        assert_eq!(f.num.coeff(0), rat(1, 1));
    }
}
