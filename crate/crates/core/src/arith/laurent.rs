//! Truncated Laurent series with tracked reliable order.
//!
//! A value represents `Σ_{k=val}^{trunc} c_k x^k + O(x^{trunc+1})`: every
//! coefficient with exponent ≤ `trunc` is known exactly. Operations compute
//! the truncation of the result from the truncations of the inputs — nothing
//! ever silently pretends to more q-orders than it has, and any division
//! whose denominator is zero *as far as it is known* (but not exactly zero)
//! raises [`Error::PrecisionLoss`] rather than guessing a valuation.
//!
//! Exact values (integers, polynomials) carry `trunc = INF` and behave as
//! ordinary Laurent polynomials. The same container is instantiated for the
//! Kähler parameter q, for local coordinates at ramification points, for the
//! descendant variable z and for the equivariant parameter s.

use super::Scalar;
use crate::{Error, Rat, Result};
use num_traits::{One, Zero};
use std::fmt;

/// Sentinel truncation for exact values; large enough that sums never wrap.
pub const INF: i64 = i64::MAX / 4;

fn tadd(a: i64, b: i64) -> i64 {
    if a >= INF || b >= INF {
        return INF;
    }
    a.saturating_add(b).min(INF)
}

#[derive(Clone)]
pub struct Laurent<T> {
    val: i64,
    coeffs: Vec<T>,
    trunc: i64,
}

impl<T: Scalar> Laurent<T> {
    pub fn new(val: i64, coeffs: Vec<T>, trunc: i64) -> Self {
        let mut s = Laurent { val, coeffs, trunc };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        // drop anything beyond the reliable window
        if self.trunc < INF {
            let keep = (self.trunc - self.val + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.first().map_or(false, |c| c.is_exact_zero()) {
            self.coeffs.remove(0);
            self.val += 1;
        }
        while self.coeffs.last().map_or(false, |c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = tadd(self.trunc, 1);
        }
    }

    /// Zero known exactly.
    pub fn exact_zero() -> Self {
        Laurent { val: INF, coeffs: vec![], trunc: INF }
    }

    /// Zero known only through x^t.
    pub fn zero_through(t: i64) -> Self {
        Laurent { val: tadd(t, 1), coeffs: vec![], trunc: t }
    }

    pub fn constant(c: T) -> Self {
        Laurent::new(0, vec![c], INF)
    }

    pub fn monomial(k: i64, c: T) -> Self {
        Laurent::new(k, vec![c], INF)
    }

    /// x^k with coefficient 1.
    pub fn var_pow(k: i64) -> Self {
        Self::monomial(k, T::one())
    }

    pub fn from_coeffs(val: i64, coeffs: Vec<T>) -> Self {
        Laurent::new(val, coeffs, INF)
    }

    pub fn is_exact(&self) -> bool {
        self.trunc >= INF
    }

    pub fn known_through(&self) -> i64 {
        self.trunc
    }

    /// Lowest exponent carrying a (known) nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn coeff(&self, k: i64) -> Result<T> {
        if k > self.trunc {
            return Err(Error::precision(format!(
                "coefficient at order {k} beyond truncation {}",
                self.trunc
            )));
        }
        Ok(self.coeff_or_zero(k))
    }

    /// Coefficient at exponent k, zero outside the stored window.
    pub fn coeff_or_zero(&self, k: i64) -> T {
        if k < self.val {
            return T::zero();
        }
        let i = (k - self.val) as usize;
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, t: i64) -> Self {
        let mut s = self.clone();
        s.trunc = s.trunc.min(t);
        s.normalize();
        s
    }

    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        if !s.coeffs.is_empty() {
            s.val += k;
        }
        if s.trunc < INF {
            s.trunc += k;
        }
        if s.coeffs.is_empty() {
            s.val = tadd(s.trunc, 1);
        }
        s
    }

    pub fn map<F: Fn(&T) -> T>(&self, f: F) -> Self {
        let coeffs = self.coeffs.iter().map(|c| f(c)).collect();
        Laurent::new(self.val, coeffs, self.trunc)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map(|x| x.mul_rat(r))
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        if self.coeffs.is_empty() && rhs.coeffs.is_empty() {
            return Laurent::new(0, vec![], trunc);
        }
        let val = match (self.coeffs.is_empty(), rhs.coeffs.is_empty()) {
            (true, false) => rhs.val,
            (false, true) => self.val,
            _ => self.val.min(rhs.val),
        };
        let mut top = val;
        if !self.coeffs.is_empty() {
            top = top.max(self.val + self.coeffs.len() as i64);
        }
        if !rhs.coeffs.is_empty() {
            top = top.max(rhs.val + rhs.coeffs.len() as i64);
        }
        let hi = top.min(tadd(trunc, 1));
        let mut coeffs = Vec::with_capacity((hi - val).max(0) as usize);
        for k in val..hi {
            coeffs.push(self.coeff_or_zero(k) + rhs.coeff_or_zero(k));
        }
        Laurent::new(val, coeffs, trunc)
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.clone().neg_self())
    }

    fn neg_self(self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if (self.coeffs.is_empty() && self.is_exact())
            || (rhs.coeffs.is_empty() && rhs.is_exact())
        {
            return Self::exact_zero();
        }
        let va = self.val;
        let vb = rhs.val;
        let trunc = tadd(self.trunc, vb).min(tadd(rhs.trunc, va));
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Laurent::new(0, vec![], trunc);
        }
        let lo = va + vb;
        let hi = if trunc >= INF {
            lo + (self.coeffs.len() + rhs.coeffs.len()) as i64 - 1
        } else {
            tadd(trunc, 1)
        };
        let n = (hi - lo).max(0) as usize;
        debug_assert!(n < 1 << 24, "mul window exploded: lo={lo} hi={hi}");
        let mut coeffs = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= n {
                    break;
                }
                coeffs[k] = coeffs[k].clone() + a.clone() * b.clone();
            }
        }
        Laurent::new(lo, coeffs, trunc)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the valuation guard lives here.
    pub fn try_inv_ref(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return if self.is_exact() {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::precision(format!(
                    "inverting a series that vanishes through order {}",
                    self.trunc
                )))
            };
        }
        let v = self.val;
        let lead_inv = self.coeffs[0].try_inv()?;
        // window length of the known part of self / x^v
        let n = if self.is_exact() {
            // exact polynomials still only produce finitely many terms here;
            // keep enough for downstream consumers by treating the window as
            // the polynomial length (result is exact only for monomials).
            if self.coeffs.len() == 1 {
                let mut out = Laurent::monomial(-v, lead_inv);
                out.trunc = INF;
                return Ok(out);
            }
            // 1/polynomial is an honest infinite series; callers must
            // truncate first. Refuse rather than pick a window silently.
            return Err(Error::InvalidInput(
                "inverse of an exact non-monomial series: truncate first".into(),
            ));
        } else {
            (self.trunc - v + 1) as usize
        };
        let mut inv = vec![T::zero(); n];
        inv[0] = lead_inv.clone();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                let a = self.coeff_or_zero(v + j as i64);
                if a.is_exact_zero() {
                    continue;
                }
                acc = acc + a * inv[k - j].clone();
            }
            inv[k] = -(lead_inv.clone() * acc);
        }
        Ok(Laurent::new(-v, inv, self.trunc - 2 * v))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        // truncate exact denominators to the useful window first
        let d = if rhs.is_exact() && rhs.coeffs.len() > 1 {
            let v = rhs.val;
            let window = if self.is_exact() {
                // both exact: pick a window wide enough for the numerator
                // plus denominator tail; callers doing exact division of
                // polynomials should use Poly instead.
                v + self.coeffs.len() as i64 + rhs.coeffs.len() as i64 + 4
            } else {
                tadd(self.trunc, rhs.coeffs.len() as i64 - v)
            };
            rhs.truncate(window)
        } else {
            rhs.clone()
        };
        Ok(self.mul_ref(&d.try_inv_ref()?))
    }

    /// Square root with even-valuation and square-leading-coefficient guard.
    /// Returns the branch whose leading coefficient is `T::try_sqrt` of the
    /// input's leading coefficient; negate for the other branch.
    pub fn try_sqrt_ref(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return if self.is_exact() {
                Ok(Self::exact_zero())
            } else {
                Ok(Self::zero_through(self.trunc / 2))
            };
        }
        if self.val % 2 != 0 {
            return Err(Error::OddValuation);
        }
        let lead = self.coeffs[0].try_sqrt()?;
        // self = lead² x^val (1 + u), r = lead x^{val/2} (1+u)^{1/2}
        let lead_sq_inv = (self.coeffs[0].clone()).try_inv()?;
        let unit = self.shift(-self.val).scale(&lead_sq_inv);
        let half = super::rat(1, 2);
        let root_unit = unit.pow_rat(&half)?;
        Ok(root_unit.scale(&lead).shift(self.val / 2))
    }

    /// `(1 + u)^a` for rational `a`, where `self = 1 + u` with `u` of
    /// positive valuation.
    pub fn pow_rat(&self, a: &Rat) -> Result<Self> {
        let c0_dev = self.coeff_or_zero(0) - T::one();
        if !c0_dev.is_zero() || self.valuation().map_or(false, |v| v < 0) {
            return Err(Error::InvalidInput(format!(
                "pow_rat needs a power series with constant term 1, got {self:?}"
            )));
        }
        let u = self.sub_ref(&Self::one());
        if u.coeffs.is_empty() {
            return Ok(Self::one().truncate(self.trunc));
        }
        let t = self.trunc;
        let vu = u.val.max(1);
        if t >= INF {
            return Err(Error::InvalidInput("pow_rat of exact series: truncate first".into()));
        }
        let kmax = t / vu;
        let mut acc = Self::one().truncate(t);
        let mut term = Self::one().truncate(t);
        let mut coef = Rat::one();
        for k in 0..kmax {
            coef = coef * (a.clone() - Rat::from_integer(k.into()))
                / Rat::from_integer((k + 1).into());
            term = term.mul_ref(&u).truncate(t);
            if term.coeffs.is_empty() && term.is_exact() {
                break;
            }
            acc = acc.add_ref(&term.scale_rat(&coef));
            if term.valuation().map_or(true, |v| v > t) {
                break;
            }
        }
        Ok(acc)
    }

    /// `log(self)` for a power series with constant term 1.
    pub fn log1(&self) -> Result<Self> {
        let c0_dev = self.coeff_or_zero(0) - T::one();
        if !c0_dev.is_zero() || self.valuation().map_or(false, |v| v < 0) {
            return Err(Error::InvalidInput("log1 needs constant term 1".into()));
        }
        let u = self.sub_ref(&Self::one());
        let t = self.trunc;
        let mut acc = if t >= INF { Self::exact_zero() } else { Self::zero_through(t) };
        let mut term = Self::one().truncate(t);
        let vu = match u.valuation() {
            None => return Ok(acc),
            Some(v) => v.max(1),
        };
        let kmax = if t >= INF {
            return Err(Error::InvalidInput("log1 of exact non-unit: truncate first".into()));
        } else {
            t / vu
        };
        for k in 1..=kmax {
            term = term.mul_ref(&u).truncate(t);
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add_ref(&term.scale_rat(&(sign / Rat::from_integer(k.into()))));
        }
        Ok(acc)
    }

    /// `exp(self)` for a series with positive valuation.
    pub fn exp(&self) -> Result<Self> {
        match self.valuation() {
            None => Ok(Self::one().truncate(self.trunc)),
            Some(v) if v >= 1 => {
                let t = self.trunc;
                if t >= INF {
                    return Err(Error::InvalidInput("exp of exact series: truncate first".into()));
                }
                let mut acc = Self::one().truncate(t);
                let mut term = Self::one().truncate(t);
                let mut fact = Rat::one();
                for k in 1..=(t / v) {
                    term = term.mul_ref(self).truncate(t);
                    fact = fact / Rat::from_integer(k.into());
                    acc = acc.add_ref(&term.scale_rat(&fact));
                }
                Ok(acc)
            }
            _ => Err(Error::InvalidInput("exp needs positive valuation".into())),
        }
    }

    /// Substitute `g` (valuation ≥ 1) into `self` viewed as a power series
    /// (valuation ≥ 0) in its variable.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let vg = match g.valuation() {
            Some(v) if v >= 1 => v,
            _ => return Err(Error::InvalidInput("compose needs valuation >= 1 substitution".into())),
        };
        if self.valuation().map_or(false, |v| v < 0) {
            return Err(Error::InvalidInput("compose needs a power series (valuation >= 0)".into()));
        }
        let t_f = self.trunc;
        let t_res = if t_f >= INF {
            g.trunc
        } else {
            g.trunc.min(vg.saturating_mul(t_f + 1) - 1)
        };
        if self.coeffs.is_empty() {
            return Ok(if t_res >= INF { Self::exact_zero() } else { Self::zero_through(t_res) });
        }
        let hi = self.val + self.coeffs.len() as i64 - 1;
        let mut horner = if t_res >= INF { Self::exact_zero() } else { Self::zero_through(t_res) };
        for k in (0..=hi).rev() {
            horner = horner.mul_ref(g).truncate(t_res);
            horner = horner.add_ref(&Self::constant(self.coeff_or_zero(k)));
        }
        Ok(horner.truncate(t_res))
    }

    /// d/dx.
    pub fn derivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            coeffs.push(c.mul_rat(&super::rat_int(k)));
        }
        Laurent::new(self.val - 1, coeffs, if self.is_exact() { INF } else { self.trunc - 1 })
    }

    /// x·d/dx.
    pub fn xdx(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            coeffs.push(c.mul_rat(&super::rat_int(k)));
        }
        Laurent::new(self.val, coeffs, self.trunc)
    }

    /// Termwise primitive with zero constant; errors on an x^{-1} term.
    pub fn integrate(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k == -1 {
                if c.is_zero() {
                    coeffs.push(T::zero());
                    continue;
                }
                return Err(Error::InvalidInput("integrate hit a log term (x^{-1})".into()));
            }
            coeffs.push(c.mul_rat(&(Rat::one() / super::rat_int(k + 1))));
        }
        Ok(Laurent::new(
            self.val + 1,
            coeffs,
            if self.is_exact() { INF } else { self.trunc + 1 },
        ))
    }

    /// Replace x by a·x.
    pub fn scale_arg(&self, a: &T) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut p = {
            // a^val, allowing negative val only for invertible a
            let mut base = T::one();
            if self.val >= 0 {
                for _ in 0..self.val {
                    base = base * a.clone();
                }
            } else {
                let ai = a.try_inv().expect("scale_arg with negative valuation needs invertible scale");
                for _ in 0..(-self.val) {
                    base = base * ai.clone();
                }
            }
            base
        };
        for c in &self.coeffs {
            coeffs.push(c.clone() * p.clone());
            p = p * a.clone();
        }
        Laurent::new(self.val, coeffs, self.trunc)
    }

    /// Drop all coefficients below exponent `v` after checking they vanish
    /// to their own truncation. For quantities whose low-order vanishing is
    /// forced by construction (critical points, singular-part subtractions)
    /// this upgrades "zero as far as known" to exact zero.
    pub fn assume_valuation(&self, v: i64) -> Result<Self> {
        let mut s = self.clone();
        while s.coeffs.first().map_or(false, |c| {
            s.val < v && c.is_zero()
        }) {
            s.coeffs.remove(0);
            s.val += 1;
        }
        if !s.coeffs.is_empty() && s.val < v {
            return Err(Error::InvalidInput(format!(
                "series has a nonzero coefficient at exponent {} below assumed valuation {v}",
                s.val
            )));
        }
        if s.coeffs.is_empty() {
            s.val = tadd(s.trunc, 1);
        }
        Ok(s)
    }

    pub fn iter_known(&self) -> impl Iterator<Item = (i64, &T)> {
        let v = self.val;
        self.coeffs.iter().enumerate().map(move |(i, c)| (v + i as i64, c))
    }
}

/// Compositional inverse of `f = c₁x + c₂x² + …` (c₁ invertible): returns
/// `g` with `f(g(x)) = x` to the truncation of `f`.
pub fn revert<T: Scalar>(f: &Laurent<T>) -> Result<Laurent<T>> {
    if f.valuation() != Some(1) {
        return Err(Error::NonUnitDerivative);
    }
    let c1 = f.coeff_or_zero(1);
    let c1_inv = c1.try_inv().map_err(|_| Error::NonUnitDerivative)?;
    let t = f.known_through();
    if t >= INF {
        return Err(Error::InvalidInput("revert of exact series: truncate first".into()));
    }
    let mut g = Laurent::monomial(1, c1_inv.clone()).truncate(t);
    for k in 2..=t {
        // f(g) is correct through order k-1; fix order k.
        let fg = f.compose(&g)?;
        let err = fg.coeff_or_zero(k);
        if !err.is_exact_zero() {
            let corr = -(c1_inv.clone() * err);
            g = g.add_ref(&Laurent::monomial(k, corr).truncate(t));
        }
    }
    Ok(g)
}

impl<T: Scalar> PartialEq for Laurent<T> {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && self.trunc == other.trunc && self.coeffs == other.coeffs
    }
}

impl<T: Scalar> fmt::Debug for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (k, c) in self.iter_known() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({c:?})*x^{k}")?;
            }
            if first {
                write!(f, "0")?;
            }
        }
        if !self.is_exact() {
            write!(f, " + O(x^{})", self.trunc + 1)?;
        }
        Ok(())
    }
}

impl<T: Scalar> Default for Laurent<T> {
    fn default() -> Self {
        Self::exact_zero()
    }
}

impl<T: Scalar> Zero for Laurent<T> {
    fn zero() -> Self {
        Self::exact_zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl<T: Scalar> One for Laurent<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Scalar> std::ops::Add for Laurent<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<T: Scalar> std::ops::Sub for Laurent<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<T: Scalar> std::ops::Neg for Laurent<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_self()
    }
}

impl<T: Scalar> std::ops::Mul for Laurent<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<T: Scalar> Scalar for Laurent<T> {
    fn from_rat(r: &Rat) -> Self {
        Self::constant(T::from_rat(r))
    }

    fn mul_rat(&self, r: &Rat) -> Self {
        self.scale_rat(r)
    }

    fn try_inv(&self) -> Result<Self> {
        self.try_inv_ref()
    }

    fn try_sqrt(&self) -> Result<Self> {
        self.try_sqrt_ref()
    }

    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::Rat;

    type S = Laurent<Rat>;

    fn qs(pairs: &[(i64, (i64, i64))], trunc: i64) -> S {
        let mut acc = S::zero_through(trunc);
        for (k, (n, d)) in pairs {
            acc = acc.add_ref(&S::monomial(*k, rat(*n, *d)).truncate(trunc));
        }
        acc
    }

    #[test]
    fn sqrt_matches_hand_value() {
        // 25 - 26q + q², discriminant for (P,Q) = (2,3)
        let s = qs(&[(0, (25, 1)), (1, (-26, 1)), (2, (1, 1))], 2);
        let r = s.try_sqrt_ref().unwrap();
        assert_eq!(r.coeff(0).unwrap(), rat(5, 1));
        assert_eq!(r.coeff(1).unwrap(), rat(-13, 5));
        assert_eq!(r.coeff(2).unwrap(), rat(-72, 125));
        assert_eq!(r.known_through(), 2);
        // r² = s to the reported truncation
        assert_eq!(r.mul_ref(&r).truncate(2), s);
    }

    #[test]
    fn sqrt_valuation_shift_and_guards() {
        let q2 = S::monomial(2, rat(1, 1)).truncate(6);
        assert_eq!(q2.try_sqrt_ref().unwrap().valuation(), Some(1));
        let q1 = S::monomial(1, rat(1, 1)).truncate(6);
        assert!(matches!(q1.try_sqrt_ref(), Err(crate::Error::OddValuation)));
        let ns = S::monomial(0, rat(2, 1)).truncate(6);
        assert!(matches!(ns.try_sqrt_ref(), Err(crate::Error::NonSquareLeading)));
    }

    #[test]
    fn reversion_catalan() {
        // f = t - t² reverts to t + t² + 2t³ + 5t⁴ + ...
        let f = qs(&[(1, (1, 1)), (2, (-1, 1))], 5);
        let g = revert(&f).unwrap();
        assert_eq!(g.coeff(1).unwrap(), rat(1, 1));
        assert_eq!(g.coeff(2).unwrap(), rat(1, 1));
        assert_eq!(g.coeff(3).unwrap(), rat(2, 1));
        assert_eq!(g.coeff(4).unwrap(), rat(5, 1));
        assert_eq!(g.coeff(5).unwrap(), rat(14, 1));
        // both round trips
        let x = S::monomial(1, rat(1, 1)).truncate(5);
        assert_eq!(f.compose(&g).unwrap(), x);
        assert_eq!(g.compose(&f).unwrap(), x);
    }

    #[test]
    fn reversion_linear_scaling() {
        let f = qs(&[(1, (2, 1))], 4);
        let g = revert(&f).unwrap();
        assert_eq!(g.coeff(1).unwrap(), rat(1, 2));
        assert!(g.coeff(2).unwrap().is_zero());
    }

    #[test]
    fn inversion_tracks_truncation() {
        // 1/(q·(1 - q)) known through q⁴: valuation -1, known through 2
        let s = qs(&[(1, (1, 1)), (2, (-1, 1))], 4);
        let inv = s.try_inv_ref().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.known_through(), 2);
        assert_eq!(inv.coeff(-1).unwrap(), rat(1, 1));
        assert_eq!(inv.coeff(0).unwrap(), rat(1, 1));
        assert_eq!(inv.coeff(2).unwrap(), rat(1, 1));
    }

    #[test]
    fn precision_guards() {
        let z = S::zero_through(3);
        assert!(matches!(z.try_inv_ref(), Err(crate::Error::PrecisionLoss(_))));
        assert!(matches!(S::exact_zero().try_inv_ref(), Err(crate::Error::DivisionByZero)));
        let s = qs(&[(0, (1, 1))], 2);
        assert!(s.coeff(3).is_err());
    }

    #[test]
    fn zero_window_absorbs_beyond() {
        // (0 + O(q⁴)) + q⁵ is still 0 + O(q⁴)
        let z = S::zero_through(3);
        let m = S::monomial(5, rat(7, 1));
        let sum = z.add_ref(&m);
        assert!(sum.is_zero());
        assert_eq!(sum.known_through(), 3);
    }
}
