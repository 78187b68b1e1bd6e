//! Sparse multivariate truncated power series (open-string moduli η/X).
//!
//! Exponent vectors are sparse in practice (few legs, low degrees), so terms
//! live in a `BTreeMap` keyed by the exponent tuple; the per-variable bound
//! `trunc[i]` means exponents of variable `i` are known through that degree.

use super::Scalar;
use crate::{Error, Rat, Result};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct MSeries<T> {
    nvars: usize,
    trunc: Vec<u32>,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Scalar> MSeries<T> {
    pub fn zero(trunc: Vec<u32>) -> Self {
        MSeries { nvars: trunc.len(), trunc, terms: BTreeMap::new() }
    }

    pub fn constant(trunc: Vec<u32>, c: T) -> Self {
        let mut s = Self::zero(trunc);
        s.set(vec![0; s.nvars], c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> &[u32] {
        &self.trunc
    }

    pub fn set(&mut self, exps: Vec<u32>, c: T) {
        debug_assert_eq!(exps.len(), self.nvars);
        if self.in_range(&exps) && !c.is_exact_zero() {
            self.terms.insert(exps, c);
        }
    }

    fn in_range(&self, exps: &[u32]) -> bool {
        exps.iter().zip(&self.trunc).all(|(e, t)| e <= t)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: T) {
        debug_assert_eq!(exps.len(), self.nvars);
        if !self.in_range(&exps) {
            return;
        }
        let entry = self.terms.remove(&exps).unwrap_or_else(T::zero);
        let v = entry + c;
        if !v.is_exact_zero() {
            self.terms.insert(exps, v);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Result<T> {
        if !self.in_range(exps) {
            return Err(Error::precision(format!(
                "multivariate coefficient {exps:?} beyond truncation {:?}",
                self.trunc
            )));
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_else(T::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let trunc: Vec<u32> =
            self.trunc.iter().zip(&rhs.trunc).map(|(a, b)| *a.min(b)).collect();
        let mut out = Self::zero(trunc);
        for (e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        self.map(|c| -c.clone())
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        // With positive valuations nothing is lost near the truncation bound:
        // a product exponent beyond the bound is simply dropped.
        let trunc: Vec<u32> =
            self.trunc.iter().zip(&rhs.trunc).map(|(a, b)| *a.min(b)).collect();
        let mut out = Self::zero(trunc);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map(|x| x.mul_rat(r))
    }

    pub fn map<F: Fn(&T) -> T>(&self, f: F) -> Self {
        let mut out = Self::zero(self.trunc.clone());
        for (e, c) in &self.terms {
            let v = f(c);
            if !v.is_exact_zero() {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    /// Substitute `var_i → var_i^k` (the `X = η^Q` change of variables).
    pub fn stretch_exponents(&self, k: u32) -> Self {
        assert!(k >= 1);
        let trunc: Vec<u32> = self.trunc.iter().map(|t| t * k).collect();
        let mut out = Self::zero(trunc);
        for (e, c) in &self.terms {
            out.terms.insert(e.iter().map(|x| x * k).collect(), c.clone());
        }
        out
    }

    /// Keep only terms whose every exponent is divisible by `q`.
    pub fn filter_divisible(&self, q: u32) -> Self {
        let mut out = Self::zero(self.trunc.clone());
        for (e, c) in &self.terms {
            if e.iter().all(|x| x % q == 0) {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Replace each variable's argument: var_i ↦ a_i · var_i.
    pub fn scale_args(&self, a: &[T]) -> Self {
        assert_eq!(a.len(), self.nvars);
        let mut out = Self::zero(self.trunc.clone());
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    v = v * a[i].clone();
                }
            }
            out.add_term(e.clone(), v);
        }
        out
    }

    /// Is the series symmetric under every permutation of the variables?
    pub fn is_symmetric(&self) -> bool {
        fn perms(e: &[u32]) -> Vec<Vec<u32>> {
            if e.len() <= 1 {
                return vec![e.to_vec()];
            }
            let mut out = Vec::new();
            for i in 0..e.len() {
                let mut rest = e.to_vec();
                let x = rest.remove(i);
                for mut p in perms(&rest) {
                    p.insert(0, x);
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
            out
        }
        for (e, c) in &self.terms {
            for p in perms(e) {
                if !self.in_range(&p) {
                    continue;
                }
                let cp = self.terms.get(&p).cloned().unwrap_or_else(T::zero);
                if cp != *c && !(cp.is_zero() && c.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// Restrict one variable to zero.
    pub fn set_var_zero(&self, i: usize) -> Self {
        let mut out = Self::zero(self.trunc.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    /// Univariate view of a 1-variable series.
    pub fn to_laurent(&self) -> super::laurent::Laurent<T> {
        assert_eq!(self.nvars, 1);
        let mut acc = super::laurent::Laurent::zero_through(self.trunc[0] as i64);
        for (e, c) in &self.terms {
            acc = acc.add_ref(
                &super::laurent::Laurent::monomial(e[0] as i64, c.clone())
                    .truncate(self.trunc[0] as i64),
            );
        }
        acc
    }

    pub fn from_laurent(s: &super::laurent::Laurent<T>, trunc: u32) -> Self {
        let mut out = Self::zero(vec![trunc]);
        for (k, c) in s.iter_known() {
            assert!(k >= 0, "negative exponent in power-series context");
            out.add_term(vec![k as u32], c.clone());
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for MSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})*m{e:?}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [trunc {:?}]", self.trunc)
    }
}

/// Compositional inverse of a univariate series, spec-level entry point.
pub fn series_reversion<T: Scalar>(f: &MSeries<T>) -> Result<MSeries<T>> {
    let g = super::laurent::revert(&f.to_laurent())?;
    Ok(MSeries::from_laurent(&g, f.trunc()[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use crate::Rat;

    #[test]
    fn mul_respects_truncation() {
        let mut a: MSeries<Rat> = MSeries::zero(vec![2, 2]);
        a.set(vec![1, 0], rat_int(1));
        a.set(vec![0, 1], rat_int(1));
        let p = a.mul_ref(&a).mul_ref(&a);
        // (x+y)³ truncated at degree 2 per variable: x³, y³ dropped
        assert_eq!(p.coeff(&[2, 1]).unwrap(), rat_int(3));
        assert!(p.coeff(&[3, 0]).is_err());
    }

    #[test]
    fn symmetry_detection() {
        let mut a: MSeries<Rat> = MSeries::zero(vec![3, 3]);
        a.set(vec![1, 2], rat_int(5));
        a.set(vec![2, 1], rat_int(5));
        assert!(a.is_symmetric());
        a.set(vec![3, 0], rat_int(1));
        assert!(!a.is_symmetric());
    }
}
