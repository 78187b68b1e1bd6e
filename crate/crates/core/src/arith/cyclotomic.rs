//! The cyclotomic field ℚ(ζ_{2Q}) as a polynomial quotient ring.
//!
//! Every B-side series coefficient lives here: the phases `e^{±πik/Q}`
//! appearing in η-expansions are exactly the powers `ζ_{2Q}^{±k}`. A value
//! carries the parameter `Q` it belongs to; plain rationals are stored with
//! `q_param = 0` and promoted on contact, so ℚ embeds canonically and
//! context-free constants (`zero`, `one`) exist. For `Q = 1` the field
//! degenerates to ℚ itself (ζ₂ = -1).

use super::Scalar;
use crate::{Error, Rat, Result};
use num::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Monic modulus Φ_{2Q} plus the reduction table for x^deg .. x^{2deg-2}.
#[derive(Debug)]
pub struct CycloField {
    pub q_param: u32,
    pub deg: usize,
    /// Coefficients of Φ_{2Q}, constant first, length deg+1, monic.
    pub modulus: Vec<Rat>,
    /// `red[j]` = canonical form of x^{deg+j}, length deg each.
    red: Vec<Vec<Rat>>,
}

fn registry() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static REG: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The 2Q-th cyclotomic polynomial, constant coefficient first.
///
/// Computed as (x^n - 1) / Π_{d|n, d<n} Φ_d via exact polynomial division.
pub fn cyclotomic_modulus(q_param: u32) -> Vec<Rat> {
    assert!(q_param >= 1, "Q must be positive");
    cyclotomic_poly(2 * q_param as u64)
}

fn cyclotomic_poly(n: u64) -> Vec<Rat> {
    if n == 1 {
        return vec![-Rat::one(), Rat::one()]; // x - 1
    }
    // x^n - 1
    let mut num = vec![Rat::zero(); n as usize + 1];
    num[0] = -Rat::one();
    num[n as usize] = Rat::one();
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn poly_div_exact(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut rem: Vec<Rat> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let lead = den[dd].clone();
    let mut quot = vec![Rat::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone() / lead.clone();
        if !c.is_zero() {
            for j in 0..=dd {
                let t = c.clone() * den[j].clone();
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

impl CycloField {
    pub fn get(q_param: u32) -> Arc<CycloField> {
        assert!(q_param >= 1);
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&q_param) {
            return f.clone();
        }
        let modulus = cyclotomic_modulus(q_param);
        let deg = modulus.len() - 1;
        // x^{deg+j} = x * x^{deg+j-1} reduced, bootstrapped from
        // x^deg = -(lower part of modulus). Cover products of reduced
        // elements and raw powers of ζ up to ζ^{2Q}.
        let hi = (2 * deg).max(2 * q_param as usize + 1);
        let mut red: Vec<Vec<Rat>> = Vec::with_capacity(hi - deg + 1);
        let base: Vec<Rat> = modulus[..deg].iter().map(|c| -c.clone()).collect();
        red.push(base);
        for j in 1..=(hi - deg) {
            let prev = red[j - 1].clone();
            let mut next = vec![Rat::zero(); deg];
            // multiply by x
            for (i, c) in prev.iter().enumerate() {
                if i + 1 < deg {
                    next[i + 1] += c.clone();
                } else {
                    for (k, r) in red[0].iter().enumerate() {
                        next[k] += c.clone() * r.clone();
                    }
                }
            }
            red.push(next);
        }
        let f = Arc::new(CycloField { q_param, deg, modulus, red });
        reg.insert(q_param, f.clone());
        f
    }

    fn reduce(&self, raw: Vec<Rat>) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.deg];
        for (i, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < self.deg {
                out[i] += c;
            } else {
                for (k, r) in self.red[i - self.deg].iter().enumerate() {
                    out[k] += c.clone() * r.clone();
                }
            }
        }
        out
    }
}

/// Element of ℚ(ζ_{2Q}) in the power basis 1, ζ, …, ζ^{φ(2Q)-1}.
#[derive(Clone)]
pub struct CoefNum {
    /// 0 = plain rational (not yet attached to a field).
    q_param: u32,
    /// Length 1 when `q_param == 0`, else φ(2Q).
    c: Vec<Rat>,
}

impl fmt::Debug for CoefNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rat() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, co) in self.c.iter().enumerate() {
            if co.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{co}")?;
            } else {
                write!(f, "({co})*z^{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CoefNum {
    pub fn from_rational(r: Rat) -> Self {
        CoefNum { q_param: 0, c: vec![r] }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Self::from_rational(super::rat(n, d))
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(super::rat_int(n))
    }

    /// ζ_{2Q}^k for the given field parameter (k may be negative).
    pub fn zeta_pow(q_param: u32, k: i64) -> Self {
        let f = CycloField::get(q_param);
        let n = 2 * q_param as i64;
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![Rat::zero(); k + 1];
        raw[k] = Rat::one();
        CoefNum { q_param, c: f.reduce(raw) }
    }

    /// The phase e^{iπ k/Q} = ζ_{2Q}^k.
    pub fn phase(q_param: u32, k: i64) -> Self {
        Self::zeta_pow(q_param, k)
    }

    pub fn q_param(&self) -> u32 {
        self.q_param
    }

    pub fn coords(&self) -> &[Rat] {
        &self.c
    }

    fn promote(&self, q_param: u32) -> CoefNum {
        debug_assert!(self.q_param == 0 || self.q_param == q_param);
        if self.q_param == q_param {
            return self.clone();
        }
        let f = CycloField::get(q_param);
        let mut c = vec![Rat::zero(); f.deg];
        c[0] = self.c[0].clone();
        CoefNum { q_param, c }
    }

    fn join(a: &CoefNum, b: &CoefNum) -> (CoefNum, CoefNum) {
        match (a.q_param, b.q_param) {
            (0, 0) => (a.clone(), b.clone()),
            (0, q) => (a.promote(q), b.clone()),
            (q, 0) => (a.clone(), b.promote(q)),
            (p, q) => {
                assert_eq!(p, q, "mixing cyclotomic fields Q={p} and Q={q}");
                (a.clone(), b.clone())
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    /// Deterministic canonical rendering, used by the JSON reports.
    pub fn render(&self) -> String {
        if let Some(r) = self.as_rat() {
            format!("{}/{}", r.numer(), r.denom())
        } else {
            format!("{self:?}")
        }
    }

    /// First nonzero power-basis coordinate is positive (branch-fixing rule).
    pub fn leading_coord_positive(&self) -> bool {
        for co in &self.c {
            if !co.is_zero() {
                return co.is_positive();
            }
        }
        false
    }
}

impl PartialEq for CoefNum {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = CoefNum::join(self, other);
        a.c == b.c
    }
}

impl Zero for CoefNum {
    fn zero() -> Self {
        CoefNum::int(0)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl One for CoefNum {
    fn one() -> Self {
        CoefNum::int(1)
    }
}

impl std::ops::Add for CoefNum {
    type Output = CoefNum;
    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = CoefNum::join(&self, &rhs);
        for (x, y) in a.c.iter_mut().zip(b.c.iter()) {
            *x += y.clone();
        }
        a
    }
}

impl std::ops::Sub for CoefNum {
    type Output = CoefNum;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl std::ops::Neg for CoefNum {
    type Output = CoefNum;
    fn neg(mut self) -> Self {
        for x in self.c.iter_mut() {
            *x = -x.clone();
        }
        self
    }
}

impl std::ops::Mul for CoefNum {
    type Output = CoefNum;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = CoefNum::join(&self, &rhs);
        if a.q_param == 0 {
            return CoefNum::from_rational(a.c[0].clone() * b.c[0].clone());
        }
        let f = CycloField::get(a.q_param);
        let mut raw = vec![Rat::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[i + j] += x.clone() * y.clone();
            }
        }
        CoefNum { q_param: a.q_param, c: f.reduce(raw) }
    }
}

impl Scalar for CoefNum {
    fn from_rat(r: &Rat) -> Self {
        CoefNum::from_rational(r.clone())
    }

    fn mul_rat(&self, r: &Rat) -> Self {
        let mut out = self.clone();
        for x in out.c.iter_mut() {
            *x *= r.clone();
        }
        out
    }

    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.q_param == 0 {
            return Ok(CoefNum::from_rational(Rat::one() / self.c[0].clone()));
        }
        // Extended Euclid in ℚ[x]: u·self + v·Φ = 1, so u = self⁻¹ mod Φ.
        let f = CycloField::get(self.q_param);
        let mut r0: Vec<Rat> = f.modulus.clone();
        let mut r1: Vec<Rat> = trim(self.c.clone());
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd (a nonzero constant since Φ is irreducible over ℚ)
        assert_eq!(r0.len(), 1, "cyclotomic modulus not coprime to element");
        let inv_gcd = Rat::one() / r0[0].clone();
        let mut u: Vec<Rat> = s0.iter().map(|c| c.clone() * inv_gcd.clone()).collect();
        u.resize(f.deg, Rat::zero());
        Ok(CoefNum { q_param: self.q_param, c: f.reduce(u) })
    }

    fn try_sqrt(&self) -> Result<Self> {
        // Only the rational perfect-square case is ever required; anything
        // else is a genuine NonSquareLeading for the series machinery.
        if let Some(r) = self.as_rat() {
            if let Some(s) = super::rat_sqrt(&r) {
                let mut out = CoefNum::from_rational(s);
                if self.q_param != 0 {
                    out = out.promote(self.q_param);
                }
                return Ok(out);
            }
        }
        Err(Error::NonSquareLeading)
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let den = den.to_vec();
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], trim(rem));
    }
    let nd = rem.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![Rat::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone() / lead.clone();
        if !c.is_zero() {
            for j in 0..=dd {
                let t = c.clone() * den[j].clone();
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.clone() * y.clone();
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len()), Rat::zero());
    for (i, y) in b.iter().enumerate() {
        out[i] -= y.clone();
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn modulus_ints(q: u32) -> Vec<i64> {
        cyclotomic_modulus(q)
            .iter()
            .map(|c| {
                assert!(c.denom() == &BigInt::one());
                use num_traits::ToPrimitive;
                c.numer().to_i64().unwrap()
            })
            .collect()
    }

    #[test]
    fn moduli_small_q() {
        assert_eq!(modulus_ints(1), vec![1, 1]); // x + 1
        assert_eq!(modulus_ints(2), vec![1, 0, 1]); // x² + 1
        assert_eq!(modulus_ints(3), vec![1, -1, 1]); // x² - x + 1
        assert_eq!(modulus_ints(4), vec![1, 0, 0, 0, 1]); // x⁴ + 1
        assert_eq!(modulus_ints(5), vec![1, -1, 1, -1, 1]);
    }

    #[test]
    fn zeta_is_root_of_unity() {
        for q in 1..=6u32 {
            let z = CoefNum::zeta_pow(q, 1);
            let mut p = CoefNum::one();
            for _ in 0..2 * q {
                p = p * z.clone();
            }
            assert_eq!(p, CoefNum::one(), "ζ_{{2·{q}}}^{{2·{q}}} ≠ 1");
            // primitive: ζ^Q = -1
            let mut h = CoefNum::one();
            for _ in 0..q {
                h = h * z.clone();
            }
            assert_eq!(h, -CoefNum::one());
        }
    }

    #[test]
    fn field_inverses() {
        // deterministic "random" elements: a = Σ (i+2)/(i+3) ζ^i + shift
        for q in [1u32, 2, 3, 5] {
            let f = CycloField::get(q);
            for shift in 0..8i64 {
                let mut a = CoefNum::zeta_pow(q, shift) + CoefNum::rational(shift + 2, 3);
                for i in 0..f.deg as i64 {
                    a = a + CoefNum::zeta_pow(q, i).mul_rat(&rat(i + 2, i + 3));
                }
                if a.is_zero() {
                    continue;
                }
                let inv = a.try_inv().unwrap();
                assert_eq!(a * inv, CoefNum::one());
            }
        }
    }

    #[test]
    fn rational_promotion_mixes() {
        let half = CoefNum::rational(1, 2);
        let z = CoefNum::zeta_pow(3, 1);
        let s = half.clone() + z.clone();
        let t = z + half;
        assert_eq!(s, t);
        assert!(!s.is_rational());
        assert!(CoefNum::rational(7, 5).is_rational());
    }

    #[test]
    fn phases_multiply() {
        // e^{iπa/Q} · e^{iπb/Q} = e^{iπ(a+b)/Q}
        let q = 5;
        let a = CoefNum::phase(q, 7);
        let b = CoefNum::phase(q, -3);
        assert_eq!(a * b, CoefNum::phase(q, 4));
    }
}
