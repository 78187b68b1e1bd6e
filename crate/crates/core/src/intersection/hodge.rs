//! Mixed ψ–λ Hodge integrals: genus ≤ 1 from first principles, genus 2 from
//! a validated external table. The Chern polynomial products
//! `Λ∨_g(w₁u)Λ∨_g(w₂u)Λ∨_g(w₃u)` that localization produces are expanded
//! here with the genus-level ring relations already applied.

use super::psi::psi_dvv;
use crate::arith::{rat, rat_int};
use crate::{Error, Rat, Result};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::io::BufRead;

/// Key of a mixed Hodge integral, λ-monomial in reduced form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HodgeKey {
    pub g: u32,
    pub exps: Vec<u32>,
    /// Sorted λ-indices, each ≤ g, after the genus-level reduction
    /// (g=1: λ₁²→0; g=2: λ₁²→2λ₂, λ₂²→0).
    pub lam: Vec<u8>,
}

impl HodgeKey {
    pub fn new(g: u32, mut exps: Vec<u32>, mut lam: Vec<u8>) -> Self {
        exps.sort_unstable();
        lam.sort_unstable();
        HodgeKey { g, exps, lam }
    }
}

/// Genus-2 λ-monomial integrals `∫ ψ^{a⃗} λ_m`, loaded from a text table.
///
/// Line format: `g n a1,...,an L1,...,Lk num/den` with `-` for an empty
/// exponent list. Keys must be in reduced form and satisfy the degree match.
#[derive(Debug, Default)]
pub struct G2Table {
    values: HashMap<(Vec<u32>, Vec<u8>), Rat>,
}

impl G2Table {
    pub fn load(path: &std::path::Path) -> Result<G2Table> {
        let f = std::fs::File::open(path)?;
        let mut table = G2Table::default();
        for (lineno, line) in std::io::BufReader::new(f).lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            table
                .insert_line(line)
                .map_err(|e| Error::TableFormat(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(table)
    }

    fn insert_line(&mut self, line: &str) -> Result<()> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::TableFormat("expected 5 fields".into()));
        }
        let g: u32 = fields[0].parse().map_err(|_| Error::TableFormat("bad g".into()))?;
        if g != 2 {
            return Err(Error::TableFormat("only g = 2 entries are accepted".into()));
        }
        let n: usize = fields[1].parse().map_err(|_| Error::TableFormat("bad n".into()))?;
        let exps: Vec<u32> = if fields[2] == "-" {
            vec![]
        } else {
            fields[2]
                .split(',')
                .map(|s| s.parse().map_err(|_| Error::TableFormat("bad exponent".into())))
                .collect::<Result<_>>()?
        };
        if exps.len() != n {
            return Err(Error::TableFormat("exponent count does not match n".into()));
        }
        let lam: Vec<u8> = fields[3]
            .split(',')
            .map(|s| s.parse().map_err(|_| Error::TableFormat("bad lambda index".into())))
            .collect::<Result<_>>()?;
        let (rat_num, rat_den) = fields[4]
            .split_once('/')
            .ok_or_else(|| Error::TableFormat("value must be num/den".into()))?;
        let num: i64 = rat_num.parse().map_err(|_| Error::TableFormat("bad numerator".into()))?;
        let den: i64 = rat_den.parse().map_err(|_| Error::TableFormat("bad denominator".into()))?;
        if den <= 0 {
            return Err(Error::TableFormat("denominator must be positive".into()));
        }
        // validation: reduced monomial, index range, degree match
        let mut lam_sorted = lam.clone();
        lam_sorted.sort_unstable();
        if lam_sorted.is_empty() || lam_sorted.iter().any(|&i| i == 0 || i > 2) {
            return Err(Error::TableFormat("lambda indices must be in {1,2}".into()));
        }
        if lam_sorted.iter().filter(|&&i| i == 1).count() > 1
            || lam_sorted.iter().filter(|&&i| i == 2).count() > 1
        {
            return Err(Error::TableFormat("monomial not reduced (λ₁²→2λ₂, λ₂²→0)".into()));
        }
        let deg: i64 = exps.iter().map(|&a| a as i64).sum::<i64>()
            + lam_sorted.iter().map(|&i| i as i64).sum::<i64>();
        if deg != 3 + n as i64 {
            return Err(Error::TableFormat(format!("degree {deg} != dim {}", 3 + n)));
        }
        let mut key_exps = exps;
        key_exps.sort_unstable();
        self.values.insert((key_exps, lam_sorted), rat(num, den));
        Ok(())
    }

    pub fn lookup(&self, exps: &[u32], lam: &[u8]) -> Option<Rat> {
        let mut e = exps.to_vec();
        e.sort_unstable();
        let mut l = lam.to_vec();
        l.sort_unstable();
        self.values.get(&(e, l)).cloned()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Reduce a λ-monomial by the genus-level relations; `None` means the
/// monomial vanishes identically. Returns the reduced monomial and a
/// multiplier (the λ₁² → 2λ₂ rewrite carries a factor 2).
fn reduce_lambda(g: u32, lam: &[u8]) -> Option<(Vec<u8>, Rat)> {
    if lam.iter().any(|&i| i as u32 > g) {
        return Some((vec![], Rat::zero())); // λ_i = 0 for i > g
    }
    match g {
        0 => {
            if lam.is_empty() {
                Some((vec![], Rat::one()))
            } else {
                None
            }
        }
        1 => {
            let c1 = lam.iter().filter(|&&i| i == 1).count();
            match c1 {
                0 => Some((vec![], Rat::one())),
                1 => Some((vec![1], Rat::one())),
                _ => None, // λ₁² = 0
            }
        }
        2 => {
            let mut c1 = lam.iter().filter(|&&i| i == 1).count();
            let mut c2 = lam.iter().filter(|&&i| i == 2).count();
            let mut mult = Rat::one();
            while c1 >= 2 {
                c1 -= 2;
                c2 += 1;
                mult = mult * rat_int(2);
            }
            if c2 >= 2 {
                return None; // λ₂² = 0
            }
            let mut m = Vec::new();
            if c1 == 1 {
                m.push(1);
            }
            if c2 == 1 {
                m.push(2);
            }
            Some((m, mult))
        }
        _ => None,
    }
}

/// `∫_{M̄_{1,n}} λ₁ ψ^{a⃗}` by string reduction to `∫_{M̄_{1,1}} λ₁ = 1/24`.
/// λ-classes pull back under forgetful maps, so the string equation applies
/// verbatim with the λ₁ spectator.
fn genus1_lambda1(exps: &[u32]) -> Rat {
    let n = exps.len() as i64;
    let total: i64 = exps.iter().map(|&a| a as i64).sum();
    if total + 1 != n {
        return Rat::zero();
    }
    if n == 1 {
        return rat(1, 24); // ∫_{M̄_{1,1}} λ₁
    }
    // Σa = n-1 < n forces some zero exponent; apply string there.
    let j = exps.iter().position(|&a| a == 0).expect("dimension forces a zero exponent");
    let rest: Vec<u32> = exps
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != j)
        .map(|(_, &a)| a)
        .collect();
    let mut acc = Rat::zero();
    for i in 0..rest.len() {
        if rest[i] == 0 {
            continue;
        }
        let mut e = rest.clone();
        e[i] -= 1;
        acc += genus1_lambda1(&e);
    }
    acc
}

/// Exact mixed Hodge integral. Genus 0 and pure-ψ keys delegate to the DVV
/// recursion; genus 1 reduces λ₁-linear integrals from first principles;
/// genus 2 requires the external table.
pub fn hodge_mixed(key: &HodgeKey, g2: Option<&G2Table>) -> Result<Rat> {
    let (lam, mult) = match reduce_lambda(key.g, &key.lam) {
        None => return Ok(Rat::zero()),
        Some(x) => x,
    };
    if mult.is_zero() && !key.lam.is_empty() {
        return Ok(Rat::zero());
    }
    let n = key.exps.len() as i64;
    let deg: i64 = key.exps.iter().map(|&a| a as i64).sum::<i64>()
        + lam.iter().map(|&i| i as i64).sum::<i64>();
    if deg != 3 * key.g as i64 - 3 + n || 2 * key.g as i64 - 2 + n <= 0 {
        return Ok(Rat::zero());
    }
    if lam.is_empty() {
        return Ok(mult * psi_dvv(key.g, &key.exps));
    }
    match key.g {
        0 => Ok(Rat::zero()),
        1 => Ok(mult * genus1_lambda1(&key.exps)),
        2 => {
            let table = g2.ok_or(Error::UnsupportedGenus(2))?;
            let v = table.lookup(&key.exps, &lam).ok_or_else(|| {
                Error::TableFormat(format!(
                    "missing g=2 entry for exps {:?} lambda {:?}",
                    key.exps, lam
                ))
            })?;
            Ok(mult * v)
        }
        g => Err(Error::UnsupportedGenus(g)),
    }
}

/// Expand `Λ∨_g(w₁u) Λ∨_g(w₂u) Λ∨_g(w₃u)` into reduced λ-monomials.
///
/// Returns pairs (monomial, coefficient); the coefficient multiplies
/// `u^{3g - deg(monomial)}`, with the integer weights folded in.
pub fn lambda_vee_expand(g: u32, w: (&Rat, &Rat, &Rat)) -> Result<Vec<(Vec<u8>, Rat)>> {
    if g > 2 {
        return Err(Error::UnsupportedGenus(g));
    }
    // Λ∨_g(wu) = Σ_{i=0}^{g} (-1)^i λ_i (wu)^{g-i}
    let factor = |wi: &Rat| -> Vec<(Vec<u8>, Rat)> {
        (0..=g)
            .map(|i| {
                let mono: Vec<u8> = if i == 0 { vec![] } else { vec![i as u8] };
                let mut c = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                for _ in 0..(g - i) {
                    c = c * wi.clone();
                }
                (mono, c)
            })
            .collect()
    };
    let mut acc: HashMap<Vec<u8>, Rat> = HashMap::new();
    acc.insert(vec![], Rat::one());
    for f in [factor(w.0), factor(w.1), factor(w.2)] {
        let mut next: HashMap<Vec<u8>, Rat> = HashMap::new();
        for (m1, c1) in &acc {
            for (m2, c2) in &f {
                let mut m: Vec<u8> = m1.iter().chain(m2.iter()).cloned().collect();
                m.sort_unstable();
                if let Some((red, mult)) = reduce_lambda(g, &m) {
                    let c = c1.clone() * c2.clone() * mult;
                    if !c.is_zero() {
                        *next.entry(red).or_insert_with(Rat::zero) += c;
                    }
                }
            }
        }
        acc = next;
    }
    let mut out: Vec<(Vec<u8>, Rat)> =
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_expand_genus0_is_one() {
        let w = (rat(2, 1), rat(3, 1), rat(-5, 1));
        let e = lambda_vee_expand(0, (&w.0, &w.1, &w.2)).unwrap();
        assert_eq!(e, vec![(vec![], Rat::one())]);
    }

    #[test]
    fn lambda_expand_genus1() {
        // w1w2w3 - (w1w2 + w1w3 + w2w3) λ₁, with (P,Q) = (2,3) weights
        let (w1, w2, w3) = (rat(2, 1), rat(3, 1), rat(-5, 1));
        let e = lambda_vee_expand(1, (&w1, &w2, &w3)).unwrap();
        let const_term = e.iter().find(|(m, _)| m.is_empty()).unwrap();
        let l1_term = e.iter().find(|(m, _)| m.as_slice() == [1]).unwrap();
        assert_eq!(const_term.1, rat(-30, 1)); // -PQ(P+Q)
        assert_eq!(l1_term.1, -(rat(6, 1) + rat(-10, 1) + rat(-15, 1)));
    }

    #[test]
    fn hodge_base_and_string_family() {
        let v = hodge_mixed(&HodgeKey::new(1, vec![0], vec![1]), None).unwrap();
        assert_eq!(v, rat(1, 24));
        // ∫_{M̄_{1,n}} λ₁ ψ^{a⃗} = (1/24)(n-1)!/∏aᵢ!  (oracle, n ≤ 5)
        use crate::arith::combinat::factorial;
        use num::BigRational;
        for exps in [vec![1, 0], vec![0, 0, 2], vec![1, 1, 0], vec![2, 1, 0, 0], vec![1, 1, 1, 0]] {
            let n = exps.len() as u64;
            let mut oracle = rat(1, 24) * BigRational::from_integer(factorial(n - 1));
            for &a in &exps {
                oracle = oracle / BigRational::from_integer(factorial(a as u64));
            }
            let got = hodge_mixed(&HodgeKey::new(1, exps.clone(), vec![1]), None).unwrap();
            assert_eq!(got, oracle, "exps {exps:?}");
        }
    }

    #[test]
    fn lambda1_squared_vanishes() {
        let v = hodge_mixed(&HodgeKey::new(1, vec![1, 0, 0], vec![1, 1]), None).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn pure_psi_delegates() {
        let a = hodge_mixed(&HodgeKey::new(1, vec![1], vec![]), None).unwrap();
        assert_eq!(a, psi_dvv(1, &[1]));
    }

    #[test]
    fn genus0_with_lambda_is_zero() {
        let v = hodge_mixed(&HodgeKey::new(0, vec![0, 0, 0], vec![1]), None).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn g2_requires_table() {
        let r = hodge_mixed(&HodgeKey::new(2, vec![1], vec![1, 2]), None);
        assert!(matches!(r, Err(Error::UnsupportedGenus(2))));
    }

    #[test]
    fn g2_table_roundtrip() {
        let dir = std::env::temp_dir().join("g2_table_test.txt");
        std::fs::write(&dir, "# demo\n2 0 - 1,2 1/5760\n2 1 1 1,2 1/2880\n").unwrap();
        let t = G2Table::load(&dir).unwrap();
        assert_eq!(t.len(), 2);
        let v = hodge_mixed(&HodgeKey::new(2, vec![1], vec![1, 2]), Some(&t)).unwrap();
        assert_eq!(v, rat(1, 2880));
        // λ₁³ reduces to 2 λ₁λ₂
        let v2 = hodge_mixed(&HodgeKey::new(2, vec![1], vec![1, 1, 1]), Some(&t)).unwrap();
        assert_eq!(v2, rat(2, 2880));
        // malformed: degree mismatch
        std::fs::write(&dir, "2 1 0 1,2 1/1\n").unwrap();
        assert!(G2Table::load(&dir).is_err());
    }
}
