//! ψ-class correlators `⟨τ_{a₁}···τ_{a_n}⟩_g` on `M̄_{g,n}` in every genus,
//! by the Virasoro (DVV) recursion with memoization.

use crate::arith::combinat::odd_double_factorial;
use crate::arith::{rat, rat_int};
use crate::Rat;
use num::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;

/// Key of a ψ-correlator: genus and the multiset of ψ-exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PsiKey {
    pub g: u32,
    pub exps: Vec<u32>,
}

impl PsiKey {
    pub fn new(g: u32, mut exps: Vec<u32>) -> Self {
        exps.sort_unstable();
        PsiKey { g, exps }
    }
}

fn dfac(k: i64) -> Rat {
    BigRational::from_integer(odd_double_factorial(k))
}

fn memo() -> &'static Mutex<HashMap<PsiKey, Rat>> {
    static MEMO: std::sync::OnceLock<Mutex<HashMap<PsiKey, Rat>>> = std::sync::OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `∫_{M̄_{g,n}} ψ₁^{a₁} ⋯ ψ_n^{a_n}`; zero off-dimension or unstable.
pub fn psi_dvv(g: u32, exps: &[u32]) -> Rat {
    let n = exps.len() as i64;
    if 2 * g as i64 - 2 + n <= 0 {
        return Rat::zero();
    }
    let dim = 3 * g as i64 - 3 + n;
    if exps.iter().map(|&a| a as i64).sum::<i64>() != dim {
        return Rat::zero();
    }
    let key = PsiKey::new(g, exps.to_vec());
    if let Some(v) = memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = compute(&key);
    memo().lock().unwrap().insert(key, v.clone());
    v
}

fn compute(key: &PsiKey) -> Rat {
    let g = key.g;
    let exps = &key.exps;
    // base cases
    if g == 0 && exps.as_slice() == [0, 0, 0] {
        return Rat::one();
    }
    if g == 1 && exps.as_slice() == [1] {
        return rat(1, 24);
    }
    // recurse on the largest exponent, which is >= 1 away from base cases
    let kk = *exps.last().unwrap();
    debug_assert!(kk >= 1, "non-base key with all exponents zero: {key:?}");
    let k1 = (kk - 1) as i64; // τ_{k1+1} is the distinguished insertion
    let rest: Vec<u32> = exps[..exps.len() - 1].to_vec();

    let mut acc = Rat::zero();

    // string of joins: τ_{k1+1} absorbs τ_{k_j}
    for (j, &kj) in rest.iter().enumerate() {
        let mut e: Vec<u32> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, &x)| x)
            .collect();
        e.push((k1 as u32) + kj);
        let c = dfac(2 * k1 + 2 * kj as i64 + 1) / dfac(2 * kj as i64 - 1);
        acc += c * psi_dvv(g, &e);
    }

    // boundary terms
    let half = rat(1, 2);
    for a in 0..=k1 - 1 {
        let b = k1 - 1 - a;
        let w = dfac(2 * a + 1) * dfac(2 * b + 1);
        // nonseparating: genus drops
        if g >= 1 {
            let mut e = rest.clone();
            e.push(a as u32);
            e.push(b as u32);
            acc += half.clone() * w.clone() * psi_dvv(g - 1, &e);
        }
        // separating: ordered (g₁, I) ⊔ (g₂, J)
        let m = rest.len();
        for mask in 0..(1u32 << m) {
            let (mut ei, mut ej) = (vec![a as u32], vec![b as u32]);
            for (i, &x) in rest.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    ei.push(x);
                } else {
                    ej.push(x);
                }
            }
            for g1 in 0..=g {
                let g2 = g - g1;
                let va = psi_dvv(g1, &ei);
                if va.is_zero() {
                    continue;
                }
                let vb = psi_dvv(g2, &ej);
                if vb.is_zero() {
                    continue;
                }
                acc += half.clone() * w.clone() * va * vb;
            }
        }
    }

    acc / dfac(2 * k1 + 3)
}

/// Multinomial closed form in genus zero: `(n-3)!/∏ aᵢ!`.
pub fn genus0_closed_form(exps: &[u32]) -> Rat {
    let n = exps.len() as i64;
    if n < 3 || exps.iter().map(|&a| a as i64).sum::<i64>() != n - 3 {
        return Rat::zero();
    }
    let mut v = Rat::one();
    for k in 2..=(n - 3) {
        v = v * rat_int(k);
    }
    for &a in exps {
        for k in 2..=(a as i64) {
            v = v / rat_int(k);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        assert_eq!(psi_dvv(0, &[0, 0, 0]), rat(1, 1));
        assert_eq!(psi_dvv(1, &[1]), rat(1, 24));
    }

    #[test]
    fn genus0_matches_multinomial() {
        for exps in [vec![1, 0, 0, 0], vec![2, 0, 0, 0, 0], vec![1, 1, 0, 0, 0], vec![3, 0, 0, 0, 0, 0], vec![2, 1, 0, 0, 0, 0], vec![1, 1, 1, 0, 0, 0]] {
            assert_eq!(psi_dvv(0, &exps), genus0_closed_form(&exps), "exps = {exps:?}");
        }
    }

    #[test]
    fn genus1_values() {
        assert_eq!(psi_dvv(1, &[0, 2]), rat(1, 24));
        assert_eq!(psi_dvv(1, &[1, 1]), rat(1, 24));
        assert_eq!(psi_dvv(1, &[0, 0, 3]), rat(1, 24));
        assert_eq!(psi_dvv(1, &[0, 1, 2]), rat(1, 12));
        assert_eq!(psi_dvv(1, &[1, 1, 1]), rat(1, 12));
    }

    #[test]
    fn genus2_one_point() {
        assert_eq!(psi_dvv(2, &[4]), rat(1, 1152));
        // string and dilaton images of ⟨τ₄⟩₂
        assert_eq!(psi_dvv(2, &[0, 5]), rat(1, 1152));
        assert_eq!(psi_dvv(2, &[1, 4]), rat(1, 384));
    }

    #[test]
    fn string_and_dilaton() {
        // string: ⟨τ₀ ∏τ_{aᵢ}⟩ = Σ ⟨… τ_{aᵢ-1} …⟩
        let base = [2u32, 3, 1];
        for g in 0..=2u32 {
            let dim = 3 * g as i64 - 3 + 4;
            // pad the key to the right dimension with an extra index
            let need = dim - 6;
            if need < 0 {
                continue;
            }
            let mut exps = base.to_vec();
            exps.push(need as u32);
            let mut with0 = exps.clone();
            with0.push(0);
            let lhs = psi_dvv(g, &with0);
            let mut rhs = Rat::zero();
            for j in 0..exps.len() {
                if exps[j] == 0 {
                    continue;
                }
                let mut e = exps.clone();
                e[j] -= 1;
                rhs += psi_dvv(g, &e);
            }
            assert_eq!(lhs, rhs, "string fails at g={g}");
            // dilaton: ⟨τ₁ ∏⟩ = (2g-2+n)⟨∏⟩
            let mut with1 = exps.clone();
            with1.push(1);
            let lhsd = psi_dvv(g, &with1);
            let f = rat_int(2 * g as i64 - 2 + exps.len() as i64);
            assert_eq!(lhsd, f * psi_dvv(g, &exps), "dilaton fails at g={g}");
        }
    }

    #[test]
    fn off_dimension_is_zero() {
        assert_eq!(psi_dvv(1, &[2]), rat(0, 1));
        assert_eq!(psi_dvv(0, &[1, 1, 1]), rat(0, 1));
    }
}
