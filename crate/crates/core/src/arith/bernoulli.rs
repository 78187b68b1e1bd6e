//! Bernoulli numbers with the `B_1 = -1/2` convention, memoized.

use super::combinat::binomial;
use crate::Rat;
use num::BigRational;
use num_traits::{One, Zero};
use std::sync::Mutex;

static CACHE: Mutex<Vec<Option<Rat>>> = Mutex::new(Vec::new());

/// `B_n`, computed from `Σ_{k=0}^{n} C(n+1,k) B_k = 0` with `B_0 = 1`.
pub fn bernoulli(n: u32) -> Rat {
    let mut cache = CACHE.lock().unwrap();
    if cache.len() <= n as usize {
        cache.resize(n as usize + 1, None);
    }
    if let Some(v) = &cache[n as usize] {
        return v.clone();
    }
    // Fill from the bottom so the recurrence only looks backwards.
    for m in 0..=n as usize {
        if cache[m].is_some() {
            continue;
        }
        let v = if m == 0 {
            Rat::one()
        } else {
            let mut acc = Rat::zero();
            for k in 0..m {
                let c = BigRational::from_integer(binomial(m as u64 + 1, k as u64));
                acc += c * cache[k].as_ref().unwrap();
            }
            -acc / BigRational::from_integer(binomial(m as u64 + 1, m as u64))
        };
        cache[m] = Some(v);
    }
    cache[n as usize].clone().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn recurrence_closes() {
        // Σ_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1.
        for n in 1..20u64 {
            let mut acc = Rat::zero();
            for k in 0..=n as u32 {
                acc += BigRational::from_integer(binomial(n + 1, k as u64)) * bernoulli(k);
            }
            assert!(acc.is_zero(), "recurrence fails at n={n}");
        }
    }
}
