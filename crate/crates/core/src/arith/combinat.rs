//! Integer combinatorics used by the graph sums and localization weights.

use crate::Rat;
use num::{BigInt, BigRational};
use num_traits::{One, Signed, Zero};

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Double factorial of an odd argument: `x!! = 1·3·5···x`, with `(-1)!! = 1`.
pub fn odd_double_factorial(x: i64) -> BigInt {
    assert!(x >= -1 && x % 2 != 0, "odd_double_factorial needs odd x >= -1");
    let mut acc = BigInt::one();
    let mut j = 1i64;
    while j <= x {
        acc *= j;
        j += 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k.min(n - k) {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn rat_of(n: BigInt) -> Rat {
    BigRational::from_integer(n)
}

/// All partitions of `n` in weakly decreasing order, e.g. `3 → [3],[2,1],[1,1,1]`.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut part = rest.min(max);
        while part >= 1 {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All ways to write `n` as an ordered tuple of `k` nonnegative integers.
pub fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn go(rest: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if slots == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=rest {
            prefix.push(v);
            go(rest - v, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// `(-1)^n` as a rational sign.
pub fn sign_pow(n: i64) -> Rat {
    if n.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_factorial_base_cases() {
        assert_eq!(odd_double_factorial(-1), BigInt::one());
        assert_eq!(odd_double_factorial(1), BigInt::one());
        assert_eq!(odd_double_factorial(5), BigInt::from(15));
        assert_eq!(odd_double_factorial(9), BigInt::from(945));
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(3, 2).len(), 4);
    }
}
