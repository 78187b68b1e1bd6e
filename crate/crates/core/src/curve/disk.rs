//! Disk-level data: the open coordinate η = X^{1/Q} at (U,V) = (0,-1),
//! the expansion v(η) by Lagrange inversion, and the disk amplitude.

use super::CurveSpec;
use crate::arith::combinat::factorial;
use crate::arith::laurent::{revert, Laurent};
use crate::arith::{rat, Scalar};
use crate::{CoefNum, QLaurent, Result};
use num::BigRational;
use num_traits::One;

/// Open-string data around `s₀`. The constant `v(0) = -√-1·π` is carried as
/// a convention (the branch with `V(0) = e^{iπ}`), never as a number: only
/// `v(η) - v(0)` is stored.
#[derive(Clone, Debug)]
pub struct DiskData {
    /// η(U) = ζ_{2Q}^P · U · [(1+U)/(1+qU)]^{P/Q}
    pub eta_of_u: Laurent<QLaurent>,
    pub u_of_eta: Laurent<QLaurent>,
    pub v_minus_v0: Laurent<QLaurent>,
    /// W_{0,1}(η,q) = Σ B_{0,1}(w,d) η^w q^d
    pub w01: Laurent<QLaurent>,
}

pub fn build_disk(spec: &CurveSpec, qn: i64) -> Result<DiskData> {
    let m = spec.eta_order as i64;
    let p = spec.p as i64;
    let q = spec.q as i64;
    let one_u = Laurent::<QLaurent>::one()
        .add_ref(&Laurent::monomial(1, QLaurent::one()))
        .truncate(m);
    let one_qu = Laurent::<QLaurent>::one()
        .add_ref(&Laurent::monomial(1, QLaurent::monomial(1, CoefNum::one())))
        .truncate(m);
    let ratio = one_u.mul_ref(&one_qu.try_inv_ref()?).truncate(m);
    // the branch of (-1)^{P/Q} is fixed so that the η-linear coefficient of
    // v(η) - v(0) matches the closed-form disk invariant at (w,d) = (1,0)
    let omega = CoefNum::phase(spec.q, p);
    let eta_of_u = Laurent::monomial(1, QLaurent::constant(omega))
        .truncate(m)
        .mul_ref(&ratio.pow_rat(&rat(p, q)).map_err(|e| crate::Error::InvalidInput(format!("disk ratio pow: {e}")))?);
    let u_of_eta = revert(&eta_of_u)?;

    let v_of_u = one_qu.log1()?.sub_ref(&one_u.log1()?);
    let v_minus_v0 = v_of_u.compose(&u_of_eta)?.map(|c| c.truncate(qn));
    let w01 = -(v_minus_v0.shift(-1).integrate()?);

    Ok(DiskData { eta_of_u, u_of_eta, v_minus_v0, w01 })
}

/// The closed-form B-model disk invariant
/// `B_{0,1}(w,d) = (1/w) e^{-πi((P+Q)w/Q - d - 1)}
///                 Π_{m=1}^{w-1}(m - d + Pw/Q) / (Γ(d+1)Γ(w-d+1))`.
pub fn closed_b01(p: u32, q: u32, w: i64, d: i64) -> CoefNum {
    use num_traits::Zero;
    if w < 1 || d < 0 || d > w {
        return CoefNum::zero();
    }
    let phase = CoefNum::phase(q, -((p as i64 + q as i64) * w - q as i64 * (d + 1)));
    let mut prod = BigRational::one();
    for m in 1..w {
        prod = prod * (rat(m - d, 1) + rat(p as i64 * w, q as i64));
    }
    let den = BigRational::from_integer(factorial(d as u64))
        * BigRational::from_integer(factorial((w - d) as u64))
        * rat(w, 1);
    phase.mul_rat(&(prod / den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveCtx;
    use num_traits::Zero;

    #[test]
    fn closed_form_anchors() {
        // (P,Q) = (2,3): hand-evaluated values
        assert_eq!(closed_b01(2, 3, 3, 0), CoefNum::rational(2, 3));
        assert_eq!(closed_b01(2, 3, 3, 1), CoefNum::int(-1));
        // empty-product case: B_{0,1}(1,0) = e^{-πiP/Q}
        for (p, q) in [(2u32, 3u32), (3, 4), (2, 5)] {
            assert_eq!(closed_b01(p, q, 1, 0), CoefNum::phase(q, -(p as i64)));
        }
        // out of range
        assert!(closed_b01(2, 3, 2, 3).is_zero());
    }

    #[test]
    fn lagrange_inversion_matches_closed_form() {
        // the whole disk pipeline against the closed form, every (w,d)
        let spec = CurveSpec::new(2, 3, 6, 7, 2).unwrap();
        let ctx = CurveCtx::build(spec).unwrap();
        let w01 = &ctx.disk.w01;
        for w in 1..=7i64 {
            let cw = w01.coeff_or_zero(w);
            for d in 0..=w.min(6) {
                let got = cw.coeff(d).unwrap();
                assert_eq!(got, closed_b01(2, 3, w, d), "(w,d)=({w},{d})");
            }
        }
    }

    #[test]
    fn h_projected_disk_coefficients_are_rational() {
        let spec = CurveSpec::new(2, 3, 5, 9, 2).unwrap();
        let ctx = CurveCtx::build(spec).unwrap();
        for w in 1..=9i64 {
            let cw = ctx.disk.w01.coeff_or_zero(w);
            for d in 0..=5i64 {
                let c = cw.coeff_or_zero(d);
                if w % 3 == 0 {
                    assert!(c.is_rational(), "h-projected coefficient not rational at ({w},{d})");
                }
            }
        }
    }
}
