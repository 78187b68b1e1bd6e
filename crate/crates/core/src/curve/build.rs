//! Construction of all local data at the two ramification points.

use super::{disk, CurveSpec};
use crate::arith::combinat::odd_double_factorial;
use crate::arith::laurent::{revert, Laurent};
use crate::arith::poly::Poly;
use crate::arith::ratfn::RatFn;
use crate::arith::{rat, Scalar};
use crate::{CoefNum, Error, QLaurent, Result, UPoly, URat, XiSeries};
use num::BigRational;
use num_traits::{One, Zero};

type BiSeries = Laurent<XiSeries>;

fn cn(n: i64) -> CoefNum {
    CoefNum::int(n)
}

fn ql_int(n: i64) -> QLaurent {
    QLaurent::constant(cn(n))
}

fn ql_mon(k: i64, n: i64) -> QLaurent {
    QLaurent::monomial(k, cn(n))
}

fn lift_outer(s: &XiSeries) -> BiSeries {
    let mut acc = if s.is_exact() {
        BiSeries::exact_zero()
    } else {
        BiSeries::zero_through(s.known_through())
    };
    for (k, c) in s.iter_known() {
        acc = acc.add_ref(&BiSeries::monomial(k, XiSeries::constant(c.clone())));
    }
    acc.truncate(s.known_through())
}

/// One ramification point with its local frame.
#[derive(Clone, Debug)]
pub struct RamPoint {
    pub sigma: usize,
    pub u: QLaurent,
    pub v: QLaurent,
    /// q-series part of the critical value `x_σ = -log X_σ`; the symbolic
    /// normalization is the tag `-log(x_lead · q^{x_qpow})`. Only ever used
    /// as the Laplace normalization, where it cancels identically.
    pub x_series: QLaurent,
    pub x_lead: CoefNum,
    pub x_qpow: i64,
    /// `x - x_σ = r · ξ_σ²` exactly; `r` is the square of the ζ-leading
    /// coefficient and the only trace the square root leaves behind.
    pub r: QLaurent,
    /// ξ_σ as a series in `w = U - U_σ` (leading coefficient 1).
    pub xi_of_w: XiSeries,
    /// `w` as a series in ξ_σ.
    pub w_of_xi: XiSeries,
    /// `H_k`: coefficients of `y - y_σ = Σ_k H_k ξ_σ^k`, index k (H[0] unused).
    pub h: Vec<QLaurent>,
}

/// `θ̃^d_σ = ε_σ^{2d+1} θ^d_σ` as an explicit pole form
/// `Σ_j pole_coeffs[j-2] · dU/(U - U_σ)^j`, j = 2..=2d+2.
#[derive(Clone, Debug)]
pub struct ThetaTilde {
    pub sigma: usize,
    pub d: i64,
    pub pole_coeffs: Vec<QLaurent>,
}

impl ThetaTilde {
    pub fn as_ratfn(&self, u_sigma: &QLaurent) -> Result<URat> {
        let lin = Poly::linear_root(u_sigma.clone());
        let mut acc = RatFn::from_poly(Poly::zero());
        for (i, a) in self.pole_coeffs.iter().enumerate() {
            let j = (i + 2) as u32;
            let term = RatFn::new(Poly::constant(a.clone()), lin.pow(j))?;
            acc = acc.add_ref(&term)?;
        }
        Ok(acc)
    }
}

/// The Laplace-transform matrix `Ř(z)` to order `z_order`.
///
/// `entries[at][of]` holds `Ř_{of}^{at}(z)`; the off-diagonal slots store
/// the product `ε_0 ε_1 · Ř_{of}^{at}` (which is a q-series), so products of
/// two off-diagonal entries must be divided by `r_0 r_1`.
#[derive(Clone, Debug)]
pub struct RCheckData {
    pub z_order: i64,
    pub entries: [[Laurent<QLaurent>; 2]; 2],
    pub r: [QLaurent; 2],
}

impl RCheckData {
    /// Grading-aware product of two entries, as an honest q-series
    /// (off·off picks up the 1/(r₀r₁)).
    fn graded_product(
        &self,
        a: &Laurent<QLaurent>,
        a_off: bool,
        b: &Laurent<QLaurent>,
        b_off: bool,
    ) -> Result<Laurent<QLaurent>> {
        let p = a.mul_ref(b);
        if a_off && b_off {
            let rr = self.r[0].mul_ref(&self.r[1]);
            let inv = rr.try_inv_ref()?;
            Ok(p.scale(&inv))
        } else {
            Ok(p)
        }
    }

    /// `Ř^T(-z) Ř(z) = 1` coefficientwise. Off-diagonal components of the
    /// product live in the odd sector `(ε_0 ε_1)^{±1}`; their stored parts
    /// must vanish too.
    pub fn check_unitarity(&self) -> Result<()> {
        let flip = |s: &Laurent<QLaurent>| -> Laurent<QLaurent> {
            // z → -z
            let mut acc = if s.is_exact() {
                Laurent::exact_zero()
            } else {
                Laurent::zero_through(s.known_through())
            };
            for (k, c) in s.iter_known() {
                let cc = if k % 2 == 0 { c.clone() } else { -c.clone() };
                acc = acc.add_ref(&Laurent::monomial(k, cc).truncate(s.known_through()));
            }
            acc
        };
        for s1 in 0..2usize {
            for s2 in 0..2usize {
                let mut acc = Laurent::zero_through(self.z_order);
                for g in 0..2usize {
                    let a = flip(&self.entries[g][s1]);
                    let b = &self.entries[g][s2];
                    let term = self.graded_product(&a, g != s1, b, g != s2)?;
                    acc = acc.add_ref(&term.truncate(self.z_order));
                }
                let expect = if s1 == s2 {
                    Laurent::constant(QLaurent::one()).truncate(self.z_order)
                } else {
                    Laurent::zero_through(self.z_order)
                };
                if !acc.sub_ref(&expect).is_zero() {
                    return Err(Error::UnitarityViolation(format!(
                        "column pair ({s1},{s2}): got {acc:?}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Immutable context holding every derived quantity of one spectral curve.
pub struct CurveCtx {
    pub spec: CurveSpec,
    /// internal q truncation (q_order plus padding)
    pub qn: i64,
    /// ξ-jet order carried by local expansions
    pub jet: i64,
    /// largest d with θ̃^d precomputed
    pub dmax: i64,
    /// bivariate order of the b-matrix
    pub bord: i64,
    /// ξ-order of the stored θ̃ expansions
    pub texp: i64,
    pub ram: [RamPoint; 2],
    /// critical quadratic `qQ U² + (Q+qQ+P-Pq) U + Q`
    pub crit_poly: UPoly,
    pub x_prime: URat,
    pub y_prime: URat,
    /// `b[σ][σ'][k][l]`: analytic ξ-expansion coefficients of the
    /// fundamental bidifferential w.r.t. dξ_σ dξ_{σ'} (diagonal singular
    /// part removed). Equals `ε_σ^{k+1} ε_{σ'}^{l+1} B^{σσ'}_{k,l}`.
    /// Computed on first use.
    bmat: [[std::sync::OnceLock<Vec<Vec<QLaurent>>>; 2]; 2],
    theta: [Vec<ThetaTilde>; 2],
    /// `theta_exp[at][of][d]`: the ξ_at-series `f` with `θ̃^d_of = f dξ_at`.
    theta_exp: [[Vec<XiSeries>; 2]; 2],
    rcheck: RCheckData,
    pub disk: disk::DiskData,
}

impl CurveCtx {
    pub fn build(spec: CurveSpec) -> Result<CurveCtx> {
        spec.validate()?;
        let qn = spec.q_order + 6;
        // univariate w-jets are cheap; keep them deep enough for the
        // bivariate expansion's inner-order erosion
        let jet = 3 * spec.z_order + 14;
        let texp = 2 * spec.z_order + 6;
        let dmax = spec.z_order + 1;
        let bord = spec.z_order + 2;
        let p = spec.p as i64;
        let q = spec.q as i64;

        // critical quadratic and dx, dy
        let crit_poly = Poly::new(vec![
            ql_int(q),
            ql_int(p + q).add_ref(&ql_mon(1, q - p)),
            ql_mon(1, q),
        ]);
        let frame_poly = |a: i64, b: i64| -> UPoly {
            // a·(1+U)(1+qU) + b·U(1+qU) - b·qU(1+U) collapses to
            // aq U² + (a + aq + b - bq) U + a
            Poly::new(vec![
                ql_int(a),
                ql_int(a + b).add_ref(&ql_mon(1, a - b)),
                ql_mon(1, a),
            ])
        };
        // dx = -(D(U)/[U(1+U)(1+qU)]) dU, and similarly dy with (γ,δ)
        let chart_den = Poly::new(vec![ql_int(0), ql_int(1)])
            .mul_ref(&Poly::new(vec![ql_int(1), ql_int(1)]))
            .mul_ref(&Poly::new(vec![ql_int(1), QLaurent::monomial(1, CoefNum::one())]));
        let x_prime = RatFn::new(crit_poly.neg_ref(), chart_den.clone())?;
        let y_prime = RatFn::new(frame_poly(spec.gamma, spec.delta).neg_ref(), chart_den)?;

        // ramification points
        let bpol = ql_int(p + q).add_ref(&ql_mon(1, q - p));
        let disc = bpol.mul_ref(&bpol).sub_ref(&ql_mon(1, 4 * q * q)).truncate(qn + 2);
        let sd = disc.try_sqrt_ref()?;
        let two_qq_inv = QLaurent::monomial(-1, CoefNum::rational(1, 2 * q));
        let u0 = sd.sub_ref(&bpol).mul_ref(&two_qq_inv);
        let u1 = (-sd.clone()).sub_ref(&bpol).mul_ref(&two_qq_inv);
        // anchors: U_0(0) = -Q/(P+Q), and both points kill the critical poly
        assert_eq!(
            u0.coeff(0).expect("U_0 constant term"),
            CoefNum::rational(-q, p + q),
            "U_0(0) != -Q/(P+Q)"
        );
        assert_eq!(u1.valuation(), Some(-1), "U_1 must have q-valuation -1");
        for u in [&u0, &u1] {
            let z = crit_poly.eval_series(&Laurent::constant(u.clone())).coeff_or_zero(0);
            assert!(z.is_zero(), "ramification point does not solve the critical equation: {z:?}");
        }

        let v_of = |u: &QLaurent| -> Result<QLaurent> {
            let one_u = QLaurent::one().add_ref(u);
            let one_qu = QLaurent::one().add_ref(&u.shift(1));
            (-one_u).try_div(&one_qu)
        };
        let v0 = v_of(&u0)?;
        let _v1 = v_of(&u1)?;
        assert_eq!(
            v0.coeff(0).expect("V_0 constant term"),
            CoefNum::rational(-p, p + q),
            "V_0(0) != -P/(P+Q)"
        );

        // local frames
        let t0 = std::time::Instant::now();
        let mut ram: Vec<RamPoint> = Vec::with_capacity(2);
        for (sigma, u_s) in [(0usize, &u0), (1usize, &u1)] {
            let rp = build_frame(&spec, sigma, u_s, qn, jet)
                .map_err(|e| Error::InvalidInput(format!("frame {sigma}: {e}")))?;
            ram.push(rp);
        }
        let ram: [RamPoint; 2] = [ram.remove(0), ram.remove(0)];
        eprintln!("[build] frames: {:?}", t0.elapsed());
        let t0 = std::time::Instant::now();

        // differentials of the second kind
        let mut theta: [Vec<ThetaTilde>; 2] = [vec![], vec![]];
        for sigma in 0..2 {
            for d in 0..=dmax {
                theta[sigma].push(theta_tilde(&ram[sigma], d, jet)
                    .map_err(|e| Error::InvalidInput(format!("theta {sigma} d={d}: {e}")))?);
            }
        }

        eprintln!("[build] thetas: {:?}", t0.elapsed());
        let t0 = std::time::Instant::now();
        // expansions of every θ̃ at both points
        let mut theta_exp: [[Vec<XiSeries>; 2]; 2] = Default::default();
        for at in 0..2 {
            let w = &ram[at].w_of_xi.truncate(texp);
            let wp = w.derivative();
            for of in 0..2 {
                let delta_u = if at == of {
                    QLaurent::exact_zero()
                } else {
                    ram[at].u.sub_ref(&ram[of].u)
                };
                let g = XiSeries::constant(delta_u).add_ref(w).truncate(texp);
                let g_inv = g.try_inv_ref()?;
                let mut pows: Vec<XiSeries> = vec![XiSeries::one().truncate(texp), g_inv.clone()];
                for _ in 2..=(2 * dmax as usize + 2) {
                    pows.push(pows.last().unwrap().mul_ref(&g_inv).truncate(texp));
                }
                for d in 0..=dmax {
                    let tt = &theta[of][d as usize];
                    let mut f = XiSeries::zero_through(texp);
                    for (i, a) in tt.pole_coeffs.iter().enumerate() {
                        let j = i + 2;
                        f = f.add_ref(&pows[j].scale(a).truncate(texp));
                    }
                    f = f.mul_ref(&wp).truncate(texp);
                    theta_exp[at][of].push(f);
                }
            }
        }

        eprintln!("[build] theta_exp: {:?}", t0.elapsed());
        let t0 = std::time::Instant::now();
        // local-form sanity for θ̃^d at its own point: the singular part is
        // the single term -(2d+1)!! 2^{-d} ξ^{-2d-2}, and the residue is 0
        for sigma in 0..2 {
            for d in 0..=dmax {
                let f = &theta_exp[sigma][sigma][d as usize];
                let lead = f.coeff_or_zero(-2 * d - 2);
                let expect = QLaurent::constant(
                    CoefNum::from_rational(
                        -BigRational::from_integer(odd_double_factorial(2 * d + 1))
                            / BigRational::from_integer(num::BigInt::from(2i64.pow(d as u32))),
                    ),
                );
                assert!(
                    lead.sub_ref(&expect).truncate(qn).is_zero(),
                    "θ̃ singular head wrong at σ={sigma}, d={d}: {lead:?}"
                );
                for k in (-2 * d - 1)..0 {
                    assert!(
                        f.coeff_or_zero(k).is_zero(),
                        "θ̃^{d}_{sigma} has an unexpected singular term at ξ^{k}"
                    );
                }
                // and it is analytic at the other point
                let g = &theta_exp[1 - sigma][sigma][d as usize];
                assert!(
                    g.assume_valuation(0).is_ok(),
                    "θ̃^{d}_{sigma} not analytic at the other ramification point"
                );
            }
        }

        eprintln!("[build] checks: {:?}", t0.elapsed());
        let t0 = std::time::Instant::now();
        // Laplace-transform matrix from Gaussian moments
        let rcheck = build_rcheck(&spec, &ram, &theta_exp)
            .map_err(|e| Error::InvalidInput(format!("rcheck: {e}")))?;
        rcheck.check_unitarity()?;

        eprintln!("[build] rcheck: {:?}", t0.elapsed());
        let t0 = std::time::Instant::now();
        let disk = disk::build_disk(&spec, qn)
            .map_err(|e| Error::InvalidInput(format!("disk: {e}")))?;

        eprintln!("[build] disk: {:?}", t0.elapsed());
        Ok(CurveCtx {
            spec,
            qn,
            jet,
            dmax,
            bord,
            texp,
            ram,
            crit_poly,
            x_prime,
            y_prime,
            bmat: Default::default(),
            theta: [theta[0].clone(), theta[1].clone()],
            theta_exp,
            rcheck,
            disk,
        })
    }

    pub fn b_coeff(&self, s1: usize, s2: usize, k: usize, l: usize) -> Result<QLaurent> {
        if k > self.bord as usize || l > self.bord as usize {
            return Err(Error::precision(format!(
                "bidifferential coefficient ({k},{l}) beyond computed order {}",
                self.bord
            )));
        }
        let block = self.bmat[s1][s2].get_or_init(|| {
            bexpand(&self.ram[s1], &self.ram[s2], s1 == s2, self.bord)
                .expect("bidifferential expansion failed")
        });
        Ok(block[k][l].clone())
    }

    /// Symmetry of the stored bidifferential expansion (forces all blocks).
    pub fn check_b_symmetry(&self) -> Result<()> {
        for k in 0..=self.bord as usize {
            for l in 0..=self.bord as usize {
                for s1 in 0..2 {
                    for s2 in 0..2 {
                        let a = self.b_coeff(s1, s2, k, l)?;
                        let b = self.b_coeff(s2, s1, l, k)?;
                        if !a.sub_ref(&b).is_zero() {
                            return Err(Error::InvalidInput(format!(
                                "bidifferential expansion asymmetric at ({s1},{s2},{k},{l})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn theta_tilde(&self, sigma: usize, d: i64) -> Result<&ThetaTilde> {
        self.theta[sigma].get(d as usize).ok_or_else(|| {
            Error::precision(format!("θ̃^{d} beyond computed dmax {}", self.dmax))
        })
    }

    /// ξ_at-expansion of `θ̃^d_of` (coefficients w.r.t. dξ_at).
    pub fn theta_exp(&self, at: usize, of: usize, d: i64) -> Result<&XiSeries> {
        self.theta_exp[at][of].get(d as usize).ok_or_else(|| {
            Error::precision(format!("θ̃^{d} expansion beyond computed dmax {}", self.dmax))
        })
    }

    pub fn rcheck(&self) -> &RCheckData {
        &self.rcheck
    }

    /// Odd part of the y-jet: `(y(p) - y(p̄))/2 = Σ_{k odd} H_k ξ^k`.
    pub fn y_odd(&self, sigma: usize) -> XiSeries {
        let mut acc = XiSeries::zero_through(self.jet);
        for (k, c) in self.ram[sigma].h.iter().enumerate() {
            if k % 2 == 1 {
                acc = acc.add_ref(&XiSeries::monomial(k as i64, c.clone()).truncate(self.jet));
            }
        }
        acc
    }
}

fn log_frame_series(
    u_s: &QLaurent,
    coef_a: i64,
    coef_b: i64,
    qn: i64,
    jet: i64,
) -> Result<XiSeries> {
    // a·log(U/U_σ) + b·[log((1+U)/(1+U_σ)) - log((1+qU)/(1+qU_σ))]
    // as a series in w = U - U_σ, where (a,b) is (Q,P) for x and (γ,δ) for y,
    // overall sign -1 (x = -log X).
    let mk = |den: QLaurent, qshift: i64| -> Result<XiSeries> {
        // log(1 + q^{qshift} w / den)
        let c = QLaurent::monomial(qshift, CoefNum::one()).try_div(&den.truncate(qn))?;
        let lin = XiSeries::one().add_ref(&XiSeries::monomial(1, c)).truncate(jet);
        lin.log1()
    };
    let t1 = mk(u_s.clone(), 0)?;
    let t2 = mk(QLaurent::one().add_ref(u_s), 0)?;
    let t3 = mk(QLaurent::one().add_ref(&u_s.shift(1)), 1)?;
    let mut acc = t1.scale_rat(&rat(-coef_a, 1));
    acc = acc.add_ref(&t2.scale_rat(&rat(-coef_b, 1)));
    acc = acc.add_ref(&t3.scale_rat(&rat(coef_b, 1)));
    Ok(acc)
}

fn build_frame(
    spec: &CurveSpec,
    sigma: usize,
    u_s: &QLaurent,
    qn: i64,
    jet: i64,
) -> Result<RamPoint> {
    let p = spec.p as i64;
    let q = spec.q as i64;
    let v_s = {
        let one_u = QLaurent::one().add_ref(u_s);
        let one_qu = QLaurent::one().add_ref(&u_s.shift(1));
        (-one_u).try_div(&one_qu)?
    };

    let t0 = std::time::Instant::now();
    let x_minus = log_frame_series(u_s, q, p, qn, jet)?.assume_valuation(2)?;
    eprintln!("[frame {sigma}] x log: {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    let r = x_minus.coeff(2)?;
    let t_series = x_minus.shift(-2).scale(&r.try_inv_ref()?);
    let xi_of_w = XiSeries::monomial(1, QLaurent::one())
        .truncate(jet)
        .mul_ref(&t_series.pow_rat(&rat(1, 2)).map_err(|e| crate::Error::InvalidInput(format!("frame sqrt: {e}")))?);
    eprintln!("[frame {sigma}] sqrt: {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    let w_of_xi = revert(&xi_of_w)?;
    eprintln!("[frame {sigma}] revert: {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    // defining identity: (x - x_σ)(w(ξ)) = r ξ²
    {
        let recomposed = x_minus.compose(&w_of_xi)?;
        let target = XiSeries::monomial(2, r.clone()).truncate(recomposed.known_through());
        assert!(recomposed.sub_ref(&target).is_zero(), "ζ² = x - x_σ fails at σ={sigma}");
    }

    eprintln!("[frame {sigma}] recheck: {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    let y_minus = log_frame_series(u_s, spec.gamma, spec.delta, qn, jet)?;
    let y_in_xi = y_minus.compose(&w_of_xi)?;
    let mut h = vec![QLaurent::zero(); (jet + 1) as usize];
    for k in 1..=jet {
        h[k as usize] = y_in_xi.coeff_or_zero(k);
    }

    eprintln!("[frame {sigma}] y jets: {:?}", t0.elapsed());
    let t0 = std::time::Instant::now();
    // critical value tag: X_σ = x_lead q^{x_qpow} (1 + u), series part -log(1+u)
    let x_big = {
        let mut acc = QLaurent::one();
        for _ in 0..q {
            acc = acc.mul_ref(u_s);
        }
        for _ in 0..p {
            acc = acc.mul_ref(&v_s);
        }
        acc.truncate(qn)
    };
    let x_qpow = x_big.valuation().ok_or_else(|| Error::precision("X_σ vanished"))?;
    let x_lead = x_big.coeff(x_qpow)?;
    let unit = x_big.shift(-x_qpow).scale(&x_lead.try_inv()?);
    let x_series = -(unit.log1()?);

    eprintln!("[frame {sigma}] xtag: {:?}", t0.elapsed());
    Ok(RamPoint {
        sigma,
        u: u_s.clone(),
        v: v_s,
        x_series,
        x_lead,
        x_qpow,
        r,
        xi_of_w,
        w_of_xi,
        h,
    })
}

fn bexpand(
    r1: &RamPoint,
    r2: &RamPoint,
    diagonal: bool,
    bord: i64,
) -> Result<Vec<Vec<QLaurent>>> {
    // the |ξ₁| < |ξ₂| expansion regime erodes inner orders as outer orders
    // grow; the outer variable only ever needs `bord` orders
    let ord = bord + 2;
    let ord_i = 3 * bord + 8;
    let w1 = lift_outer(&r1.w_of_xi.truncate(ord));
    let w2 = BiSeries::constant(r2.w_of_xi.truncate(ord_i));
    let w1p = lift_outer(&r1.w_of_xi.derivative().truncate(ord));
    let w2p = BiSeries::constant(r2.w_of_xi.derivative().truncate(ord_i));
    let delta_u = if diagonal {
        BiSeries::exact_zero()
    } else {
        BiSeries::constant(XiSeries::constant(r1.u.sub_ref(&r2.u)))
    };
    let diff = delta_u.add_ref(&w1).sub_ref(&w2).truncate(ord);
    let denom = diff.mul_ref(&diff).truncate(ord);
    let mut b = w1p.mul_ref(&w2p).mul_ref(&denom.try_inv_ref()?).truncate(ord);
    if diagonal {
        // subtract 1/(ξ₁-ξ₂)² in the same |ξ₁| < |ξ₂| expansion regime
        let lin = BiSeries::monomial(1, XiSeries::one())
            .sub_ref(&BiSeries::constant(XiSeries::monomial(1, QLaurent::one())))
            .truncate(ord);
        let sq = lin.mul_ref(&lin).truncate(ord);
        b = b.sub_ref(&sq.try_inv_ref()?).truncate(ord);
    }
    // analyticity: all surviving negative powers must vanish to truncation
    let b = b.assume_valuation(0)?;
    let mut out = vec![vec![QLaurent::zero(); bord as usize + 1]; bord as usize + 1];
    for k in 0..=bord {
        let row = b.coeff(k)?.assume_valuation(0)?;
        for l in 0..=bord {
            out[k as usize][l as usize] = row.coeff(l)?;
        }
    }
    Ok(out)
}

fn theta_tilde(rp: &RamPoint, d: i64, jet: i64) -> Result<ThetaTilde> {
    // θ̃^d = -(2d-1)!! 2^{-d} Σ_{m=0}^{2d} (m+1) c_{2d-m} dU/(U-U_σ)^{m+2},
    // c_j = [w^j] (ξ(w)/w)^{-(2d+1)}
    let s = rp.xi_of_w.shift(-1); // leading coefficient 1
    let spow = s.truncate(jet).pow_rat(&rat(-(2 * d + 1), 1)).map_err(|e| crate::Error::InvalidInput(format!("theta pow: {e}")))?;
    // (ξ/w)^{-(2d+1)} = (T^{1/2})^{-(2d+1)}; pow_rat of the unit series
    let pref = -BigRational::from_integer(odd_double_factorial(2 * d - 1))
        / BigRational::from_integer(num::BigInt::from(2i64.pow(d as u32)));
    let mut pole_coeffs = Vec::with_capacity(2 * d as usize + 1);
    for m in 0..=2 * d {
        let c = spow.coeff(2 * d - m)?;
        pole_coeffs.push(c.scale_rat(&(pref.clone() * rat(m + 1, 1))));
    }
    Ok(ThetaTilde { sigma: rp.sigma, d, pole_coeffs })
}

fn build_rcheck(
    spec: &CurveSpec,
    ram: &[RamPoint; 2],
    theta_exp: &[[Vec<XiSeries>; 2]; 2],
) -> Result<RCheckData> {
    let zord = spec.z_order;
    let mut entries: [[Laurent<QLaurent>; 2]; 2] = Default::default();
    for at in 0..2usize {
        let r_at = &ram[at].r;
        let mut r_pow = vec![QLaurent::one()];
        let r_inv = r_at.try_inv_ref()?;
        for _ in 1..=(zord as usize + 1) {
            r_pow.push(r_pow.last().unwrap().mul_ref(&r_inv));
        }
        for of in 0..2usize {
            let f = &theta_exp[at][of][0];
            let mut acc = Laurent::zero_through(zord);
            if at == of {
                acc = acc.add_ref(&Laurent::constant(QLaurent::one()).truncate(zord));
            }
            for m in 0..zord {
                let zpow = m + 1;
                let g = f.coeff(2 * m)?;
                if g.is_zero() {
                    continue;
                }
                let dd = BigRational::from_integer(odd_double_factorial(2 * m - 1))
                    / BigRational::from_integer(num::BigInt::from(2i64.pow(zpow as u32)));
                // diagonal: g/r^{m+1}; off-diagonal (stored ×ε₀ε₁): g/r^m
                let rp = if at == of { &r_pow[(m + 1) as usize] } else { &r_pow[m as usize] };
                let c = g.mul_ref(rp).scale_rat(&dd);
                acc = acc.add_ref(&Laurent::monomial(zpow, c).truncate(zord));
            }
            entries[at][of] = acc;
        }
    }
    // z⁰ term: identity
    for at in 0..2 {
        for of in 0..2 {
            let z0 = entries[at][of].coeff_or_zero(0);
            if at == of {
                assert!(z0.sub_ref(&QLaurent::one()).is_zero(), "Ř(0) diagonal is not 1");
            } else {
                assert!(z0.is_zero(), "Ř(0) off-diagonal is not 0");
            }
        }
    }
    Ok(RCheckData { z_order: zord, entries, r: [ram[0].r.clone(), ram[1].r.clone()] })
}
