//! Constant scalar curvature: the in-class test via `f(r1, r2)` and the
//! `α/β` moments, the weighted extremal system, the polynomial `h(b)`, and
//! certificates for CSC Sasaki rays.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::linear::solve_2x2;
use crate::arith::poly::{integrate_poly, Poly};
use crate::arith::rat::{int, pow2_neg, rat, serde_rat, Rat};
use crate::arith::ratfunc::{integrate_shifted_pole, RatFunc};
use crate::arith::sturm::{sturm_isolate_to, IsolatingInterval, Region};
use crate::error::{Error, Result};
use crate::ke::p_c;
use crate::orbifold::{AdmissiblePair, KSOrbifold};

/// The polynomial `f(r1, r2)` whose zero set is the set of admissible
/// classes carrying a CSC metric.
pub fn csc_f(orb: &KSOrbifold, r: &AdmissiblePair) -> Rat {
    csc_f_raw(orb, &r.r1, &r.r2)
}

/// [`csc_f`] at arbitrary rational `(r1, r2)`, admissible or not.
pub fn csc_f_raw(orb: &KSOrbifold, r1: &Rat, r2: &Rat) -> Rat {
    let (n1, n2, m0, mi) = (int(orb.n1()), int(orb.n2()), int(orb.m0()), int(orb.minf()));
    let nn = &n1 * &n2;
    let diff = &m0 - &mi;
    let four_mm = int(4) * &m0 * &mi;
    let (r1s, r2s) = (r1 * r1, r2 * r2);

    int(9) * &diff * &nn - int(6) * (&m0 + &mi) * &nn * (r1 + r2)
        + int(6) * &diff * &nn * r1 * r2
        + int(3) * &n2 * (&four_mm - &n1 * &diff) * &r1s
        + int(3) * &n1 * (&four_mm - &n2 * &diff) * &r2s
        - (&four_mm * (&n1 + &n2) - int(3) * &diff * &nn) * &r1s * &r2s
}

/// `α_0, α_1` and `β_0, β_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaBeta {
    #[serde(with = "crate::arith::rat::serde_rat_array")]
    pub alpha: [Rat; 2],
    #[serde(with = "crate::arith::rat::serde_rat_array")]
    pub beta: [Rat; 2],
}

impl AlphaBeta {
    /// `α0·β1 - α1·β0`
    pub fn determinant(&self) -> Rat {
        &self.alpha[0] * &self.beta[1] - &self.alpha[1] * &self.beta[0]
    }
}

/// `r1·(2/n1)(1 + r2 t) + r2·(2/n2)(1 + r1 t)`
fn beta_weight(orb: &KSOrbifold, r: &AdmissiblePair) -> Poly {
    let s1 = rat(2, orb.n1());
    let s2 = rat(2, orb.n2());
    let a = Poly::linear(int(1), r.r2.clone()).scale(&(&r.r1 * &s1));
    let b = Poly::linear(int(1), r.r1.clone()).scale(&(&r.r2 * &s2));
    &a + &b
}

/// Boundary values `p_c(-1)/minf` and `p_c(1)/m0`.
fn boundary_terms(orb: &KSOrbifold, r: &AdmissiblePair) -> (Rat, Rat) {
    let pc = p_c(r);
    (
        pc.eval(&int(-1)) / int(orb.minf()),
        pc.eval(&int(1)) / int(orb.m0()),
    )
}

pub fn alpha_beta(orb: &KSOrbifold, r: &AdmissiblePair) -> AlphaBeta {
    let pc = p_c(r);
    let w = beta_weight(orb, r);
    let (lo, hi) = (int(-1), int(1));
    let (bm, bp) = boundary_terms(orb, r);
    let moment = |p: &Poly, k: usize| integrate_poly(&(&Poly::monomial(int(1), k) * p), &lo, &hi);
    AlphaBeta {
        alpha: [moment(&pc, 0), moment(&pc, 1)],
        beta: [moment(&w, 0) + &bm + &bp, moment(&w, 1) - &bm + &bp],
    }
}

pub fn has_csc_in_class(orb: &KSOrbifold, r: &AdmissiblePair) -> bool {
    alpha_beta(orb, r).determinant().is_zero()
}

/// Looks for a CSC class on the diagonal `r1 = r2 = t`, `t ∈ (0, 1)`,
/// scaled by the common sign of the twists.
pub fn csc_diagonal_search(orb: &KSOrbifold) -> Result<Option<IsolatingInterval>> {
    if orb.n1().signum() != orb.n2().signum() {
        return Err(Error::WrongSignRegime("diagonal search needs n1·n2 > 0".into()));
    }
    let s = int(orb.n1().signum());
    // f(st, st) is a quartic in t; recover it by interpolation at five nodes
    let nodes: Vec<Rat> = (0..5).map(int).collect();
    let values: Vec<Rat> = nodes.iter().map(|t| csc_f_raw(orb, &(&s * t), &(&s * t))).collect();
    let diag = interpolate(&nodes, &values);
    if diag.is_zero() {
        return Ok(None);
    }
    let roots = sturm_isolate_to(&diag, &Region::Interval(int(0), int(1)), &pow2_neg(64))?;
    Ok(roots.into_iter().next().map(|iv| {
        if s.is_negative() {
            IsolatingInterval {
                lo: -iv.hi,
                hi: -iv.lo,
                exact_root: iv.exact_root.map(|x| -x),
                is_rational: iv.is_rational,
            }
        } else {
            iv
        }
    }))
}

/// Lagrange interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[Rat], ys: &[Rat]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Poly::linear(-xj.clone(), Rat::one()).scale(&(xi - xj).recip());
            }
        }
        out = &out + &basis;
    }
    out
}

/// `α_{k,-6}(b)` for `k = 0, 1, 2` and `β_{k,-4}(b)` for `k = 0, 1` as
/// rational functions of `b`.
#[derive(Clone, Debug)]
pub struct WeightedMoments {
    pub alpha: [RatFunc; 3],
    pub beta: [RatFunc; 2],
}

impl WeightedMoments {
    pub fn new(orb: &KSOrbifold, r: &AdmissiblePair) -> Result<Self> {
        let pc = p_c(r);
        let w = beta_weight(orb, r);
        let tk = |k| Poly::monomial(int(1), k);
        let alpha = [
            integrate_shifted_pole(&pc, 6)?,
            integrate_shifted_pole(&(&tk(1) * &pc), 6)?,
            integrate_shifted_pole(&(&tk(2) * &pc), 6)?,
        ];
        let (bm, bp) = boundary_terms(orb, r);
        let quartic = |c: i64| Poly::from_ints(&[c, 1]).pow(4);
        let minus = RatFunc::new(Poly::constant(bm), quartic(-1))?;
        let plus = RatFunc::new(Poly::constant(bp), quartic(1))?;
        let b0 = &(&integrate_shifted_pole(&w, 4)? + &minus) + &plus;
        let b1 = &(&integrate_shifted_pole(&(&tk(1) * &w), 4)? - &minus) + &plus;
        Ok(WeightedMoments {
            alpha,
            beta: [b0, b1],
        })
    }

    fn at(&self, b: &Rat) -> ([Rat; 3], [Rat; 2]) {
        let ev = |f: &RatFunc| f.eval(b).expect("poles only at b = ±1");
        (
            [ev(&self.alpha[0]), ev(&self.alpha[1]), ev(&self.alpha[2])],
            [ev(&self.beta[0]), ev(&self.beta[1])],
        )
    }
}

/// Solves `α1·A1 + α0·A2 = 2β0`, `α2·A1 + α1·A2 = 2β1` at the given `b`.
pub fn weighted_system(orb: &KSOrbifold, r: &AdmissiblePair, b: &Rat) -> Result<(Rat, Rat)> {
    if b.abs() <= Rat::one() {
        return Err(Error::BOutOfRange);
    }
    let (a, be) = WeightedMoments::new(orb, r)?.at(b);
    solve_2x2(&a[1], &a[0], &a[2], &a[1], &(int(2) * &be[0]), &(int(2) * &be[1]))
}

/// `α_{1,-6}^2 - α_{0,-6} α_{2,-6}` at `b`.
pub fn weighted_determinant(orb: &KSOrbifold, r: &AdmissiblePair, b: &Rat) -> Result<Rat> {
    if b.abs() <= Rat::one() {
        return Err(Error::BOutOfRange);
    }
    let (a, _) = WeightedMoments::new(orb, r)?.at(b);
    Ok(&a[1] * &a[1] - &a[0] * &a[2])
}

/// `h(b) = (b²-1)^7 (b(α1β0 - α0β1) - (α1β1 - α2β0))` with the weighted
/// moments, as an exact polynomial of degree at most five.
pub fn h_poly(orb: &KSOrbifold, r: &AdmissiblePair) -> Result<Poly> {
    let wm = WeightedMoments::new(orb, r)?;
    let q = Poly::from_ints(&[-1, 0, 1]);
    let clear = |f: &RatFunc, e: u32| {
        f.clear_with(&q.pow(e))
            .ok_or_else(|| Error::InternalInconsistency("moment denominator does not divide (b²-1)^k".into()))
    };
    let na = [clear(&wm.alpha[0], 5)?, clear(&wm.alpha[1], 5)?, clear(&wm.alpha[2], 5)?];
    let nb = [clear(&wm.beta[0], 4)?, clear(&wm.beta[1], 4)?];

    let first = &(&na[1] * &nb[0]) - &(&na[0] * &nb[1]);
    let second = &(&na[1] * &nb[1]) - &(&na[2] * &nb[0]);
    let combined = &(&Poly::x() * &first) - &second;
    let h = combined
        .div_exact(&q.pow(2))
        .ok_or_else(|| Error::InternalInconsistency("h(b) does not clear (b²-1)^9".into()))?;
    if h.degree().unwrap_or(0) > 5 {
        return Err(Error::InternalInconsistency("h(b) has degree above five".into()));
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RayClass {
    QuasiRegular,
    Irregular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRoot {
    pub interval: IsolatingInterval,
    pub class: RayClass,
}

/// Evidence for a CSC Sasaki ray in the Sasaki cone of `(orb, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCertificate {
    pub f: Rat,
    pub in_class_csc: bool,
    /// `h(b)` scaled to coprime integer coefficients, same sign.
    pub polynomial: Poly,
    pub roots: Vec<CertifiedRoot>,
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    #[serde(with = "serde_rat")]
    lo: Rat,
    #[serde(with = "serde_rat")]
    hi: Rat,
    #[serde(with = "crate::arith::rat::serde_rat_opt")]
    exact: Option<Rat>,
    class: RayClass,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    #[serde(with = "serde_rat")]
    f: Rat,
    in_class_csc: bool,
    #[serde(with = "crate::arith::rat::serde_rat_vec")]
    h: Vec<Rat>,
    roots: Vec<RootJson>,
}

impl Serialize for RootCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            f: self.f.clone(),
            in_class_csc: self.in_class_csc,
            h: self.polynomial.coeffs().to_vec(),
            roots: self
                .roots
                .iter()
                .map(|r| RootJson {
                    lo: r.interval.lo.clone(),
                    hi: r.interval.hi.clone(),
                    exact: r.interval.exact_root.clone(),
                    class: r.class,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CertificateJson::deserialize(d)?;
        Ok(RootCertificate {
            f: raw.f,
            in_class_csc: raw.in_class_csc,
            polynomial: Poly::new(raw.h),
            roots: raw
                .roots
                .into_iter()
                .map(|r| CertifiedRoot {
                    interval: IsolatingInterval {
                        lo: r.lo,
                        hi: r.hi,
                        is_rational: r.exact.is_some(),
                        exact_root: r.exact,
                    },
                    class: r.class,
                })
                .collect(),
        })
    }
}

pub fn certify_csc_ray(orb: &KSOrbifold, r: &AdmissiblePair) -> Result<RootCertificate> {
    certify_csc_ray_to(orb, r, &pow2_neg(64))
}

/// As [`certify_csc_ray`], refining irrational roots below `width`.
pub fn certify_csc_ray_to(orb: &KSOrbifold, r: &AdmissiblePair, width: &Rat) -> Result<RootCertificate> {
    r.check_signs(orb)?;
    let f = csc_f(orb, r);
    let in_class_csc = f.is_zero();
    let h = h_poly(orb, r)?.primitive_part();

    if h.is_zero() {
        if in_class_csc {
            return Ok(RootCertificate { f, in_class_csc, polynomial: h, roots: Vec::new() });
        }
        return Err(Error::InternalInconsistency("h(b) vanishes identically".into()));
    }
    for edge in [int(1), int(-1)] {
        if !h.eval(&edge).is_positive() {
            return Err(Error::InternalInconsistency(format!("h({edge}) is not positive")));
        }
    }
    let roots: Vec<CertifiedRoot> = sturm_isolate_to(&h, &Region::OutsideUnit, width)?
        .into_iter()
        .map(|interval| CertifiedRoot {
            class: if interval.is_rational { RayClass::QuasiRegular } else { RayClass::Irregular },
            interval,
        })
        .collect();
    if !in_class_csc && roots.is_empty() {
        return Err(Error::NoRootFound);
    }
    Ok(RootCertificate { f, in_class_csc, polynomial: h, roots })
}
