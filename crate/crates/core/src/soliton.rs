//! Kähler–Ricci solitons: the constant `c` as the unique zero of
//! `G(k) = ∫_{-1}^{1} e^{kt} (t - t0) g(t) dt` and the momentum profile `F`.

use serde::{Deserialize, Serialize};

use crate::arith::bisect::{bisect_monotone, Bracket};
use crate::arith::poly::{integrate_poly, Poly};
use crate::arith::rat::{int, rat, serde_rat, to_f64, Rat};
use crate::error::{Error, Result};
use crate::ke::{ke_condition, p_c, soliton_r};
use crate::orbifold::{is_log_fano, AdmissiblePair, KSOrbifold};

const MAX_DOUBLINGS: usize = 60;
const SERIES_TERMS: usize = 40;
/// Below this `|k|` the Taylor series in `k` is used; above it the closed form.
const SERIES_CUTOFF: f64 = 1.0;
pub const PROFILE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolitonConstant {
    ExactZero,
    Bracketed { lo: f64, hi: f64 },
}

impl SolitonConstant {
    pub fn value(&self) -> f64 {
        match *self {
            SolitonConstant::ExactZero => 0.0,
            SolitonConstant::Bracketed { lo, hi } => 0.5 * (lo + hi),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileResiduals {
    pub f_minus: f64,
    pub f_plus: f64,
    pub df_minus: f64,
    pub df_plus: f64,
}

impl ProfileResiduals {
    pub fn max(&self) -> f64 {
        [self.f_minus, self.f_plus, self.df_minus, self.df_plus]
            .into_iter()
            .map(f64::abs)
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolitonProfile {
    pub profile_ok: bool,
    pub samples: Vec<(f64, f64)>,
    pub residuals: ProfileResiduals,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolitonResult {
    #[serde(with = "serde_rat")]
    pub lambda: Rat,
    pub c: SolitonConstant,
    pub profile_ok: bool,
    pub sample_profile: Vec<(f64, f64)>,
    pub residuals: ProfileResiduals,
}

/// `q(t) = (t - t0) g(t)` for the soliton class, together with the data
/// needed to integrate `e^{kt} q(t)` fast in floating point.
#[derive(Clone, Debug)]
pub struct SolitonFunction {
    orb: KSOrbifold,
    r: AdmissiblePair,
    t0: Rat,
    q: Poly,
    t0_f: f64,
    /// `q, q', q'', …` as float coefficient vectors.
    derivs: Vec<Vec<f64>>,
    /// `z ↦ ∫_{-1}^{z} t^n q(t) dt` for `n < SERIES_TERMS`.
    moments: Vec<Vec<f64>>,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

impl SolitonFunction {
    pub fn new(orb: &KSOrbifold) -> Result<Self> {
        let r = soliton_r(orb)?;
        let two_lambda = rat(1, orb.m0()) + rat(1, orb.minf());
        let t0 = rat(orb.m0() - orb.minf(), orb.m0() + orb.minf());
        let g = p_c(&r).scale(&-two_lambda);
        let q = &Poly::linear(-t0.clone(), int(1)) * &g;

        let mut derivs = Vec::new();
        let mut d = q.clone();
        while !d.is_zero() {
            derivs.push(d.to_f64_coeffs());
            d = d.derivative();
        }
        let minus_one = int(-1);
        let moments = (0..SERIES_TERMS)
            .map(|n| {
                let anti = (&Poly::monomial(int(1), n) * &q).antiderivative();
                let base = anti.eval(&minus_one);
                (&anti - &Poly::constant(base)).to_f64_coeffs()
            })
            .collect();
        Ok(SolitonFunction {
            orb: *orb,
            r,
            t0_f: to_f64(&t0),
            t0,
            q,
            derivs,
            moments,
        })
    }

    pub fn orbifold(&self) -> &KSOrbifold {
        &self.orb
    }

    pub fn soliton_class(&self) -> &AdmissiblePair {
        &self.r
    }

    pub fn t0(&self) -> &Rat {
        &self.t0
    }

    pub fn integrand(&self) -> &Poly {
        &self.q
    }

    /// `G(0)` exactly.
    pub fn g_at_zero(&self) -> Rat {
        integrate_poly(&self.q, &int(-1), &int(1))
    }

    /// `Σ_n (-1)^n q^{(n)}(t) / k^{n+1}`, an antiderivative of `e^{kt} q`
    /// divided by `e^{kt}`.
    fn closed_form(&self, k: f64, t: f64) -> f64 {
        let mut sum = 0.0;
        let mut kpow = k;
        for (n, d) in self.derivs.iter().enumerate() {
            let term = horner(d, t) / kpow;
            sum += if n % 2 == 0 { term } else { -term };
            kpow *= k;
        }
        sum
    }

    /// `Σ_n k^n/n! ∫_{-1}^{z} t^n q dt`
    fn series(&self, k: f64, z: f64) -> f64 {
        let mut sum = 0.0;
        let mut coef = 1.0;
        for (n, m) in self.moments.iter().enumerate() {
            if n > 0 {
                coef *= k / n as f64;
            }
            sum += coef * horner(m, z);
        }
        sum
    }

    /// `G(k)`
    pub fn g(&self, k: f64) -> f64 {
        if k.abs() <= SERIES_CUTOFF {
            self.series(k, 1.0)
        } else {
            k.exp() * self.closed_form(k, 1.0) - (-k).exp() * self.closed_form(k, -1.0)
        }
    }

    /// `e^{-k t0} G(k)`, strictly decreasing in `k`.
    pub fn scaled_g(&self, k: f64) -> f64 {
        if k.abs() <= SERIES_CUTOFF {
            (-k * self.t0_f).exp() * self.series(k, 1.0)
        } else {
            let plus = (k * (1.0 - self.t0_f)).exp() * self.closed_form(k, 1.0);
            let minus = (-k * (1.0 + self.t0_f)).exp() * self.closed_form(k, -1.0);
            plus - minus
        }
    }

    /// `F(z) = e^{-cz} ∫_{-1}^{z} e^{ct} q(t) dt`
    pub fn profile(&self, c: f64, z: f64) -> f64 {
        if c.abs() <= SERIES_CUTOFF {
            (-c * z).exp() * self.series(c, z)
        } else {
            self.closed_form(c, z) - (-c * (1.0 + z)).exp() * self.closed_form(c, -1.0)
        }
    }

    /// `F'(z) = q(z) - c F(z)`
    pub fn profile_derivative(&self, c: f64, z: f64) -> f64 {
        horner(&self.derivs[0], z) - c * self.profile(c, z)
    }

    /// Brackets the zero of the scaled `G`, doubling outward from `[-1, 1]`.
    pub fn bracket_root(&self, tol: f64, max_iter: usize) -> Result<Bracket> {
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        let mut doublings = 0;
        while self.scaled_g(lo) <= 0.0 {
            doublings += 1;
            if doublings > MAX_DOUBLINGS {
                return Err(Error::ScaleOverflow { doublings: MAX_DOUBLINGS });
            }
            hi = hi.min(lo);
            lo *= 2.0;
        }
        while self.scaled_g(hi) >= 0.0 {
            doublings += 1;
            if doublings > MAX_DOUBLINGS {
                return Err(Error::ScaleOverflow { doublings: MAX_DOUBLINGS });
            }
            lo = lo.max(hi);
            hi *= 2.0;
        }
        bisect_monotone(|k| self.scaled_g(k), lo, hi, tol, max_iter)
    }
}

/// `λ = (1/m0 + 1/minf) / 2`
pub fn soliton_lambda(orb: &KSOrbifold) -> Rat {
    (rat(1, orb.m0()) + rat(1, orb.minf())) / int(2)
}

pub fn soliton_constant(orb: &KSOrbifold, tol: f64, max_iter: usize) -> Result<SolitonResult> {
    soliton_constant_with_samples(orb, tol, max_iter, 101)
}

pub fn soliton_constant_with_samples(
    orb: &KSOrbifold,
    tol: f64,
    max_iter: usize,
    samples: usize,
) -> Result<SolitonResult> {
    let sf = SolitonFunction::new(orb)?;
    let c = if ke_condition(orb) || sf.g_at_zero() == int(0) {
        SolitonConstant::ExactZero
    } else {
        let b = sf.bracket_root(tol, max_iter)?;
        SolitonConstant::Bracketed { lo: b.lo, hi: b.hi }
    };
    let profile = profile_of(&sf, c.value(), samples);
    Ok(SolitonResult {
        lambda: soliton_lambda(orb),
        c,
        profile_ok: profile.profile_ok,
        sample_profile: profile.samples,
        residuals: profile.residuals,
    })
}

pub fn soliton_profile(orb: &KSOrbifold, c: f64, samples: usize) -> Result<SolitonProfile> {
    if !is_log_fano(orb) {
        return Err(Error::NotLogFano);
    }
    if samples == 0 {
        return Err(Error::InvalidParams("need at least one sample".into()));
    }
    Ok(profile_of(&SolitonFunction::new(orb)?, c, samples))
}

fn profile_of(sf: &SolitonFunction, c: f64, samples: usize) -> SolitonProfile {
    let pts: Vec<(f64, f64)> = (0..samples)
        .map(|i| {
            let z = -1.0 + 2.0 * (i + 1) as f64 / (samples + 1) as f64;
            (z, sf.profile(c, z))
        })
        .collect();
    let pc = p_c(&sf.r);
    let (m0, minf) = (sf.orb.m0() as f64, sf.orb.minf() as f64);
    let target_minus = 2.0 * to_f64(&pc.eval(&int(-1))) / minf;
    let target_plus = -2.0 * to_f64(&pc.eval(&int(1))) / m0;
    let residuals = ProfileResiduals {
        f_minus: sf.profile(c, -1.0),
        f_plus: sf.profile(c, 1.0),
        df_minus: sf.profile_derivative(c, -1.0) - target_minus,
        df_plus: sf.profile_derivative(c, 1.0) - target_plus,
    };
    let profile_ok = pts.iter().all(|&(_, f)| f > 0.0) && residuals.max() < PROFILE_TOL;
    SolitonProfile {
        profile_ok,
        samples: pts,
        residuals,
    }
}
