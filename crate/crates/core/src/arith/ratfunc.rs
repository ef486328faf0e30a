//! Rational functions over the rationals and the exact shifted-pole integral.

use std::ops::{Add, Mul, Sub};

use num_integer::binomial;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{int, Rat};
use crate::error::{Error, Result};

/// `num / den` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidParams("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading().unwrap().recip();
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `self * multiplier` as a polynomial, when the multiplier clears the
    /// denominator exactly.
    pub fn clear_with(&self, multiplier: &Poly) -> Option<Poly> {
        let k = multiplier.div_exact(&self.den)?;
        Some(&self.num * &k)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

/// `b ↦ ∫_{-1}^{1} q(t) (t + b)^{-s} dt` as an exact rational function of `b`.
///
/// `q` is re-expanded about the pole, `q(t) = Σ_j c_j(b) (t + b)^j`, and each
/// term integrates to `c_j(b) ((b - 1)^{-k} - (b + 1)^{-k}) / k` with
/// `k = s - 1 - j >= 1`. The result is valid for `|b| > 1`.
pub fn integrate_shifted_pole(q: &Poly, s: usize) -> Result<RatFunc> {
    let Some(deg) = q.degree() else {
        return Ok(RatFunc::zero());
    };
    if s < 2 || deg >= s - 1 {
        return Err(Error::DegreeTooHigh {
            degree: deg,
            pole_order: s,
        });
    }
    let e = (s - 1) as u32;
    let bm1 = Poly::from_ints(&[-1, 1]);
    let bp1 = Poly::from_ints(&[1, 1]);
    let den = &bm1.pow(e) * &bp1.pow(e);

    let mut num = Poly::zero();
    for j in 0..=deg {
        let cj = taylor_coefficient(q, j);
        if cj.is_zero() {
            continue;
        }
        let k = (s - 1 - j) as u32;
        // (b-1)^{-k} - (b+1)^{-k} over den
        let diff = &(&bm1.pow(e - k) * &bp1.pow(e)) - &(&bm1.pow(e) * &bp1.pow(e - k));
        num = &num + &(&cj * &diff).scale(&int(k as i64).recip());
    }
    RatFunc::new(num, den)
}

/// `c_j(b) = q^{(j)}(-b) / j!` as a polynomial in `b`.
fn taylor_coefficient(q: &Poly, j: usize) -> Poly {
    let coeffs = q
        .coeffs()
        .iter()
        .enumerate()
        .skip(j)
        .map(|(i, qi)| {
            let sign = if (i - j).is_multiple_of(2) { Rat::one() } else { -Rat::one() };
            (i - j, qi * int(binomial(i as i64, j as i64)) * sign)
        });
    let mut out = vec![Rat::zero(); q.coeffs().len() - j];
    for (k, c) in coeffs {
        out[k] += c;
    }
    Poly::new(out)
}
