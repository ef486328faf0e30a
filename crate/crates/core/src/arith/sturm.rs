//! Real-root isolation with Sturm sequences, plus exact detection of rational
//! roots once an interval is narrow enough.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rat::{format_rat, int, pow2_neg, rat, sign, simplest_between, Rat};
use crate::error::{Error, Result};

/// Where to look for roots. Every region is open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    AllReals,
    /// `(-inf, -1) ∪ (1, inf)`
    OutsideUnit,
    /// The open interval `(lo, hi)`.
    Interval(Rat, Rat),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "super::rat::serde_rat")]
    pub lo: Rat,
    #[serde(with = "super::rat::serde_rat")]
    pub hi: Rat,
    #[serde(with = "super::rat::serde_rat_opt")]
    pub exact_root: Option<Rat>,
    pub is_rational: bool,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Midpoint, or the exact root when known.
    pub fn approx(&self) -> Rat {
        match &self.exact_root {
            Some(r) => r.clone(),
            None => (&self.lo + &self.hi) / int(2),
        }
    }
}

impl std::fmt::Display for IsolatingInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.exact_root {
            Some(r) => write!(f, "{} (exact)", format_rat(r)),
            None => write!(
                f,
                "[{:.12}, {:.12}]",
                super::rat::to_f64(&self.lo),
                super::rat::to_f64(&self.hi)
            ),
        }
    }
}

/// Integer polynomial used for fast exact sign evaluation.
#[derive(Clone, Debug)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn from_poly(p: &Poly) -> Self {
        IntPoly(p.integer_coeffs())
    }

    /// Sign of `p(n/d)` from the homogenized integer Horner scheme.
    fn sign_at(&self, x: &Rat) -> i32 {
        let (n, d) = (x.numer(), x.denom());
        let mut iter = self.0.iter().rev();
        let Some(lead) = iter.next() else { return 0 };
        let mut acc = lead.clone();
        let mut dpow = BigInt::one();
        for c in iter {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

/// The Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<Poly>,
    ints: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d.primitive_part());
            loop {
                let n = seq.len();
                let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(-&r.primitive_part());
            }
        }
        let ints = seq.iter().map(IntPoly::from_poly).collect();
        SturmChain { seq, ints }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.seq
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rat) -> usize {
        count_changes(self.ints.iter().map(|q| q.sign_at(x)))
    }

    /// Roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a) - self.variations(b)
    }

    /// Roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rat, b: &Rat) -> usize {
        let at_b = usize::from(self.ints[0].sign_at(b) == 0);
        self.count_half_open(a, b) - at_b
    }
}

fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut prev = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if prev != 0 && s != prev {
            n += 1;
        }
        prev = s;
    }
    n
}

/// Isolates the distinct real roots of `p` in `region` to width `< 2^-64`.
pub fn sturm_isolate(p: &Poly, region: &Region) -> Result<Vec<IsolatingInterval>> {
    sturm_isolate_to(p, region, &pow2_neg(64))
}

/// As [`sturm_isolate`] with an explicit target width.
pub fn sturm_isolate_to(p: &Poly, region: &Region, width: &Rat) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(Error::InvalidParams("isolation width must be positive".into()));
    }
    let sf = p.square_free().primitive_part();
    if sf.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let lc: BigInt = sf.leading().unwrap().to_integer().abs();
    let lc_rat = Rat::from_integer(lc.clone());
    let separation = (&lc_rat * &lc_rat * int(2)).recip();
    let target = if &separation < width { separation } else { width.clone() };

    let iso = Isolator {
        chain: SturmChain::new(&sf),
        lc,
        target,
        width: width.clone(),
    };

    let bound = sf.cauchy_bound() + Rat::one();
    let windows: Vec<(Rat, Rat)> = match region {
        Region::AllReals => vec![(-bound.clone(), bound)],
        Region::OutsideUnit => {
            let b = if bound > int(2) { bound } else { int(2) };
            vec![(-b.clone(), int(-1)), (int(1), b)]
        }
        Region::Interval(lo, hi) => {
            if lo >= hi {
                return Err(Error::InvalidParams("empty interval region".into()));
            }
            vec![(lo.clone(), hi.clone())]
        }
    };

    let mut out = Vec::new();
    for (a, b) in windows {
        iso.split(a, b, &mut out);
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

struct Isolator {
    chain: SturmChain,
    lc: BigInt,
    target: Rat,
    width: Rat,
}

impl Isolator {
    fn sign(&self, x: &Rat) -> i32 {
        self.chain.ints[0].sign_at(x)
    }

    fn vanishes(&self, x: &Rat) -> bool {
        self.sign(x) == 0
    }

    fn split(&self, a: Rat, b: Rat, out: &mut Vec<IsolatingInterval>) {
        let mut stack = vec![(a, b)];
        while let Some((a, b)) = stack.pop() {
            match self.chain.count_open(&a, &b) {
                0 => {}
                1 => out.push(self.refine(a, b)),
                _ => {
                    let mid = (&a + &b) / int(2);
                    if self.vanishes(&mid) {
                        out.push(self.exact(mid.clone(), &a, &b));
                    }
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
    }

    /// `(a, b)` holds exactly one root, strictly inside.
    fn refine(&self, mut a: Rat, mut b: Rat) -> IsolatingInterval {
        // Endpoints may themselves be roots of p lying outside the open
        // interval; pull them in with Sturm counts first.
        while self.vanishes(&a) || self.vanishes(&b) {
            let mid = (&a + &b) / int(2);
            if self.vanishes(&mid) {
                return self.exact(mid, &a, &b);
            }
            if self.chain.count_open(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        let sa = self.sign(&a);
        while &b - &a >= self.target {
            let mid = (&a + &b) / int(2);
            let sm = self.sign(&mid);
            if sm == 0 {
                return self.exact(mid, &a, &b);
            }
            if sm == sa {
                a = mid;
            } else {
                b = mid;
            }
        }
        let cand = simplest_between(&a, &b);
        if cand.denom() <= &self.lc && self.vanishes(&cand) {
            return self.exact(cand, &a, &b);
        }
        IsolatingInterval {
            lo: a,
            hi: b,
            exact_root: None,
            is_rational: false,
        }
    }

    /// Tight interval around the exact root `r`, which lies strictly inside
    /// `(a, b)`.
    fn exact(&self, r: Rat, a: &Rat, b: &Rat) -> IsolatingInterval {
        let mut eps = (&self.width / int(4))
            .min((&r - a) / int(2))
            .min((b - &r) / int(2));
        loop {
            let lo = &r - &eps;
            let hi = &r + &eps;
            if !self.vanishes(&lo)
                && !self.vanishes(&hi)
                && self.chain.count_open(&lo, &hi) == 1
            {
                return IsolatingInterval {
                    lo,
                    hi,
                    exact_root: Some(r),
                    is_rational: true,
                };
            }
            eps /= int(2);
        }
    }
}

/// Rational grid `{lo + k·step}` sign scan; used as an independent check.
pub fn sign_change_count(p: &Poly, lo: &Rat, hi: &Rat, steps: u32) -> usize {
    let step = (hi - lo) / int(steps as i64);
    let signs = (0..=steps).map(|k| sign(&p.eval(&(lo + &step * rat(k as i64, 1)))));
    count_changes(signs)
}
