use crate::error::{Error, Result};

/// Default absolute width of the final bracket.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration budget.
pub const DEFAULT_MAX_ITER: usize = 200;

/// A bracket `[lo, hi]` across which the evaluator changes sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Bisection for a monotone `f` with a sign change on `[lo, hi]`.
///
/// Returns a bracket narrower than `tol` whose endpoints still straddle the
/// sign change, or collapse onto an exact zero of `f`.
pub fn bisect_monotone<F>(f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<Bracket>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(Bracket { lo, hi: lo });
    }
    if fhi == 0.0 {
        return Ok(Bracket { lo: hi, hi });
    }
    if flo.is_nan() || fhi.is_nan() || flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_sign = flo.signum();
    for _ in 0..max_iter {
        if hi - lo < tol {
            return Ok(Bracket { lo, hi });
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(Bracket { lo: mid, hi: mid });
        }
        if fm.is_nan() {
            break;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo < tol {
        Ok(Bracket { lo, hi })
    } else {
        Err(Error::MaxIterations {
            tol,
            iterations: max_iter,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_root() {
        let b = bisect_monotone(|x| x, -1.0, 1.0, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(b.contains(0.0));
        assert!(b.midpoint().abs() < 1e-12);
    }

    #[test]
    fn cube_root_of_two() {
        let b = bisect_monotone(|x| x * x * x - 2.0, 1.0, 2.0, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let x = b.midpoint();
        assert!(b.width() < 1e-12);
        assert!((x.powi(3) - 2.0).abs() < 1e-11);
        assert!(b.contains(2f64.cbrt()) || (x - 2f64.cbrt()).abs() < 1e-12);
    }

    #[test]
    fn exp_minus_one() {
        let b = bisect_monotone(|x: f64| x.exp_m1(), -1.0, 1.0, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(b.midpoint().abs() < 1e-12);
    }

    #[test]
    fn decreasing_function() {
        let b = bisect_monotone(|x| 0.3 - x, -1.0, 1.0, 1e-13, DEFAULT_MAX_ITER).unwrap();
        assert!((b.midpoint() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn no_sign_change() {
        let e = bisect_monotone(|x| x * x + 1.0, -1.0, 1.0, DEFAULT_TOL, DEFAULT_MAX_ITER);
        assert!(matches!(e, Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn budget_exhausted() {
        let e = bisect_monotone(|x| x - 0.3, -1.0, 1.0, 1e-12, 5);
        assert!(matches!(e, Err(Error::MaxIterations { iterations: 5, .. })));
    }
}
