use num_traits::Zero;

use super::rat::Rat;
use crate::error::{Error, Result};

/// Solves `[[a11, a12], [a21, a22]] · (x, y) = (c1, c2)` by Cramer's rule.
pub fn solve_2x2(a11: &Rat, a12: &Rat, a21: &Rat, a22: &Rat, c1: &Rat, c2: &Rat) -> Result<(Rat, Rat)> {
    let det = a11 * a22 - a12 * a21;
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    let x = (c1 * a22 - a12 * c2) / &det;
    let y = (a11 * c2 - c1 * a21) / &det;
    Ok((x, y))
}
