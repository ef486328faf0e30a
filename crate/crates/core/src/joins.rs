//! Identification of diagonally admissible orbifolds with `S^3_w`-join
//! quotients, Yamazaki fiber joins, and the integrality lemma behind the
//! worked CSC example.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rat::{int, Rat};
use crate::error::{Error, Result};
use crate::orbifold::{AdmissiblePair, KSOrbifold};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinData {
    /// `(w0, winf)`
    pub w: [u64; 2],
    /// `(l0, linf)`
    pub l: [u64; 2],
    /// The gcd `gcd(linf, |w0·vinf - winf·v0|)`.
    #[serde(rename = "s")]
    pub s_frak: u64,
    pub smooth: bool,
    pub multiplier: u64,
    pub h4_order: u64,
}

pub fn is_diagonally_admissible(orb: &KSOrbifold, r: &AdmissiblePair) -> bool {
    orb.n1().signum() == orb.n2().signum() && r.r1 == r.r2
}

fn positive_u64(x: &Rat, what: &'static str) -> Result<(u64, u64)> {
    let n = x.numer().to_u64().ok_or(Error::Overflow(what))?;
    let d = x.denom().to_u64().ok_or(Error::Overflow(what))?;
    Ok((n, d))
}

/// The join `S^3_w`-quotient data for the diagonal class `r1 = r2 = r`.
pub fn join_identify(orb: &KSOrbifold, r: &Rat) -> Result<JoinData> {
    let (n1, n2) = (orb.n1(), orb.n2());
    if n1.signum() != n2.signum() {
        return Err(Error::WrongSignRegime("joins need n1·n2 > 0".into()));
    }
    if r.is_zero() || r.signum() != int(n1.signum()) {
        return Err(Error::WrongSignRegime("r must share the sign of the twists".into()));
    }
    if r.abs() >= Rat::one() {
        return Err(Error::NotAdmissible("need |r| < 1".into()));
    }
    let n = n1.signum() * n1.gcd(&n2);
    let (m0, mi) = (orb.m0(), orb.minf());
    let hyp = m0.gcd(&mi).gcd(&n.abs());
    if hyp != 1 {
        return Err(Error::GcdHypothesisFailed(hyp as u64));
    }

    let one = Rat::one();
    let wr = int(m0) * (&one + r) / (int(mi) * (&one - r));
    let (w0, wi) = positive_u64(&wr, "w")?;
    let diff = w0 as i128 * mi as i128 - wi as i128 * m0 as i128;
    let diff = i64::try_from(diff).map_err(|_| Error::Overflow("w0·minf - winf·m0"))?;
    let lr = int(n) / int(diff);
    if !lr.is_positive() {
        return Err(Error::InternalInconsistency("l0/linf is not positive".into()));
    }
    let (l0, li) = positive_u64(&lr, "l")?;

    let (m, v0, vi) = (orb.m() as u64, orb.v0() as u64, orb.vinf() as u64);
    let cross = (w0 as i128 * vi as i128 - wi as i128 * v0 as i128).unsigned_abs();
    let s_frak = (li as u128).gcd(&cross) as u64;
    if m.checked_mul(s_frak) != Some(li) {
        return Err(Error::InternalInconsistency(format!(
            "m = {m} but linf / s = {li}/{s_frak}"
        )));
    }
    let multiplier = m * s_frak.gcd(&(w0.checked_mul(vi).ok_or(Error::Overflow("w0·vinf"))?));
    let h4 = [w0, wi, l0, l0, li, li]
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or(Error::Overflow("join H^4 order"))?;

    Ok(JoinData {
        w: [w0, wi],
        l: [l0, li],
        s_frak,
        smooth: smooth_join_check([l0, li], [w0, wi]),
        multiplier,
        h4_order: h4,
    })
}

/// `gcd(linf, w0·winf) = 1`
pub fn smooth_join_check(l: [u64; 2], w: [u64; 2]) -> bool {
    l[1].gcd(&w[0]) == 1 && l[1].gcd(&w[1]) == 1
}

/// For a primitive transverse class the join must be smooth and
/// `gcd(m0, minf) = 1`. Other multipliers make no claim and pass.
pub fn primitive_class_smoothness(orb: &KSOrbifold, join: &JoinData) -> bool {
    if join.multiplier != 1 {
        return true;
    }
    smooth_join_check(join.l, join.w) && orb.m() == 1
}

/// Positive integers `[[k1^1, k1^2], [k2^1, k2^2]]` with `k1^i - k2^i = n_i`
/// and `(k1^i - k2^i) / (k1^i + k2^i) = r_i`, if they exist.
pub fn yamazaki_feasible(n1: i64, n2: i64, r: &AdmissiblePair) -> Option<[[u64; 2]; 2]> {
    let mut k = [[0u64; 2]; 2];
    for (i, (n, ri)) in [(n1, &r.r1), (n2, &r.r2)].into_iter().enumerate() {
        if n == 0 {
            return None;
        }
        let sum = int(n) / ri;
        if !sum.is_integer() || !sum.is_positive() {
            return None;
        }
        let sum = sum.to_integer().to_i64()?;
        if (sum + n) % 2 != 0 {
            return None;
        }
        let (k1, k2) = ((sum + n) / 2, (sum - n) / 2);
        if k1 <= 0 || k2 <= 0 {
            return None;
        }
        k[0][i] = k1 as u64;
        k[1][i] = k2 as u64;
    }
    Some(k)
}

/// Whether `x²(x²+4) / (5x²-4)` is an integer.
pub fn integrality_lemma(x: u64) -> bool {
    let x2 = x as u128 * x as u128;
    let den = 5 * x2 - 4;
    (x2 * (x2 + 4)).is_multiple_of(den)
}

/// All `x` in `[lo, hi]` for which the quotient is an integer.
pub fn lemma_scan(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(1)..=hi).filter(|&x| integrality_lemma(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::rat;
    use crate::topology::g_reg_order;
    use crate::orbifold::CohClass;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn orb(n1: i64, n2: i64, m0: i64, minf: i64) -> KSOrbifold {
        KSOrbifold::new(n1, n2, m0, minf).unwrap()
    }

    fn pair(a: Rat, b: Rat) -> AdmissiblePair {
        AdmissiblePair::new(a, b).unwrap()
    }

    #[test]
    fn diagonal_admissibility() {
        assert!(is_diagonally_admissible(&orb(1, 1, 1, 1), &pair(rat(1, 2), rat(1, 2))));
        assert!(!is_diagonally_admissible(&orb(1, -1, 1, 1), &pair(rat(1, 2), rat(1, 2))));
        assert!(!is_diagonally_admissible(&orb(2, 2, 1, 1), &pair(rat(1, 2), rat(1, 3))));
    }

    #[test]
    fn monotone_join() {
        let j = join_identify(&orb(1, 1, 1, 1), &rat(1, 2)).unwrap();
        assert_eq!(j.w, [3, 1]);
        assert_eq!(j.l, [1, 2]);
        assert!(j.smooth);
        assert_eq!(j.s_frak, 2);
        assert_eq!(j.h4_order, 12);
        assert_eq!(j.h4_order, g_reg_order(1, 1, &CohClass::y_ints(1, 1, 2)).unwrap());
        assert_eq!(j.multiplier, 1);
        assert!(primitive_class_smoothness(&orb(1, 1, 1, 1), &j));
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"w":[3,1],"l":[1,2],"s":2,"smooth":true,"multiplier":1,"h4_order":12}"#
        );
    }

    #[test]
    fn second_join_example() {
        let j = join_identify(&orb(2, 2, 1, 1), &rat(1, 3)).unwrap();
        assert_eq!((j.w, j.l, j.s_frak), ([2, 1], [2, 1], 1));
    }

    #[test]
    fn join_preconditions() {
        assert!(matches!(join_identify(&orb(1, 1, 1, 1), &rat(-1, 2)), Err(Error::WrongSignRegime(_))));
        assert!(matches!(join_identify(&orb(1, -1, 1, 1), &rat(1, 2)), Err(Error::WrongSignRegime(_))));
        assert_eq!(join_identify(&orb(2, 4, 2, 4), &rat(1, 2)), Err(Error::GcdHypothesisFailed(2)));
    }

    #[test]
    fn smoothness_checks() {
        assert!(smooth_join_check([1, 2], [3, 1]));
        assert!(!smooth_join_check([1, 2], [2, 1]));
        assert!(smooth_join_check([1, 1], [6, 35]));
        let bad = JoinData { w: [2, 1], l: [1, 2], s_frak: 1, smooth: true, multiplier: 1, h4_order: 8 };
        assert!(!primitive_class_smoothness(&orb(1, 1, 1, 1), &bad));
        let good = JoinData { w: [3, 1], l: [1, 2], s_frak: 2, smooth: true, multiplier: 1, h4_order: 12 };
        assert!(!primitive_class_smoothness(&orb(1, 1, 2, 4), &good));
    }

    #[test]
    fn yamazaki_examples() {
        assert_eq!(yamazaki_feasible(2, 2, &pair(rat(1, 2), rat(1, 2))), Some([[3, 3], [1, 1]]));
        assert_eq!(yamazaki_feasible(1, 1, &pair(rat(1, 2), rat(1, 2))), None);
        assert_eq!(yamazaki_feasible(5, 1, &pair(rat(121, 145), rat(2, 5))), None);
    }

    #[test]
    fn lemma_examples() {
        assert!(integrality_lemma(1));
        assert!(integrality_lemma(2));
        assert!(!integrality_lemma(3));
        assert_eq!(lemma_scan(1, 100_000), vec![1, 2]);
    }

    fn random_join_input(rng: &mut ChaCha8Rng, unit_m: bool) -> (KSOrbifold, Rat) {
        loop {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            let (n1, n2) = (s * rng.gen_range(1..=12), s * rng.gen_range(1..=12));
            let (m0, mi) = if unit_m { (1, 1) } else { (rng.gen_range(1..=12), rng.gen_range(1..=12)) };
            let n = n1.gcd(&n2);
            if m0.gcd(&mi).gcd(&n) != 1 {
                continue;
            }
            let q = rng.gen_range(2..=15);
            let p = rng.gen_range(1..q);
            return (orb(n1, n2, m0, mi), rat(s * p, q));
        }
    }

    #[test]
    fn join_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        for _ in 0..200 {
            let (o, r) = random_join_input(&mut rng, false);
            let j = join_identify(&o, &r).unwrap();
            let [w0, wi] = j.w.map(|x| int(x as i64));
            let [l0, li] = j.l.map(|x| int(x as i64));
            let (m0, mi) = (int(o.m0()), int(o.minf()));
            let back = (&w0 * &mi - &wi * &m0) / (&w0 * &mi + &wi * &m0);
            assert_eq!(back, r);
            let n = o.n1().signum() * o.n1().gcd(&o.n2());
            assert_eq!(&li * int(n), &l0 * (&w0 * &mi - &wi * &m0));
            assert_eq!(j.l[1], o.m() as u64 * j.s_frak);
            assert_eq!(j.w[0].gcd(&j.w[1]), 1);
            assert_eq!(j.l[0].gcd(&j.l[1]), 1);
            assert!(primitive_class_smoothness(&o, &j));
        }
    }

    #[test]
    fn unit_indices_give_smooth_joins() {
        let mut rng = ChaCha8Rng::seed_from_u64(100);
        for _ in 0..100 {
            let (o, r) = random_join_input(&mut rng, true);
            assert!(join_identify(&o, &r).unwrap().smooth);
        }
    }
}
