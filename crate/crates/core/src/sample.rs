//! Seeded generators of valid inputs, shared by tests, benches and the CLI.

use rand::Rng;

use crate::arith::rat::{rat, Rat};
use crate::orbifold::{AdmissiblePair, KSOrbifold};

fn nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// `r` with `0 < |r| < 1`, denominator at most `max_den`, sign `sign`.
pub fn random_r<R: Rng>(rng: &mut R, sign: i64, max_den: i64) -> Rat {
    let q = rng.gen_range(2..=max_den);
    let p = rng.gen_range(1..q);
    rat(sign.signum() * p, q)
}

/// Orbifold with `|n_i| <= 12`, `m0, minf <= 12`.
pub fn random_orb<R: Rng>(rng: &mut R) -> KSOrbifold {
    let n1 = nonzero(rng, 12);
    let n2 = nonzero(rng, 12);
    KSOrbifold::new(n1, n2, rng.gen_range(1..=12), rng.gen_range(1..=12))
        .expect("nonzero twists and positive indices")
}

/// A random orbifold with an admissible pair of matching signs.
pub fn random_orb_and_r<R: Rng>(rng: &mut R) -> (KSOrbifold, AdmissiblePair) {
    let orb = random_orb(rng);
    let r1 = random_r(rng, orb.n1(), 15);
    let r2 = random_r(rng, orb.n2(), 15);
    let pair = AdmissiblePair::for_orbifold(&orb, r1, r2).expect("signs chosen to match");
    (orb, pair)
}

/// A random log-Fano orbifold.
pub fn random_log_fano<R: Rng>(rng: &mut R) -> KSOrbifold {
    loop {
        let o = random_orb(rng);
        if o.is_log_fano() {
            return o;
        }
    }
}
