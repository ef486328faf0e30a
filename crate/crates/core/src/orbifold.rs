//! The orbifold data model `(n1, n2, m0, minf)`, the log-Fano test, the first
//! Chern class, the Fano index and admissible Kähler classes.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rat::{gcd_many, int, rat, serde_rat, Rat};
use crate::error::{Error, Result};

/// A twisted `CP^1`-bundle over `CP^1 x CP^1` with twist `(n1, n2)` and
/// branch divisors of ramification `m0`, `minf` along the zero and infinity
/// sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOrbifold")]
pub struct KSOrbifold {
    n1: i64,
    n2: i64,
    m0: i64,
    minf: i64,
}

#[derive(Deserialize)]
struct RawOrbifold {
    n1: i64,
    n2: i64,
    m0: i64,
    minf: i64,
}

impl TryFrom<RawOrbifold> for KSOrbifold {
    type Error = Error;
    fn try_from(r: RawOrbifold) -> Result<Self> {
        KSOrbifold::new(r.n1, r.n2, r.m0, r.minf)
    }
}

impl KSOrbifold {
    pub fn new(n1: i64, n2: i64, m0: i64, minf: i64) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidOrbifold("twists n1, n2 must be nonzero".into()));
        }
        if m0 < 1 || minf < 1 {
            return Err(Error::InvalidOrbifold("ramification indices must be positive".into()));
        }
        Ok(KSOrbifold { n1, n2, m0, minf })
    }

    pub fn n1(&self) -> i64 {
        self.n1
    }
    pub fn n2(&self) -> i64 {
        self.n2
    }
    pub fn n(&self) -> [i64; 2] {
        [self.n1, self.n2]
    }
    pub fn m0(&self) -> i64 {
        self.m0
    }
    pub fn minf(&self) -> i64 {
        self.minf
    }

    /// `gcd(m0, minf)`
    pub fn m(&self) -> i64 {
        self.m0.gcd(&self.minf)
    }
    pub fn v0(&self) -> i64 {
        self.m0 / self.m()
    }
    pub fn vinf(&self) -> i64 {
        self.minf / self.m()
    }

    /// Swaps the two base factors.
    pub fn transposed(&self) -> Self {
        KSOrbifold {
            n1: self.n2,
            n2: self.n1,
            ..*self
        }
    }

    /// Exchanges the roles of the zero and infinity sections.
    pub fn fiber_inverted(&self) -> Self {
        KSOrbifold {
            n1: -self.n1,
            n2: -self.n2,
            m0: self.minf,
            minf: self.m0,
        }
    }

    pub fn is_log_fano(&self) -> bool {
        is_log_fano(self)
    }
}

impl std::fmt::Display for KSOrbifold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n1, self.n2, self.m0, self.minf)
    }
}

/// Parameters `(r1, r2)` of an admissible Kähler class, `0 < |ri| < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdmissiblePair {
    #[serde(with = "serde_rat")]
    pub r1: Rat,
    #[serde(with = "serde_rat")]
    pub r2: Rat,
}

impl AdmissiblePair {
    pub fn new(r1: Rat, r2: Rat) -> Result<Self> {
        for (i, r) in [&r1, &r2].into_iter().enumerate() {
            if r.is_zero() || r.abs() >= Rat::one() {
                return Err(Error::NotAdmissible(format!("r{} must satisfy 0 < |r| < 1", i + 1)));
            }
        }
        Ok(AdmissiblePair { r1, r2 })
    }

    /// As [`AdmissiblePair::new`], also checking `sign(ri) = sign(ni)`.
    pub fn for_orbifold(orb: &KSOrbifold, r1: Rat, r2: Rat) -> Result<Self> {
        let pair = Self::new(r1, r2)?;
        pair.check_signs(orb)?;
        Ok(pair)
    }

    pub fn check_signs(&self, orb: &KSOrbifold) -> Result<()> {
        for (i, (r, n)) in [(&self.r1, orb.n1), (&self.r2, orb.n2)].into_iter().enumerate() {
            if r.is_positive() != (n > 0) {
                return Err(Error::SignMismatch { index: i + 1 });
            }
        }
        Ok(())
    }

    pub fn get(&self) -> [&Rat; 2] {
        [&self.r1, &self.r2]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    X,
    Y,
}

/// A degree-two class `a1·b1 + a2·b2 + a3·b3` where `b = x` or `b = y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohClass {
    pub basis: Basis,
    #[serde(with = "crate::arith::rat::serde_rat_array")]
    pub a: [Rat; 3],
}

impl CohClass {
    pub fn y(a1: Rat, a2: Rat, a3: Rat) -> Self {
        CohClass { basis: Basis::Y, a: [a1, a2, a3] }
    }

    pub fn x(a1: Rat, a2: Rat, a3: Rat) -> Self {
        CohClass { basis: Basis::X, a: [a1, a2, a3] }
    }

    pub fn y_ints(a1: i64, a2: i64, a3: i64) -> Self {
        Self::y(int(a1), int(a2), int(a3))
    }

    pub fn to_basis(&self, basis: Basis, n1: i64, n2: i64) -> CohClass {
        if self.basis == basis {
            self.clone()
        } else {
            convert_basis(self, n1, n2)
        }
    }
}

impl std::fmt::Display for CohClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b = match self.basis {
            Basis::X => "x",
            Basis::Y => "y",
        };
        write!(f, "{}{}1 + {}{}2 + {}{}3", self.a[0], b, self.a[1], b, self.a[2], b)
    }
}

/// `n_i/minf < 2` and `-n_i/m0 < 2` for both `i`.
pub fn is_log_fano(orb: &KSOrbifold) -> bool {
    orb.n()
        .iter()
        .all(|&n| (n as i128) < 2 * orb.minf as i128 && -(n as i128) < 2 * orb.m0 as i128)
}

/// First orbifold Chern class in the y-basis.
pub fn c1_orb(orb: &KSOrbifold) -> CohClass {
    let two = int(2);
    CohClass::y(
        &two - rat(orb.n1, orb.minf),
        &two - rat(orb.n2, orb.minf),
        rat(1, orb.m0) + rat(1, orb.minf),
    )
}

pub fn fano_index(orb: &KSOrbifold) -> Result<u64> {
    if !is_log_fano(orb) {
        return Err(Error::NotLogFano);
    }
    let (m, v0, vinf) = (orb.m() as i128, orb.v0() as i128, orb.vinf() as i128);
    let base = 2 * m * v0 * vinf;
    let terms = [base - orb.n1 as i128 * v0, base - orb.n2 as i128 * v0, v0 + vinf];
    let g = terms.iter().fold(0u128, |g, t| g.gcd(&t.unsigned_abs()));
    u64::try_from(g).map_err(|_| Error::Overflow("fano index"))
}

/// Switches between the x- and y-bases using `y3 - x3 = n1·x1 + n2·x2`.
pub fn convert_basis(c: &CohClass, n1: i64, n2: i64) -> CohClass {
    let [a1, a2, a3] = &c.a;
    let (n1, n2) = (int(n1), int(n2));
    match c.basis {
        Basis::X => CohClass::y(a1 - &n1 * a3, a2 - &n2 * a3, a3.clone()),
        Basis::Y => CohClass::x(a1 + &n1 * a3, a2 + &n2 * a3, a3.clone()),
    }
}

/// The class `Ω_r` in the y-basis.
pub fn admissible_class(orb: &KSOrbifold, r: &AdmissiblePair) -> Result<CohClass> {
    r.check_signs(orb)?;
    let coeff = |n: i64, ri: &Rat| int(n) * (Rat::one() - ri) / ri;
    Ok(CohClass::y(coeff(orb.n1, &r.r1), coeff(orb.n2, &r.r2), int(2)))
}

/// Inverts [`admissible_class`] for a y-basis class, without rescaling.
pub fn class_to_r(orb: &KSOrbifold, c: &CohClass) -> Result<AdmissiblePair> {
    let c = c.to_basis(Basis::Y, orb.n1, orb.n2);
    let a3 = &c.a[2];
    if a3.is_zero() {
        return Err(Error::NotAdmissible("a3 = 0".into()));
    }
    let mut rs = Vec::with_capacity(2);
    for (ai, n) in c.a[..2].iter().zip(orb.n()) {
        let na3 = int(n) * a3;
        let den = int(2) * ai + &na3;
        if den.is_zero() {
            return Err(Error::NotAdmissible("vanishing denominator".into()));
        }
        rs.push(na3 / den);
    }
    let r2 = rs.pop().unwrap();
    let r1 = rs.pop().unwrap();
    let pair = AdmissiblePair::new(r1, r2)?;
    pair.check_signs(orb)
        .map_err(|_| Error::NotAdmissible("sign of r disagrees with twist".into()))?;
    Ok(pair)
}

/// Rescales a y-basis class so that `a3 = 2`.
pub fn normalize_class(orb: &KSOrbifold, c: &CohClass) -> Result<CohClass> {
    let c = c.to_basis(Basis::Y, orb.n1, orb.n2);
    if !c.a[2].is_positive() {
        return Err(Error::NotAdmissible("a3 must be positive to normalize".into()));
    }
    let k = int(2) / &c.a[2];
    Ok(CohClass::y(&c.a[0] * &k, &c.a[1] * &k, int(2)))
}

/// Kähler-cone membership of a y-basis class on the regular manifold.
///
/// With `n1 > 0 > n2` the cone is `c1 > 0, c2 > -n2·c3, c3 > 0`; every other
/// sign arrangement follows by symmetry, so `c_i > max(0, -n_i·c3)`.
pub fn is_kahler_class_regular(n1: i64, n2: i64, c: &CohClass) -> Result<bool> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::ZeroTwist);
    }
    Ok(in_kahler_cone(n1, n2, c))
}

/// The same cone test, also accepting a vanishing twist (product case).
pub fn in_kahler_cone(n1: i64, n2: i64, c: &CohClass) -> bool {
    let c = c.to_basis(Basis::Y, n1, n2);
    let c3 = &c.a[2];
    if !c3.is_positive() {
        return false;
    }
    let floor = |n: i64| if n < 0 { int(-n) * c3 } else { Rat::zero() };
    c.a[0] > floor(n1) && c.a[1] > floor(n2)
}

/// `gcd` of the y-numerators of `m·v0·vinf · c1_orb`.
pub fn c1_numerator_gcd(orb: &KSOrbifold) -> u64 {
    let scale = int(orb.m() * orb.v0() * orb.vinf());
    let nums: Vec<i64> = c1_orb(orb)
        .a
        .iter()
        .map(|a| {
            let v = a * &scale;
            debug_assert!(v.is_integer());
            i64::try_from(v.to_integer()).expect("small numerator")
        })
        .collect();
    gcd_many(&nums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn orb(n1: i64, n2: i64, m0: i64, minf: i64) -> KSOrbifold {
        KSOrbifold::new(n1, n2, m0, minf).unwrap()
    }

    #[test]
    fn construction_and_derived() {
        let o = orb(48, -8, 60, 45);
        assert_eq!((o.m(), o.v0(), o.vinf()), (15, 4, 3));
        assert!(KSOrbifold::new(0, 1, 1, 1).is_err());
        assert!(KSOrbifold::new(1, 1, 0, 1).is_err());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let o = orb(1, -1, 1, 1);
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(s, r#"{"n1":1,"n2":-1,"m0":1,"minf":1}"#);
        assert_eq!(serde_json::from_str::<KSOrbifold>(&s).unwrap(), o);
        assert!(serde_json::from_str::<KSOrbifold>(r#"{"n1":0,"n2":-1,"m0":1,"minf":1}"#).is_err());
        let c = CohClass::y(int(1), rat(3, 2), int(2));
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"basis":"Y","a":["1","3/2","2"]}"#);
        assert_eq!(serde_json::from_str::<CohClass>(&s).unwrap(), c);
    }

    #[test]
    fn log_fano_examples() {
        assert!(is_log_fano(&orb(1, -1, 1, 1)));
        assert!(!is_log_fano(&orb(2, 2, 1, 1)));
        assert!(is_log_fano(&orb(48, -8, 60, 45)));
    }

    #[test]
    fn c1_examples() {
        assert_eq!(c1_orb(&orb(1, -1, 1, 1)), CohClass::y_ints(1, 3, 2));
        assert_eq!(c1_orb(&orb(1, 1, 1, 1)), CohClass::y_ints(1, 1, 2));
        assert_eq!(
            c1_orb(&orb(2, -2, 3, 3)),
            CohClass::y(rat(4, 3), rat(8, 3), rat(2, 3))
        );
        let x = convert_basis(&c1_orb(&orb(2, -2, 3, 3)), 2, -2);
        assert_eq!(x, CohClass::x(rat(8, 3), rat(4, 3), rat(2, 3)));
    }

    #[test]
    fn index_examples() {
        assert_eq!(fano_index(&orb(1, -1, 1, 1)), Ok(1));
        assert_eq!(fano_index(&orb(2, -2, 3, 3)), Ok(2));
        assert_eq!(fano_index(&orb(48, -8, 60, 45)), Ok(7));
        assert_eq!(fano_index(&orb(2, 2, 1, 1)), Err(Error::NotLogFano));
    }

    #[test]
    fn basis_examples() {
        let y = convert_basis(&CohClass::x(int(3), int(3), int(2)), 1, 1);
        assert_eq!(y, CohClass::y_ints(1, 1, 2));
        let c = CohClass::y(rat(1, 7), int(-3), int(5));
        assert_eq!(convert_basis(&c, 0, 0).a, c.a);
        assert_eq!(convert_basis(&CohClass::y_ints(1, 3, 2), 1, -1), CohClass::x(int(3), int(1), int(2)));
    }

    #[test]
    fn admissible_examples() {
        let half = rat(1, 2);
        let o = orb(1, -1, 1, 1);
        let r = AdmissiblePair::new(half.clone(), -half.clone()).unwrap();
        assert_eq!(admissible_class(&o, &r).unwrap(), CohClass::y_ints(1, 3, 2));
        assert_eq!(class_to_r(&o, &CohClass::y_ints(1, 3, 2)).unwrap(), r);

        let pos = AdmissiblePair::new(half.clone(), half.clone()).unwrap();
        assert_eq!(admissible_class(&orb(1, 1, 1, 1), &pos).unwrap(), CohClass::y_ints(1, 1, 2));
        assert_eq!(admissible_class(&orb(2, 2, 1, 1), &pos).unwrap(), CohClass::y_ints(2, 2, 2));
        assert_eq!(class_to_r(&orb(1, 1, 1, 1), &CohClass::y_ints(1, 1, 2)).unwrap(), pos);
        assert!(matches!(
            class_to_r(&orb(1, 1, 1, 1), &CohClass::y_ints(1, 1, 0)),
            Err(Error::NotAdmissible(_))
        ));
        assert_eq!(admissible_class(&o, &pos), Err(Error::SignMismatch { index: 2 }));
    }

    #[test]
    fn admissible_pair_bounds() {
        assert!(AdmissiblePair::new(int(0), rat(1, 2)).is_err());
        assert!(AdmissiblePair::new(int(1), rat(1, 2)).is_err());
        assert!(AdmissiblePair::new(rat(-1, 2), rat(1, 2)).is_ok());
    }

    #[test]
    fn normalize_then_recover() {
        let o = orb(1, 1, 1, 1);
        let c = normalize_class(&o, &CohClass::y_ints(3, 3, 6)).unwrap();
        assert_eq!(c, CohClass::y_ints(1, 1, 2));
    }

    #[test]
    fn kahler_cone_examples() {
        assert_eq!(is_kahler_class_regular(1, 1, &CohClass::y_ints(1, 1, 2)), Ok(true));
        assert_eq!(is_kahler_class_regular(1, -1, &CohClass::y_ints(1, 1, 1)), Ok(false));
        assert_eq!(is_kahler_class_regular(1, -1, &CohClass::y_ints(1, 3, 2)), Ok(true));
        // mirrored arrangement
        assert_eq!(is_kahler_class_regular(-1, 1, &CohClass::y_ints(3, 1, 2)), Ok(true));
        assert_eq!(is_kahler_class_regular(-1, 1, &CohClass::y_ints(1, 3, 2)), Ok(false));
        assert_eq!(is_kahler_class_regular(0, 1, &CohClass::y_ints(1, 1, 1)), Err(Error::ZeroTwist));
    }

    fn valid_orb_and_r() -> impl Strategy<Value = (KSOrbifold, AdmissiblePair)> {
        (
            prop_oneof![-30i64..0, 1i64..30],
            prop_oneof![-30i64..0, 1i64..30],
            1i64..60,
            1i64..60,
            1i64..40,
            1i64..40,
        )
            .prop_flat_map(|(n1, n2, m0, minf, d1, d2)| {
                (Just((n1, n2, m0, minf)), 1..d1 + 1, 1..d2 + 1, Just((d1, d2)))
            })
            .prop_map(|((n1, n2, m0, minf), k1, k2, (d1, d2))| {
                let o = orb(n1, n2, m0, minf);
                let r1 = rat(k1, d1 + 1) * int(n1.signum());
                let r2 = rat(k2, d2 + 1) * int(n2.signum());
                (o, AdmissiblePair::for_orbifold(&o, r1, r2).unwrap())
            })
    }

    fn any_orb() -> impl Strategy<Value = KSOrbifold> {
        (
            prop_oneof![-200i64..0, 1i64..200],
            prop_oneof![-200i64..0, 1i64..200],
            1i64..300,
            1i64..300,
        )
            .prop_map(|(a, b, c, d)| orb(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn class_roundtrip((o, r) in valid_orb_and_r()) {
            let c = admissible_class(&o, &r).unwrap();
            prop_assert_eq!(class_to_r(&o, &c).unwrap(), r);
        }

        #[test]
        fn basis_involution(a in -50i64..50, b in -50i64..50, c in -50i64..50, n1 in -9i64..9, n2 in -9i64..9, d in 1i64..12) {
            let x = CohClass::x(rat(a, d), rat(b, d + 1), rat(c, d));
            let y = convert_basis(&x, n1, n2);
            prop_assert_eq!(y.basis, Basis::Y);
            prop_assert_eq!(convert_basis(&y, n1, n2), x);
        }

        #[test]
        fn log_fano_symmetries(o in any_orb()) {
            prop_assert_eq!(is_log_fano(&o), is_log_fano(&o.transposed()));
            prop_assert_eq!(is_log_fano(&o), is_log_fano(&o.fiber_inverted()));
        }

        #[test]
        fn index_divides_c1_numerators(o in any_orb()) {
            prop_assume!(is_log_fano(&o));
            let i = fano_index(&o).unwrap();
            prop_assert_eq!(c1_numerator_gcd(&o) % i, 0);
        }
    }
}
