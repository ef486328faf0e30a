//! Cohomology of the total spaces: cup products on `S_n`, the torsion order
//! of `H^4` for regular circle bundles, the orbifold cohomology groups, and
//! the orders visible in `H^4` of the orbifold circle bundles.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rat::{int, Rat};
use crate::error::{Error, Result};
use crate::orbifold::{in_kahler_cone, Basis, CohClass, KSOrbifold};

/// Degree-two generator multiplied against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Y1,
    Y2,
    Y3,
}

/// `u · g` in the basis `(y1y2, y1y3, y2y3)`, using `y1² = y2² = 0` and
/// `y3² = n1·y1y3 + n2·y2y3`.
pub fn cup_product_h2(n1: i64, n2: i64, u: &CohClass, g: Generator) -> [Rat; 3] {
    let u = u.to_basis(Basis::Y, n1, n2);
    let [c1, c2, c3] = &u.a;
    let zero = Rat::zero();
    match g {
        Generator::Y1 => [c2.clone(), c3.clone(), zero],
        Generator::Y2 => [c1.clone(), zero, c3.clone()],
        Generator::Y3 => [zero, c1 + int(n1) * c3, c2 + int(n2) * c3],
    }
}

fn integer_entries(c: &CohClass, n1: i64, n2: i64) -> Result<[i64; 3]> {
    let c = c.to_basis(Basis::Y, n1, n2);
    let mut out = [0i64; 3];
    for (o, a) in out.iter_mut().zip(&c.a) {
        if !a.is_integer() {
            return Err(Error::NonIntegerClass);
        }
        *o = a.to_integer().to_i64().ok_or(Error::Overflow("class entry"))?;
    }
    Ok(out)
}

/// Matrix of `d_2` from `H^2` to `H^4`: row `i` is `c · y_i`.
pub fn d2_matrix(n1: i64, n2: i64, c: &CohClass) -> Result<[[i64; 3]; 3]> {
    let [c1, c2, c3] = integer_entries(c, n1, n2)?;
    Ok([
        [c2, c3, 0],
        [c1, 0, c3],
        [0, c1 + n1 * c3, c2 + n2 * c3],
    ])
}

pub fn det3(m: &[[i64; 3]; 3]) -> i128 {
    let e = |i: usize, j: usize| m[i][j] as i128;
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

/// `|G_reg| = c3 [c2 (c1 + n1 c3) + c1 (c2 + n2 c3)]` for a primitive
/// Kähler class `c`. Zero twists are accepted (product case).
pub fn g_reg_order(n1: i64, n2: i64, c: &CohClass) -> Result<u64> {
    let [c1, c2, c3] = integer_entries(c, n1, n2)?;
    let g = [c1, c2, c3].iter().fold(0u64, |g, v| g.gcd(&v.unsigned_abs()));
    if g != 1 {
        return Err(Error::NotPrimitive);
    }
    if !in_kahler_cone(n1, n2, c) {
        return Err(Error::NotKahler);
    }
    let (c1, c2, c3, n1, n2) = (c1 as i128, c2 as i128, c3 as i128, n1 as i128, n2 as i128);
    let order = c3 * (c2 * (c1 + n1 * c3) + c1 * (c2 + n2 * c3));
    if order <= 1 {
        return Err(Error::InternalInconsistency(format!("G_reg has order {order}")));
    }
    u64::try_from(order).map_err(|_| Error::Overflow("G_reg order"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Torsion {
    Trivial,
    /// A group of exactly this order.
    ExactOrder(u64),
    /// A group containing a subgroup of this order.
    ContainsOrder(u64),
    /// A direct sum of cyclic groups of the given orders.
    Group(Vec<u64>),
}

impl Torsion {
    pub fn order(&self) -> BigUint {
        match self {
            Torsion::Trivial => BigUint::one(),
            Torsion::ExactOrder(n) | Torsion::ContainsOrder(n) => BigUint::from(*n),
            Torsion::Group(f) => f.iter().map(|&x| BigUint::from(x)).product(),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Torsion::Trivial => "trivial",
            Torsion::ExactOrder(_) => "exact",
            Torsion::ContainsOrder(_) => "contains",
            Torsion::Group(_) => "group",
        }
    }

    /// `Z_a ⊕ Z_b ⊕ …`, or `0`.
    pub fn describe(&self) -> String {
        match self {
            Torsion::Trivial => "0".into(),
            Torsion::ExactOrder(n) => format!("order {n}"),
            Torsion::ContainsOrder(n) => format!("contains order {n}"),
            Torsion::Group(f) => f.iter().map(|x| format!("Z_{x}")).collect::<Vec<_>>().join(" ⊕ "),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TorsionJson {
    kind: String,
    order: serde_json_order::Order,
    #[serde(default)]
    factors: Vec<u64>,
}

/// Orders are JSON numbers when they fit in 64 bits and decimal strings
/// beyond that.
mod serde_json_order {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub enum Order {
        Small(u64),
        Big(String),
    }

    impl From<&BigUint> for Order {
        fn from(n: &BigUint) -> Self {
            match n.to_u64() {
                Some(v) => Order::Small(v),
                None => Order::Big(n.to_string()),
            }
        }
    }

    impl Order {
        pub fn value(&self) -> Option<BigUint> {
            match self {
                Order::Small(v) => Some(BigUint::from(*v)),
                Order::Big(s) => s.parse().ok(),
            }
        }
    }
}

impl Serialize for Torsion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let factors = match self {
            Torsion::Group(f) => f.clone(),
            _ => Vec::new(),
        };
        TorsionJson {
            kind: self.kind().into(),
            order: (&self.order()).into(),
            factors,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Torsion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = TorsionJson::deserialize(d)?;
        let small = || {
            raw.order
                .value()
                .and_then(|v| v.to_u64())
                .ok_or_else(|| D::Error::custom("order out of range"))
        };
        match raw.kind.as_str() {
            "trivial" => Ok(Torsion::Trivial),
            "exact" => Ok(Torsion::ExactOrder(small()?)),
            "contains" => Ok(Torsion::ContainsOrder(small()?)),
            "group" => Ok(Torsion::Group(raw.factors)),
            k => Err(D::Error::custom(format!("unknown torsion kind {k}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohEntry {
    pub degree: u32,
    pub rank: u32,
    pub torsion: Torsion,
}

/// Cohomology groups listed by ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohSummary {
    pub entries: Vec<CohEntry>,
}

impl CohSummary {
    pub fn get(&self, degree: u32) -> Option<&CohEntry> {
        self.entries.iter().find(|e| e.degree == degree)
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.rank).collect()
    }
}

const SEVEN_MANIFOLD_RANKS: [u32; 8] = [1, 0, 2, 0, 0, 2, 0, 1];

fn seven_manifold(h4: Torsion) -> CohSummary {
    let entries = SEVEN_MANIFOLD_RANKS
        .iter()
        .enumerate()
        .map(|(d, &rank)| CohEntry {
            degree: d as u32,
            rank,
            torsion: if d == 4 { h4.clone() } else { Torsion::Trivial },
        })
        .collect();
    CohSummary { entries }
}

/// Integral cohomology of the regular circle bundle with Euler class `c`.
pub fn regular_cohomology(n1: i64, n2: i64, c: &CohClass) -> Result<CohSummary> {
    Ok(seven_manifold(Torsion::ExactOrder(g_reg_order(n1, n2, c)?)))
}

/// Cohomology of the orbifold `(S_n, Δ_m)` in degrees `0..=10`. The
/// pattern is constant for even degrees from eight on.
pub fn orbifold_cohomology(orb: &KSOrbifold) -> CohSummary {
    let (m0, mi) = (orb.m0() as u64, orb.minf() as u64);
    let group = |k: usize| {
        let f: Vec<u64> = std::iter::repeat_n(m0, k)
            .chain(std::iter::repeat_n(mi, k))
            .filter(|&x| x > 1)
            .collect();
        if f.is_empty() {
            Torsion::Trivial
        } else {
            Torsion::Group(f)
        }
    };
    let entries = (0..=10u32)
        .map(|d| {
            let (rank, torsion) = match d {
                0 => (1, Torsion::Trivial),
                2 => (3, Torsion::Trivial),
                4 => (3, group(2)),
                6 => (1, group(3)),
                d if d % 2 == 0 => (0, group(3)),
                _ => (0, Torsion::Trivial),
            };
            CohEntry { degree: d, rank, torsion }
        })
        .collect();
    CohSummary { entries }
}

/// `lcm(m0, minf)`
pub fn mu(orb: &KSOrbifold) -> u64 {
    (orb.m0() as u64).lcm(&(orb.minf() as u64))
}

/// Largest divisor of `n` sharing no prime with `mu`.
pub fn coprime_part(mut n: u64, mu: u64) -> u64 {
    let mut g = n.gcd(&mu);
    while g > 1 {
        n /= g;
        g = n.gcd(&mu);
    }
    n
}

/// Cohomology of the orbifold circle bundle with Euler class `μ·c`.
pub fn orbifold_m7_summary(orb: &KSOrbifold, c: &CohClass) -> Result<CohSummary> {
    let mu = mu(orb);
    let c = c.to_basis(Basis::Y, orb.n1(), orb.n2());
    let scaled = CohClass::y(
        &c.a[0] * int(mu as i64),
        &c.a[1] * int(mu as i64),
        &c.a[2] * int(mu as i64),
    );
    let order = g_reg_order(orb.n1(), orb.n2(), &scaled).map_err(|e| match e {
        Error::NonIntegerClass => Error::NotPrimitive,
        other => other,
    })?;
    let h4 = if mu == 1 {
        Torsion::ExactOrder(order)
    } else {
        Torsion::ContainsOrder(coprime_part(order, mu))
    };
    Ok(seven_manifold(h4))
}
