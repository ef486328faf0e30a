//! Kähler–Einstein existence on the orbifolds: the integer criterion, an
//! independent integral check, and the four-parameter family of solutions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::poly::{integrate_poly, Poly};
use crate::arith::rat::{int, rat, Rat};
use crate::error::{Error, Result};
use crate::orbifold::{fano_index, is_log_fano, AdmissiblePair, KSOrbifold};

/// `(p1, q1, p2, q2)` with `r_i = p_i / q_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KEFamilyParams {
    pub p1: i64,
    pub q1: i64,
    pub p2: i64,
    pub q2: i64,
}

impl KEFamilyParams {
    pub fn new(p1: i64, q1: i64, p2: i64, q2: i64) -> Result<Self> {
        if !(0 < p1 && p1 < q1) {
            return Err(Error::InvalidParams("need 0 < p1 < q1".into()));
        }
        if p2 == 0 || p2.abs() >= q2 {
            return Err(Error::InvalidParams("need 0 < |p2| < q2".into()));
        }
        if p1.gcd(&q1) != 1 || p2.gcd(&q2) != 1 {
            return Err(Error::InvalidParams("p_i / q_i must be in lowest terms".into()));
        }
        Ok(KEFamilyParams { p1, q1, p2, q2 })
    }

    pub fn r(&self) -> AdmissiblePair {
        AdmissiblePair::new(rat(self.p1, self.q1), rat(self.p2, self.q2))
            .expect("validated parameters give an admissible pair")
    }
}

/// The integer polynomial whose vanishing (together with log-Fano) is the
/// KE criterion. Evaluated in `i128` when that cannot overflow.
pub fn ke_polynomial(orb: &KSOrbifold) -> BigInt {
    let (n1, n2, a, b) = (orb.n1(), orb.n2(), orb.m0(), orb.minf());
    let bound = [n1.abs(), n2.abs(), a, b].into_iter().max().unwrap();
    // every monomial has degree 5; 3·24·bound^5 < 2^127 for bound < 2^23
    if bound < 1 << 23 {
        let (n1, n2, a, b) = (n1 as i128, n2 as i128, a as i128, b as i128);
        let (a2, b2) = (a * a, b * b);
        let v = 24 * (a2 * a * b2 - a2 * b2 * b) - 8 * (n1 + n2) * (a2 * a * b - a2 * b2 + a * b2 * b)
            + 3 * n1 * n2 * (a2 * a - a2 * b + a * b2 - b2 * b);
        return BigInt::from(v);
    }
    let (n1, n2, a, b) = (
        BigInt::from(n1),
        BigInt::from(n2),
        BigInt::from(a),
        BigInt::from(b),
    );
    let (a2, b2) = (&a * &a, &b * &b);
    let a3 = &a2 * &a;
    let b3 = &b2 * &b;
    24 * (&a3 * &b2 - &a2 * &b3) - 8 * (&n1 + &n2) * (&a3 * &b - &a2 * &b2 + &a * &b3)
        + 3 * &n1 * &n2 * (&a3 - &a2 * &b + &a * &b2 - &b3)
}

pub fn ke_condition(orb: &KSOrbifold) -> bool {
    is_log_fano(orb) && ke_polynomial(orb).is_zero()
}

/// All `(m0, minf)` in `[1, bound]^2` satisfying the KE criterion for the
/// twist `(n1, n2)`.
pub fn ke_search(n1: i64, n2: i64, bound: i64) -> Result<Vec<(i64, i64)>> {
    let mut hits = Vec::new();
    for m0 in 1..=bound {
        for minf in 1..=bound {
            if ke_condition(&KSOrbifold::new(n1, n2, m0, minf)?) {
                hits.push((m0, minf));
            }
        }
    }
    Ok(hits)
}

/// The Ricci-soliton class: `r_i = (1/m0 + 1/minf) / (4/n_i + 1/m0 - 1/minf)`.
pub fn soliton_r(orb: &KSOrbifold) -> Result<AdmissiblePair> {
    if !is_log_fano(orb) {
        return Err(Error::NotLogFano);
    }
    let two_lambda = rat(1, orb.m0()) + rat(1, orb.minf());
    let shift = rat(1, orb.m0()) - rat(1, orb.minf());
    let r = |n: i64| &two_lambda / (rat(4, n) + &shift);
    AdmissiblePair::for_orbifold(orb, r(orb.n1()), r(orb.n2()))
        .map_err(|e| Error::InternalInconsistency(format!("soliton class not admissible: {e}")))
}

/// `(1 + r1 t)(1 + r2 t)`
pub fn p_c(r: &AdmissiblePair) -> Poly {
    &Poly::linear(int(1), r.r1.clone()) * &Poly::linear(int(1), r.r2.clone())
}

/// Exact vanishing of `∫ ((1/minf - 1/m0) - (1/m0 + 1/minf) t) p_c(t) dt`
/// over `[-1, 1]`.
pub fn ke_verify_integral(orb: &KSOrbifold, r: &AdmissiblePair) -> bool {
    ke_integral(orb, r).is_zero()
}

pub fn ke_integral(orb: &KSOrbifold, r: &AdmissiblePair) -> Rat {
    let (inv0, invi) = (rat(1, orb.m0()), rat(1, orb.minf()));
    let lin = Poly::linear(&invi - &inv0, -(inv0 + invi));
    integrate_poly(&(&lin * &p_c(r)), &int(-1), &int(1))
}

/// The orbifold attached to `(p1, q1, p2, q2)`, reduced by the common gcd
/// of the four entries.
pub fn ke_family(params: &KEFamilyParams) -> Result<(KSOrbifold, AdmissiblePair)> {
    let [p1, q1, p2, q2] = [params.p1, params.q1, params.p2, params.q2].map(BigInt::from);
    let a = 3 * &q1 * &q2 + &p1 * &p2 + &p1 * &q2 + &p2 * &q1;
    let b = 3 * &q1 * &q2 + &p1 * &p2 - &p1 * &q2 - &p2 * &q1;
    let c = 3 * &q1 * &q1 * &q2 + 2 * &p1 * &p2 * &q1 + &p1 * &p1 * &q2;
    let d = 3 * &q1 * &q2 * &q2 + 2 * &p1 * &p2 * &q2 + &p2 * &p2 * &q1;

    let n1: BigInt = 2 * &p1 * &b * &a * &d;
    let n2: BigInt = 2 * &p2 * &b * &a * &c;
    let m0: BigInt = &a * &c * &d;
    let minf: BigInt = &b * &c * &d;
    let k = n1.abs().gcd(&n2.abs()).gcd(&m0).gcd(&minf);

    let conv = |v: &BigInt| -> Result<i64> {
        (v / &k).to_i64().ok_or(Error::Overflow("KE family entry exceeds 64 bits"))
    };
    let orb = KSOrbifold::new(conv(&n1)?, conv(&n2)?, conv(&m0)?, conv(&minf)?)?;
    Ok((orb, params.r()))
}

/// The appendix parameters: `(1, 2, -1, q)` for `q = 15, …, 2`, then
/// `(1, 2, 1, q)` for `q = 2, …, 15`.
pub fn appendix_params() -> Vec<KEFamilyParams> {
    let neg = (2..=15).rev().map(|q| (-1, q));
    let pos = (2..=15).map(|q| (1, q));
    neg.chain(pos)
        .map(|(p2, q2)| KEFamilyParams::new(1, 2, p2, q2).expect("valid appendix parameters"))
        .collect()
}

pub const KE_TABLE_HEADER: &str = "p1,q1,p2,q2,n1,n2,m0,minf,m,v0,vinf,index";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KETableRow {
    pub params: KEFamilyParams,
    pub orb: KSOrbifold,
    pub m: i64,
    pub v0: i64,
    pub vinf: i64,
    pub index: u64,
}

impl KETableRow {
    pub fn csv_line(&self) -> String {
        let p = &self.params;
        let o = &self.orb;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            p.p1, p.q1, p.p2, p.q2,
            o.n1(), o.n2(), o.m0(), o.minf(),
            self.m, self.v0, self.vinf, self.index
        )
    }
}

pub fn ke_table_row(params: &KEFamilyParams) -> Result<KETableRow> {
    let (orb, _) = ke_family(params)?;
    let index = fano_index(&orb)
        .map_err(|_| Error::InternalInconsistency(format!("family member {orb} is not log Fano")))?;
    Ok(KETableRow {
        params: *params,
        orb,
        m: orb.m(),
        v0: orb.v0(),
        vinf: orb.vinf(),
        index,
    })
}

/// Header plus one line per row, LF-terminated.
pub fn ke_table_csv(params: &[KEFamilyParams]) -> Result<String> {
    let mut out = String::from(KE_TABLE_HEADER);
    out.push('\n');
    for p in params {
        out.push_str(&ke_table_row(p)?.csv_line());
        out.push('\n');
    }
    Ok(out)
}
