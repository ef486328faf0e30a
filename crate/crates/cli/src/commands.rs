use std::fmt::Write as _;

use ksorb_core::arith::rat::{format_rat, rat, to_f64};
use ksorb_core::csc::certify_csc_ray;
use ksorb_core::joins::{join_identify, lemma_scan, yamazaki_feasible};
use ksorb_core::ke::{
    appendix_params, ke_condition, ke_family, ke_polynomial, ke_search, ke_table_csv, ke_table_row,
    KE_TABLE_HEADER,
};
use ksorb_core::orbifold::{c1_orb, convert_basis, fano_index, is_log_fano};
use ksorb_core::sample::random_orb_and_r;
use ksorb_core::soliton::soliton_constant_with_samples;
use ksorb_core::topology::{
    d2_matrix, g_reg_order, orbifold_cohomology, orbifold_m7_summary, regular_cohomology, mu,
};
use ksorb_core::{
    AdmissiblePair, CohClass, CohSummary, Error, KEFamilyParams, KSOrbifold, RayClass, Result,
    RootCertificate, SolitonConstant, Torsion,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{CliConfig, Command, OrbArgs};
use crate::output::Output;

fn orbifold(a: &OrbArgs) -> Result<KSOrbifold> {
    KSOrbifold::new(a.n.0, a.n.1, a.m.0, a.m.1)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("core types serialize")
}

fn class_tuple(c: &CohClass) -> String {
    let parts: Vec<String> = c.a.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

pub fn run(cmd: &Command, cfg: &CliConfig) -> Result<Output> {
    match cmd {
        Command::Fano(a) => fano(&orbifold(a)?),
        Command::Index(a) => {
            let orb = orbifold(a)?;
            let index = fano_index(&orb)?;
            Ok(Output::new(format!("index={index}"), json!({ "orbifold": orb, "index": index })))
        }
        Command::KeCheck { n, m, search } => match (m, search) {
            (Some(m), _) => ke_check(&KSOrbifold::new(n.0, n.1, m.0, m.1)?),
            (None, Some(bound)) => ke_search_report(*n, *bound),
            (None, None) => Err(Error::InvalidParams("give --m or --search".into())),
        },
        Command::KeFamily { params } => {
            let p = KEFamilyParams::new(params.0, params.1, params.2, params.3)?;
            ke_family_report(&p)
        }
        Command::KeTable { builtin, params } => {
            let list = match builtin.as_deref() {
                Some("appendix") => appendix_params(),
                Some(other) => return Err(Error::InvalidParams(format!("unknown builtin {other}"))),
                None => params
                    .iter()
                    .map(|&(a, b, c, d)| KEFamilyParams::new(a, b, c, d))
                    .collect::<Result<_>>()?,
            };
            ke_table(&list)
        }
        Command::Soliton { orb, samples } => soliton(&orbifold(orb)?, cfg, *samples as usize),
        Command::Csc { n, m, r, sweep } => match (n, m, r, sweep) {
            (_, _, _, Some(count)) => csc_sweep(*count, cfg.seed),
            (Some(n), Some(m), Some(r), None) => {
                let orb = KSOrbifold::new(n.0, n.1, m.0, m.1)?;
                let pair = AdmissiblePair::for_orbifold(&orb, r.0.clone(), r.1.clone())?;
                csc(&orb, &pair)
            }
            _ => Err(Error::InvalidParams("give --n, --m and --r, or --sweep".into())),
        },
        Command::Topology { n, c, m } => {
            let class = CohClass::y(c.0.clone(), c.1.clone(), c.2.clone());
            match m {
                None => topology_regular(n.0, n.1, &class),
                Some(m) => topology_orbifold(&KSOrbifold::new(n.0, n.1, m.0, m.1)?, &class),
            }
        }
        Command::OrbCohomology(a) => {
            let orb = orbifold(a)?;
            let s = orbifold_cohomology(&orb);
            Ok(Output::new(render_summary(&s), json!({ "orbifold": orb, "cohomology": s })))
        }
        Command::Join { orb, r } => {
            let o = orbifold(orb)?;
            let j = join_identify(&o, r)?;
            let human = format!(
                "w=({},{}), l=({},{}), s={}, {}, multiplier={}, h4_order={}",
                j.w[0],
                j.w[1],
                j.l[0],
                j.l[1],
                j.s_frak,
                if j.smooth { "smooth" } else { "not smooth" },
                j.multiplier,
                j.h4_order
            );
            Ok(Output::new(human, to_json(&j)))
        }
        Command::Yamazaki { n, r } => {
            let pair = AdmissiblePair::new(r.0.clone(), r.1.clone())?;
            let k = yamazaki_feasible(n.0, n.1, &pair);
            let human = match k {
                Some(k) => format!("K = [[{}, {}], [{}, {}]]", k[0][0], k[0][1], k[1][0], k[1][1]),
                None => "no positive integer matrix K".into(),
            };
            Ok(Output::new(human, json!({ "feasible": k.is_some(), "k": k })))
        }
        Command::LemmaScan { from, to } => {
            if from > to {
                return Err(Error::InvalidParams("--from exceeds --to".into()));
            }
            let hits = lemma_scan(*from, *to);
            let human = if hits.is_empty() {
                format!("x²(x²+4)/(5x²-4) is not an integer for any x in [{from}, {to}]")
            } else {
                let list: Vec<String> = hits.iter().map(u64::to_string).collect();
                format!("integer for x in {{{}}} within [{from}, {to}]", list.join(", "))
            };
            Ok(Output::new(human, json!({ "from": from, "to": to, "integral_at": hits })))
        }
    }
}

fn fano(orb: &KSOrbifold) -> Result<Output> {
    let log_fano = is_log_fano(orb);
    let c1y = c1_orb(orb);
    let c1x = convert_basis(&c1y, orb.n1(), orb.n2());
    let index = fano_index(orb).ok();
    let mut human = format!(
        "orbifold {orb}\nlog_fano={log_fano}\nc1_orb y-basis {}\nc1_orb x-basis {}",
        class_tuple(&c1y),
        class_tuple(&c1x)
    );
    if let Some(i) = index {
        write!(human, "\nindex={i}").unwrap();
    }
    Ok(Output::new(
        human,
        json!({
            "orbifold": orb,
            "log_fano": log_fano,
            "c1_orb_y": c1y,
            "c1_orb_x": c1x,
            "index": index,
        }),
    ))
}

fn ke_check(orb: &KSOrbifold) -> Result<Output> {
    let ke = ke_condition(orb);
    let poly = ke_polynomial(orb).to_string();
    let human = format!(
        "orbifold {orb}\nlog_fano={}\nke={ke}\nke_polynomial={poly}",
        is_log_fano(orb)
    );
    Ok(Output::new(
        human,
        json!({ "orbifold": orb, "log_fano": is_log_fano(orb), "ke": ke, "ke_polynomial": poly }),
    ))
}

fn ke_search_report(n: (i64, i64), bound: i64) -> Result<Output> {
    if bound < 1 {
        return Err(Error::InvalidParams("--search bound must be positive".into()));
    }
    let hits = ke_search(n.0, n.1, bound)?;
    let human = if hits.is_empty() {
        format!("no KE orbifold with n = ({}, {}) and m0, minf <= {bound}", n.0, n.1)
    } else {
        let list: Vec<String> = hits.iter().map(|(a, b)| format!("({a}, {b})")).collect();
        format!("KE for n = ({}, {}) at (m0, minf) in {}", n.0, n.1, list.join(", "))
    };
    let mut csv = String::from("m0,minf\n");
    for (a, b) in &hits {
        writeln!(csv, "{a},{b}").unwrap();
    }
    Ok(Output::new(human, json!({ "n": [n.0, n.1], "bound": bound, "solutions": hits })).with_csv(csv))
}

fn ke_family_report(p: &KEFamilyParams) -> Result<Output> {
    let (orb, r) = ke_family(p)?;
    let row = ke_table_row(p)?;
    let human = format!(
        "orbifold {orb}\nr = ({}, {})\nm={} v0={} vinf={} index={}",
        format_rat(&r.r1),
        format_rat(&r.r2),
        row.m,
        row.v0,
        row.vinf,
        row.index
    );
    let csv = format!("{KE_TABLE_HEADER}\n{}\n", row.csv_line());
    Ok(Output::new(human, json!({ "orbifold": orb, "r": r, "m": row.m, "v0": row.v0, "vinf": row.vinf, "index": row.index }))
        .with_csv(csv))
}

fn ke_table(params: &[KEFamilyParams]) -> Result<Output> {
    let csv = ke_table_csv(params)?;
    let rows: Vec<Value> = params
        .iter()
        .map(|p| ke_table_row(p).map(|r| to_json(&r)))
        .collect::<Result<_>>()?;
    Ok(Output::new(csv.clone(), Value::Array(rows)).with_csv(csv))
}

fn soliton(orb: &KSOrbifold, cfg: &CliConfig, samples: usize) -> Result<Output> {
    let res = soliton_constant_with_samples(orb, cfg.tol, cfg.max_iter as usize, samples)?;
    let c_line = match res.c {
        SolitonConstant::ExactZero => "c = 0 (Kähler–Einstein)".to_string(),
        SolitonConstant::Bracketed { lo, hi } => {
            let side = if hi < 0.0 { "c < 0" } else if lo > 0.0 { "c > 0" } else { "c near 0" };
            format!("c in [{lo:.15e}, {hi:.15e}] ({side})")
        }
    };
    let human = format!(
        "orbifold {orb}\nlambda={}\n{c_line}\nprofile_ok={} (max endpoint residual {:.3e})",
        format_rat(&res.lambda),
        res.profile_ok,
        res.residuals.max()
    );
    let mut csv = String::from("z,F\n");
    for (z, f) in &res.sample_profile {
        writeln!(csv, "{z},{f}").unwrap();
    }
    Ok(Output::new(human, to_json(&res)).with_csv(csv))
}

fn describe_certificate(c: &RootCertificate) -> String {
    let mut lines = vec![format!("f = {}", format_rat(&c.f))];
    if c.in_class_csc {
        lines.push("CSC in class".into());
    }
    for root in &c.roots {
        let kind = match root.class {
            RayClass::QuasiRegular => "quasi-regular",
            RayClass::Irregular => "irregular",
        };
        let at = match &root.interval.exact_root {
            Some(b) => format!("b ∈ [{0}, {0}]", format_rat(b)),
            None => format!(
                "b ∈ [{:.17}, {:.17}]",
                to_f64(&root.interval.lo),
                to_f64(&root.interval.hi)
            ),
        };
        lines.push(format!("CSC ray at {at} ({kind})"));
    }
    lines.join("\n")
}

fn csc(orb: &KSOrbifold, r: &AdmissiblePair) -> Result<Output> {
    let cert = certify_csc_ray(orb, r)?;
    let mut csv = String::from("lo,hi,exact,class\n");
    for root in &cert.roots {
        let exact = root.interval.exact_root.as_ref().map(format_rat).unwrap_or_default();
        let class = if root.interval.is_rational { "quasi-regular" } else { "irregular" };
        writeln!(
            csv,
            "{},{},{exact},{class}",
            format_rat(&root.interval.lo),
            format_rat(&root.interval.hi)
        )
        .unwrap();
    }
    Ok(Output::new(describe_certificate(&cert), to_json(&cert)).with_csv(csv))
}

fn csc_sweep(count: u32, seed: u64) -> Result<Output> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut in_class, mut with_roots, mut quasi_regular) = (0u32, 0u32, 0u32);
    for _ in 0..count {
        let (orb, r) = random_orb_and_r(&mut rng);
        let cert = certify_csc_ray(&orb, &r).map_err(|e| match e {
            Error::NoRootFound => Error::InternalInconsistency(format!(
                "no CSC ray for {orb} with r = ({}, {})",
                format_rat(&r.r1),
                format_rat(&r.r2)
            )),
            other => other,
        })?;
        in_class += u32::from(cert.in_class_csc);
        with_roots += u32::from(!cert.roots.is_empty());
        quasi_regular += u32::from(cert.roots.iter().any(|c| c.class == RayClass::QuasiRegular));
    }
    let human = format!(
        "certified {count} random inputs (seed {seed}): {in_class} CSC in class, {with_roots} with CSC rays, {quasi_regular} with a quasi-regular ray"
    );
    Ok(Output::new(
        human,
        json!({
            "seed": seed,
            "samples": count,
            "in_class_csc": in_class,
            "with_roots": with_roots,
            "quasi_regular": quasi_regular,
        }),
    ))
}

fn render_summary(s: &CohSummary) -> String {
    s.entries
        .iter()
        .map(|e| {
            let free = match e.rank {
                0 => None,
                1 => Some("Z".to_string()),
                r => Some(format!("Z^{r}")),
            };
            let tors = match &e.torsion {
                Torsion::Trivial => None,
                t => Some(t.describe()),
            };
            let body = match (free, tors) {
                (None, None) => "0".to_string(),
                (Some(f), None) => f,
                (None, Some(t)) => t,
                (Some(f), Some(t)) => format!("{f} ⊕ {t}"),
            };
            format!("H^{} = {body}", e.degree)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn topology_regular(n1: i64, n2: i64, c: &CohClass) -> Result<Output> {
    let order = g_reg_order(n1, n2, c)?;
    let matrix = d2_matrix(n1, n2, c)?;
    let summary = regular_cohomology(n1, n2, c)?;
    let human = format!("|G_reg| = {order}\n{}", render_summary(&summary));
    Ok(Output::new(
        human,
        json!({ "n": [n1, n2], "c": c, "g_reg_order": order, "d2_matrix": matrix, "cohomology": summary }),
    ))
}

fn topology_orbifold(orb: &KSOrbifold, c: &CohClass) -> Result<Output> {
    let summary = orbifold_m7_summary(orb, c)?;
    let mu = mu(orb);
    let h4 = &summary.get(4).expect("degree four present").torsion;
    let human = format!("mu = {mu}\nH^4 torsion: {}\n{}", h4.describe(), render_summary(&summary));
    let scale = rat(mu as i64, 1);
    let scaled = CohClass::y(&c.a[0] * &scale, &c.a[1] * &scale, &c.a[2] * &scale);
    Ok(Output::new(
        human,
        json!({ "orbifold": orb, "mu": mu, "euler_class": scaled, "cohomology": summary }),
    ))
}
