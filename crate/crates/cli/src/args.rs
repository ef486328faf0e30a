use clap::{Args, Parser, Subcommand};
use ksorb_core::arith::rat::parse_rat;
use ksorb_core::Rat;

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "ksorb", version, about = "Exact KE, soliton and CSC certificates on Koiso–Sakane orbifolds")]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Bisection tolerance.
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = positive_f64)]
    pub tol: f64,
    /// Bisection iteration budget.
    #[arg(long = "max-iter", global = true, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_iter: u32,
    /// Seed for commands that sample random inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// `--n n1,n2 --m m0,minf`
#[derive(Args, Debug, Clone)]
pub struct OrbArgs {
    /// Twist integers `n1,n2`.
    #[arg(long, allow_hyphen_values = true, value_parser = int_pair)]
    pub n: (i64, i64),
    /// Ramification indices `m0,minf`.
    #[arg(long, value_parser = int_pair)]
    pub m: (i64, i64),
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Log-Fano test, first Chern class and Fano index.
    Fano(OrbArgs),
    /// Fano index only.
    Index(OrbArgs),
    /// Kähler–Einstein criterion for one orbifold, or a search over `m`.
    KeCheck {
        #[arg(long, allow_hyphen_values = true, value_parser = int_pair)]
        n: (i64, i64),
        /// Ramification indices; omit together with `--search`.
        #[arg(long, value_parser = int_pair, required_unless_present = "search")]
        m: Option<(i64, i64)>,
        /// Search all `1 <= m0, minf <= BOUND`.
        #[arg(long, conflicts_with = "m")]
        search: Option<i64>,
    },
    /// The KE orbifold attached to `p1,q1,p2,q2`.
    KeFamily {
        #[arg(allow_hyphen_values = true, value_parser = params4)]
        params: (i64, i64, i64, i64),
    },
    /// CSV table of KE family members.
    KeTable {
        /// Built-in parameter list (`appendix`).
        #[arg(long, value_parser = ["appendix"], required_unless_present = "params")]
        builtin: Option<String>,
        /// Parameters `p1,q1,p2,q2`; repeatable.
        #[arg(long, allow_hyphen_values = true, value_parser = params4)]
        params: Vec<(i64, i64, i64, i64)>,
    },
    /// Ricci-soliton constant and profile check.
    Soliton {
        #[command(flatten)]
        orb: OrbArgs,
        /// Interior sample count for the profile.
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
    },
    /// CSC in the class and CSC Sasaki ray certificate.
    Csc {
        #[arg(long, allow_hyphen_values = true, value_parser = int_pair, required_unless_present = "sweep")]
        n: Option<(i64, i64)>,
        #[arg(long, value_parser = int_pair, required_unless_present = "sweep")]
        m: Option<(i64, i64)>,
        /// Class parameters `r1,r2` as rationals.
        #[arg(long, allow_hyphen_values = true, value_parser = rat_pair, required_unless_present = "sweep")]
        r: Option<(Rat, Rat)>,
        /// Certify this many seeded random inputs instead.
        #[arg(long, conflicts_with_all = ["n", "m", "r"])]
        sweep: Option<u32>,
    },
    /// H^4 torsion of the regular circle bundle, or of the orbifold bundle
    /// when `--m` is given.
    Topology {
        #[arg(long, allow_hyphen_values = true, value_parser = int_pair)]
        n: (i64, i64),
        /// Class `c1,c2,c3` in the y-basis (rationals allowed with `--m`).
        #[arg(long, allow_hyphen_values = true, value_parser = rat_triple)]
        c: (Rat, Rat, Rat),
        #[arg(long, value_parser = int_pair)]
        m: Option<(i64, i64)>,
    },
    /// Cohomology groups of the orbifold itself.
    OrbCohomology(OrbArgs),
    /// Join data for the diagonal class `r1 = r2 = r`.
    Join {
        #[command(flatten)]
        orb: OrbArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat_arg)]
        r: Rat,
    },
    /// Yamazaki fiber-join matrix, if one exists.
    Yamazaki {
        #[arg(long, allow_hyphen_values = true, value_parser = int_pair)]
        n: (i64, i64),
        #[arg(long, allow_hyphen_values = true, value_parser = rat_pair)]
        r: (Rat, Rat),
    },
    /// Values of `x` in a range where `x²(x²+4)/(5x²-4)` is an integer.
    LemmaScan {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 100_000)]
        to: u64,
    },
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("must be a positive number".into())
    }
}

fn split_list<const N: usize>(s: &str) -> Result<[&str; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    <[&str; N]>::try_from(parts).map_err(|p| format!("expected {N} comma-separated values, got {}", p.len()))
}

fn int(s: &str) -> Result<i64, String> {
    s.parse().map_err(|_| format!("invalid integer '{s}'"))
}

fn int_pair(s: &str) -> Result<(i64, i64), String> {
    let [a, b] = split_list::<2>(s)?;
    Ok((int(a)?, int(b)?))
}

fn params4(s: &str) -> Result<(i64, i64, i64, i64), String> {
    let [a, b, c, d] = split_list::<4>(s)?;
    Ok((int(a)?, int(b)?, int(c)?, int(d)?))
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s.trim()).map_err(|e| e.to_string())
}

fn rat_pair(s: &str) -> Result<(Rat, Rat), String> {
    let [a, b] = split_list::<2>(s)?;
    Ok((parse_rat_arg(a)?, parse_rat_arg(b)?))
}

fn rat_triple(s: &str) -> Result<(Rat, Rat, Rat), String> {
    let [a, b, c] = split_list::<3>(s)?;
    Ok((parse_rat_arg(a)?, parse_rat_arg(b)?, parse_rat_arg(c)?))
}
