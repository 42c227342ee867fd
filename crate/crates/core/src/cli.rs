//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{catalog, lemmas};
use crate::partitions::{
    brute_force, inequality_grid, partition_table, tail_cross_check, InequalityTheorem, PartitionFamily,
    BRUTE_FORCE_BOUND,
};
use crate::qkit::Monomial;
use crate::report::{Status, VerificationReport};
use crate::series::HalfExp;
use crate::suite::{run_suite, SuiteConfig, SuiteSection};
use crate::truncated;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hecke", version, about = "Exact verification of Hecke-type q-series identities")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    /// Report wall-clock time per check (JSON otherwise reports 0).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product = sum identities and their equivalence classes.
    Verify(VerifyArgs),
    /// Truncated theorems, their tails and stabilization.
    Truncated(TruncatedArgs),
    /// Finite lemmas on a grid of monomial parameter values.
    Lemmas(LemmasArgs),
    /// Partition-pair tables.
    Partitions(PartitionsArgs),
    /// Alternating partition sums of the inequality theorems.
    Inequality(InequalityArgs),
    /// The full battery with a summary matrix.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity id, `all`, `class-A`..`class-D`, or `classes`.
    #[arg(long, default_value = "all")]
    pub identity: String,
    /// Order in whole powers of q.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(i64).range(1..))]
    pub order: i64,
    /// Monomial for z-dependent identities, e.g. `-q`, `q^(1/2)`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
}

#[derive(Debug, Args)]
pub struct TruncatedArgs {
    /// Theorem id or `all`.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    /// Index range `a..b` (inclusive) or a single value.
    #[arg(long, default_value = "0..6", value_parser = parse_range)]
    pub m: RangeInclusive<i64>,
    #[arg(long, default_value_t = 150, value_parser = clap::value_parser!(i64).range(1..))]
    pub order: i64,
    /// Check that every tail coefficient is nonnegative instead.
    #[arg(long)]
    pub tails: bool,
    /// Check convergence of the left side to the full identity instead.
    #[arg(long, conflicts_with = "tails")]
    pub stabilization: bool,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    /// Lemma id or `all`.
    #[arg(long, default_value = "all")]
    pub lemma: String,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(0..))]
    pub n_max: i64,
    /// Seeded random points added to each grid.
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PartitionsArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: PartitionFamily,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(0..))]
    pub max: i64,
    /// Compare against explicit enumeration (n <= 30).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct InequalityArgs {
    /// `tt1`, `tt2`, `tt3` or `all`.
    #[arg(long, default_value = "all")]
    pub theorem: String,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(0..))]
    pub m_max: i64,
    #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(i64).range(0..))]
    pub n_max: i64,
    /// Compare each alternating sum with the truncated theorem's expansion.
    #[arg(long)]
    pub cross_check: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if a < 0 || b < a {
        return Err(format!("range {s:?} must satisfy 0 <= a <= b"));
    }
    Ok(a..=b)
}

fn parse_family(s: &str) -> std::result::Result<PartitionFamily, String> {
    s.parse().map_err(|_| format!("unknown family {s:?} (expected ppe, pp or pepod)"))
}

/// Text and exit code of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                eprint!("{text}");
                return Outcome { stdout: String::new(), code };
            }
            return Outcome { stdout: text, code };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::UnknownId(_) | Error::InvalidArgument(_) | Error::OracleBound { .. } => EXIT_USAGE,
                _ => EXIT_FAIL,
            };
            Outcome { stdout: String::new(), code }
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify(a) => reports_outcome(cmd_verify(a)?, cli),
        Command::Truncated(a) => reports_outcome(cmd_truncated(a)?, cli),
        Command::Lemmas(a) => reports_outcome(cmd_lemmas(a)?, cli),
        Command::Partitions(a) => cmd_partitions(a, cli.output),
        Command::Inequality(a) => cmd_inequality(a, cli),
        Command::Suite(a) => cmd_suite(a, cli),
    }
}

fn q(k: i64) -> HalfExp {
    HalfExp::from_q(k)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Vec<VerificationReport>> {
    let order = q(a.order);
    let z = a.z.as_deref().map(str::parse::<Monomial>).transpose()?;
    let id = a.identity.as_str();
    if id == "classes" {
        return catalog::CLASS_LABELS.par_iter().map(|&c| catalog::verify_equivalence_class(c, order)).collect();
    }
    if let Some(label) = id.strip_prefix("class-") {
        let mut chars = label.chars();
        return match (chars.next(), chars.next()) {
            (Some(c), None) if catalog::CLASS_LABELS.contains(&c) => Ok(vec![catalog::verify_equivalence_class(c, order)?]),
            _ => Err(Error::UnknownId(id.to_string())),
        };
    }
    let ids = if id == "all" { catalog::identity_ids() } else { vec![catalog::lookup(id)?.id] };
    ids.par_iter().map(|id| catalog::verify_identity_at(id, order, z)).collect()
}

pub fn cmd_truncated(a: &TruncatedArgs) -> Result<Vec<VerificationReport>> {
    let ids = if a.theorem == "all" {
        truncated::truncated_ids()
    } else {
        vec![truncated::lookup_truncated(&a.theorem)?.id]
    };
    let order = q(a.order);
    if a.stabilization {
        return ids.par_iter().map(|id| truncated::stabilization(id, order, 40).map(|x| x.1)).collect();
    }
    let jobs: Vec<(&str, i64)> = ids.iter().flat_map(|&id| a.m.clone().map(move |m| (id, m))).collect();
    jobs.par_iter()
        .map(|&(id, m)| {
            if a.tails {
                truncated::tail_nonnegativity(id, m, order)
            } else {
                truncated::check_truncated(id, m, order)
            }
        })
        .collect()
}

pub fn cmd_lemmas(a: &LemmasArgs) -> Result<Vec<VerificationReport>> {
    let grid = lemmas::LemmaGrid { n_max: a.n_max, random_points: a.points, seed: a.seed };
    let ids = if a.lemma == "all" { lemmas::lemma_ids() } else { vec![lemmas::lookup_lemma(&a.lemma)?.id] };
    let per = ids.par_iter().map(|id| lemmas::verify_lemma_grid(id, &grid)).collect::<Result<Vec<_>>>()?;
    Ok(per.into_iter().flatten().collect())
}

fn exit_code<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> i32 {
    if reports.into_iter().any(|r| r.failed()) {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn summary_line(reports: &[VerificationReport]) -> String {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    format!("{} passed, {} failed, {} skipped", count(Status::Pass), count(Status::Fail), count(Status::Skipped))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn reports_outcome(reports: Vec<VerificationReport>, cli: &Cli) -> Result<Outcome> {
    let code = exit_code(&reports);
    let stdout = match cli.output {
        Output::Json => to_json(&reports.iter().map(|r| r.to_json(cli.timing)).collect::<Vec<_>>()),
        Output::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{}", text_line(r, cli.timing)).unwrap();
            }
            writeln!(s, "{}", summary_line(&reports)).unwrap();
            s
        }
    };
    Ok(Outcome { stdout, code })
}

fn text_line(r: &VerificationReport, timing: bool) -> String {
    if timing {
        format!("{r} ({} ms)", r.elapsed_ms)
    } else {
        r.to_string()
    }
}

#[derive(Serialize)]
struct PartitionRow {
    n: i64,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Option<String>>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<Option<bool>>,
}

pub fn cmd_partitions(a: &PartitionsArgs, output: Output) -> Result<Outcome> {
    let table = partition_table(a.family, a.max)?;
    let rows: Vec<PartitionRow> = table
        .par_iter()
        .enumerate()
        .map(|(n, v)| {
            let n = n as i64;
            let oracle = if a.oracle && n <= BRUTE_FORCE_BOUND { Some(brute_force(a.family, n)?) } else { None };
            Ok(PartitionRow {
                n,
                value: v.to_string(),
                oracle: a.oracle.then(|| oracle.map(|o| o.to_string())),
                matches: a.oracle.then(|| oracle.map(|o| BigInt::from(o) == *v)),
            })
        })
        .collect::<Result<_>>()?;
    let code = if rows.iter().any(|r| r.matches == Some(Some(false))) { EXIT_FAIL } else { EXIT_PASS };
    let stdout = match output {
        Output::Json => to_json(&rows),
        Output::Text => {
            let mut s = String::new();
            if a.oracle {
                writeln!(s, "{:>5} {:>28} {:>12} match", "n", a.family.tag(), "oracle").unwrap();
            } else {
                writeln!(s, "{:>5} {:>28}", "n", a.family.tag()).unwrap();
            }
            for r in &rows {
                match &r.matches {
                    Some(m) => {
                        let o = r.oracle.clone().flatten().unwrap_or_else(|| "-".into());
                        let mark = match m {
                            Some(true) => "yes",
                            Some(false) => "NO",
                            None => "-",
                        };
                        writeln!(s, "{:>5} {:>28} {:>12} {mark}", r.n, r.value, o).unwrap();
                    }
                    None => writeln!(s, "{:>5} {:>28}", r.n, r.value).unwrap(),
                }
            }
            s
        }
    };
    Ok(Outcome { stdout, code })
}

fn theorems(arg: &str) -> Result<Vec<InequalityTheorem>> {
    if arg == "all" {
        Ok(InequalityTheorem::ALL.to_vec())
    } else {
        Ok(vec![arg.parse()?])
    }
}

pub fn cmd_inequality(a: &InequalityArgs, cli: &Cli) -> Result<Outcome> {
    let ths = theorems(&a.theorem)?;
    if a.cross_check {
        let jobs: Vec<(InequalityTheorem, i64)> =
            ths.iter().flat_map(|&t| (0..=a.m_max).map(move |m| (t, m))).collect();
        let reports = jobs.par_iter().map(|&(t, m)| tail_cross_check(t, m, a.n_max)).collect::<Result<Vec<_>>>()?;
        return reports_outcome(reports, cli);
    }
    let rows = ths
        .par_iter()
        .map(|&t| inequality_grid(t, a.m_max, a.n_max))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let code = if rows.iter().all(|r| r.pass) { EXIT_PASS } else { EXIT_FAIL };
    let stdout = match cli.output {
        Output::Json => to_json(&rows),
        Output::Text => {
            let mut s = String::new();
            for r in &rows {
                writeln!(s, "{r}").unwrap();
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            writeln!(s, "{} rows, {} negative", rows.len(), failed).unwrap();
            s
        }
    };
    Ok(Outcome { stdout, code })
}

pub fn cmd_suite(a: &SuiteArgs, cli: &Cli) -> Result<Outcome> {
    let cfg = SuiteConfig { seed: a.seed, ..SuiteConfig::default() };
    let sections = run_suite(&cfg)?;
    let code = exit_code(sections.iter().filter(|s| !s.informational).flat_map(|s| &s.reports));
    let stdout = match cli.output {
        Output::Json => to_json(
            &sections.iter().flat_map(|s| &s.reports).map(|r| r.to_json(cli.timing)).collect::<Vec<_>>(),
        ),
        Output::Text => suite_text(&sections, cli.timing),
    };
    Ok(Outcome { stdout, code })
}

fn suite_text(sections: &[SuiteSection], timing: bool) -> String {
    let mut s = String::new();
    for sec in sections {
        for r in sec.reports.iter().filter(|r| !r.passed()) {
            writeln!(s, "[{}] {}", sec.name, text_line(r, timing)).unwrap();
        }
    }
    writeln!(s).unwrap();
    writeln!(s, "{:<14} {:>6} {:>6} {:>8}  verdict", "section", "pass", "fail", "skipped").unwrap();
    for sec in sections {
        let verdict = match (sec.passed(), sec.informational) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "pass (info)",
            (false, true) => "fail (info)",
        };
        writeln!(
            s,
            "{:<14} {:>6} {:>6} {:>8}  {verdict}",
            sec.name,
            sec.count(Status::Pass),
            sec.count(Status::Fail),
            sec.count(Status::Skipped)
        )
        .unwrap();
    }
    s
}
