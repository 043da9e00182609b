//! Command-line front end. Every command is a thin shell over library calls.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bernstein::{ber_order, exp_mant_direct, BerOutcome};
use crate::bits::BitString;
use crate::certify::{std_compare_certified, OrderOutcome};
use crate::closure::{closure_of, RuleSet};
use crate::error::{Error, Result};
use crate::matrix::{MatrixMethod, Palette, RelationMatrix, RenderSpec};
use crate::orders::{
    at0_compare, at1_compare, default_methods, fst_compare, hlf, hlf_compare, influence_table, BetaEvaluator,
    BetaParam, KendallReport, RankMethod, TotalDecision, TotalOutcome,
};
use crate::reliability::{average, reliability_poly};
use crate::verify::{run_suite, Suite};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "BECRANK_THREADS";

/// Largest level accepted by `influence`.
pub const MAX_INFLUENCE_LEVEL: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "becrank", version, about = "Exact comparison and ranking of synthetic binary erasure channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare two strings under one order.
    Compare(CompareArgs),
    /// Classify every pair of {0,1}^m and render the incidence matrix.
    Matrix(MatrixArgs),
    /// Rank {0,1}^m under one total order.
    Rank(RankArgs),
    /// Kendall tau distances between rankings of {0,1}^m.
    Kendall(KendallArgs),
    /// Influence of every string up to a level.
    Influence(InfluenceArgs),
    /// Close a rule set and export its edges.
    Closure(ClosureArgs),
    /// Machine-check a named suite, or `all`.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub alpha: String,
    pub gamma: String,
    /// std, ber:N, fst, beta[:SPEC], avg, hlf, at0, at1 or rules[:SETS].
    #[arg(long, default_value = "std")]
    pub method: String,
    /// Rule sets for a bare `rules` method.
    #[arg(long)]
    pub rules: Option<String>,
    /// Base for a bare `beta` method.
    #[arg(long)]
    pub beta: Option<String>,
    /// Closure length for `rules`; defaults to the longer input.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Bits of the printed enclosures for `beta` and `hlf`.
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    #[arg(long)]
    pub enable_rsd: bool,
    /// Print both polynomials and their difference as JSON.
    #[arg(long)]
    pub dump: bool,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    /// std, ber:N, fst or rules:SETS.
    #[arg(long, default_value = "std")]
    pub method: String,
    /// Dim pixels that agree with this method.
    #[arg(long)]
    pub dim_against: Option<String>,
    /// PPM output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Hex colors for greater, less, incomparable and optionally equal.
    #[arg(long)]
    pub palette: Option<String>,
    #[arg(long)]
    pub enable_rsd: bool,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    /// avg, hlf or beta:BASE.
    #[arg(long, default_value = "beta:2^(1/4)")]
    pub method: String,
    /// CSV output path; standard output otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KendallArgs {
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    /// Repeat for each ranking; four methods by default.
    #[arg(long)]
    pub method: Vec<String>,
    /// JSON report path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InfluenceArgs {
    /// Highest level tabulated.
    #[arg(long, default_value_t = MAX_INFLUENCE_LEVEL)]
    pub max_len: usize,
    /// First level of the slope fit.
    #[arg(long, default_value_t = 4)]
    pub fit_from: usize,
    #[arg(long, default_value_t = 64)]
    pub precision: u32,
    /// CSV path for the per-string rows.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[arg(long, default_value = "ABCF")]
    pub rules: String,
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,
    #[arg(long)]
    pub enable_rsd: bool,
    /// CSV path for the edge list.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the derivation of `LHS >= RHS`.
    #[arg(long, num_args = 2, value_names = ["LHS", "RHS"])]
    pub explain: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    pub suite: String,
    #[arg(long)]
    pub max_len: Option<usize>,
}

/// Sizes the global worker pool from [`THREADS_ENV`] when it is set.
pub fn init_threads_from_env() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| Error::Usage(format!("{THREADS_ENV} must be a count, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Usage(format!("thread pool: {e}")))
}

/// Parses `args` (program name first) and runs the command.
///
/// Returns the exit code: 0 on success, 1 on a failed check or runtime
/// error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{}", e.render());
            } else {
                eprint!("{}", e.render());
            }
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Usage(_) | Error::Capacity { .. } | Error::Degree { .. } => 2,
        _ => 1,
    }
}

/// Runs a parsed command; `Ok(false)` means a check failed.
pub fn execute(command: &Command, out: &mut dyn Write) -> Result<bool> {
    match command {
        Command::Compare(a) => compare(a, out).map(|_| true),
        Command::Matrix(a) => matrix(a, out).map(|_| true),
        Command::Rank(a) => rank(a, out).map(|_| true),
        Command::Kendall(a) => kendall(a, out).map(|_| true),
        Command::Influence(a) => influence(a, out).map(|_| true),
        Command::Closure(a) => closure(a, out).map(|_| true),
        Command::Verify(a) => verify(a, out),
    }
}

fn parse_string(s: &str) -> Result<BitString> {
    s.parse()
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

#[derive(Serialize)]
struct Dump<'a> {
    alpha: &'a crate::poly::Poly,
    gamma: &'a crate::poly::Poly,
    difference: &'a crate::poly::Poly,
}

fn total_symbol(o: TotalOutcome) -> &'static str {
    match o {
        TotalOutcome::Greater => ">",
        TotalOutcome::Equivalent => "=",
        TotalOutcome::Less => "<",
    }
}

fn decision_line(d: TotalDecision) -> String {
    if d.at_cap {
        format!("{:?} (undecided at the precision cap)", d.outcome)
    } else {
        format!("{:?}", d.outcome)
    }
}

fn compare(a: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    let alpha = parse_string(&a.alpha)?;
    let gamma = parse_string(&a.gamma)?;
    let (name, spec) = match a.method.split_once(':') {
        Some((n, s)) => (n, Some(s.to_string())),
        None => (a.method.as_str(), None),
    };
    match name {
        "std" => {
            let (outcome, cert) = std_compare_certified(&alpha, &gamma)?;
            writeln!(out, "{outcome:?}")?;
            if let Some(cert) = cert {
                writeln!(out, "certificate: {}", cert.to_json())?;
            }
        }
        "ber" => {
            let spec = spec.ok_or_else(|| Error::Usage("ber needs a degree, as in ber:256".into()))?;
            let n: usize = spec.parse().map_err(|_| Error::Parse(format!("bad Bernstein degree {spec:?}")))?;
            let outcome = match ber_order(&alpha, &gamma, n)? {
                BerOutcome::Holds => OrderOutcome::Greater,
                BerOutcome::HoldsReversed => OrderOutcome::Less,
                BerOutcome::Equal => OrderOutcome::Equal,
                BerOutcome::Neither => OrderOutcome::Incomparable,
            };
            writeln!(out, "{outcome:?}")?;
        }
        "fst" => writeln!(out, "{:?}", fst_compare(&alpha, &gamma)?)?,
        "avg" => {
            let (x, y) = (average(&alpha)?, average(&gamma)?);
            let o = TotalOutcome::from_ordering(x.cmp(&y));
            writeln!(out, "{o:?} ({x} {} {y})", total_symbol(o))?;
        }
        "hlf" => {
            let d = hlf_compare(&alpha, &gamma);
            let digits = (a.precision as usize * 3 / 10).max(1);
            writeln!(out, "{}", decision_line(d))?;
            writeln!(out, "halfway {alpha}: {}", hlf(&alpha, a.precision).to_decimal(digits))?;
            writeln!(out, "halfway {gamma}: {}", hlf(&gamma, a.precision).to_decimal(digits))?;
        }
        "beta" => {
            let base = spec.or_else(|| a.beta.clone()).unwrap_or_else(|| "2^(1/4)".into());
            let eval = BetaEvaluator::new(base.parse::<BetaParam>()?);
            let d = eval.compare(&alpha, &gamma);
            let digits = (a.precision as usize * 3 / 10).max(1);
            writeln!(out, "{}", decision_line(d))?;
            writeln!(out, "beta {}: {alpha} = {}", eval.param(), eval.value(&alpha, a.precision).to_decimal(digits))?;
            writeln!(out, "beta {}: {gamma} = {}", eval.param(), eval.value(&gamma, a.precision).to_decimal(digits))?;
        }
        "at0" | "at1" => {
            let o = if name == "at0" { at0_compare(&alpha, &gamma)? } else { at1_compare(&alpha, &gamma)? };
            writeln!(out, "{o:?}")?;
        }
        "rules" => {
            let sets = spec.or_else(|| a.rules.clone()).ok_or_else(|| Error::Usage("rules needs a rule set".into()))?;
            let rules: RuleSet = sets.parse()?;
            let len = a.max_len.unwrap_or(alpha.len().max(gamma.len()));
            let closed = closure_of(&rules, len, a.enable_rsd)?;
            let outcome = closed.classify(&alpha, &gamma);
            writeln!(out, "{outcome:?}")?;
            let chain = match outcome {
                OrderOutcome::Greater | OrderOutcome::Equivalent => closed.explain(&alpha, &gamma),
                OrderOutcome::Less => closed.explain(&gamma, &alpha),
                _ => None,
            };
            for step in chain.into_iter().flatten() {
                writeln!(out, "  {step}")?;
            }
        }
        other => return Err(Error::Parse(format!("unknown comparison method {other:?}"))),
    }
    if a.dump {
        let (p, q) = (reliability_poly(&alpha)?, reliability_poly(&gamma)?);
        let difference = &p - &q;
        writeln!(out, "{}", serde_json::to_string(&Dump { alpha: &p, gamma: &q, difference: &difference })?)?;
        if !difference.is_zero() {
            writeln!(out, "leading behaviour at 0: {}", serde_json::to_string(&exp_mant_direct(&difference)?)?)?;
        }
    }
    Ok(())
}

fn matrix(a: &MatrixArgs, out: &mut dyn Write) -> Result<()> {
    let method = MatrixMethod::parse(&a.method, a.enable_rsd)?;
    let reference = match &a.dim_against {
        Some(s) => Some(RelationMatrix::build(a.m, &MatrixMethod::parse(s, a.enable_rsd)?)?),
        None => None,
    };
    let mut spec = RenderSpec::default();
    if let Some(p) = &a.palette {
        spec.palette = p.parse::<Palette>()?;
    }
    let built = RelationMatrix::build(a.m, &method)?;
    if let Some(path) = &a.out {
        let mut w = create(path)?;
        w.write_all(&spec.render(&built, reference.as_ref())?)?;
        w.flush()?;
    }
    write!(out, "{}", built.census(reference.as_ref())?)?;
    Ok(())
}

fn rank(a: &RankArgs, out: &mut dyn Write) -> Result<()> {
    let method: RankMethod = a.method.parse()?;
    let ranking = crate::orders::rank_universe(a.m, &method)?;
    match &a.out {
        Some(path) => {
            ranking.write_csv(create(path)?)?;
            writeln!(out, "ranked {} strings by {}", ranking.len(), ranking.method)?;
        }
        None => ranking.write_csv(&mut *out)?,
    }
    if ranking.capped_ties > 0 {
        writeln!(out, "{} neighbouring pairs tied at the precision cap", ranking.capped_ties)?;
    }
    Ok(())
}

fn kendall(a: &KendallArgs, out: &mut dyn Write) -> Result<()> {
    let methods = if a.method.is_empty() {
        default_methods()
    } else {
        a.method.iter().map(|s| s.parse()).collect::<Result<Vec<RankMethod>>>()?
    };
    let report = KendallReport::build(a.m, &methods)?;
    if let Some(path) = &a.out {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &report)?;
        w.flush()?;
    }
    writeln!(out, "{report}")?;
    Ok(())
}

#[derive(Serialize)]
struct InfluenceCsvRow<'a> {
    level: usize,
    string: &'a BitString,
    influence: &'a str,
}

fn influence(a: &InfluenceArgs, out: &mut dyn Write) -> Result<()> {
    if a.max_len > MAX_INFLUENCE_LEVEL {
        return Err(Error::Usage(format!("influence levels stop at {MAX_INFLUENCE_LEVEL}")));
    }
    let table = influence_table(a.max_len, a.fit_from, a.precision);
    if let Some(path) = &a.out {
        let mut w = csv::Writer::from_writer(create(path)?);
        for r in &table.rows {
            w.serialize(InfluenceCsvRow { level: r.level, string: &r.string, influence: &r.influence })?;
        }
        w.flush()?;
    }
    for m in &table.means {
        writeln!(out, "level {:>2}: mean {:.9} log2 {:.6}", m.level, m.mean, m.log2_mean)?;
    }
    writeln!(out, "slope over levels {}..={}: {:.6}", table.fit_levels.0, table.fit_levels.1, table.slope)?;
    Ok(())
}

fn closure(a: &ClosureArgs, out: &mut dyn Write) -> Result<()> {
    let rules: RuleSet = a.rules.parse()?;
    let closed = closure_of(&rules, a.max_len, a.enable_rsd)?;
    if let Some(path) = &a.out {
        closed.write_csv(create(path)?)?;
    }
    writeln!(out, "{} edges over strings of length at most {}", closed.edge_count(), closed.max_len())?;
    if let Some(pair) = &a.explain {
        let (lhs, rhs) = (parse_string(&pair[0])?, parse_string(&pair[1])?);
        match closed.explain(&lhs, &rhs) {
            Some(steps) => {
                for step in steps {
                    writeln!(out, "  {step}")?;
                }
            }
            None => writeln!(out, "{lhs} >= {rhs} is not derived")?,
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let suites: Vec<Suite> = if a.suite == "all" { Suite::ALL.to_vec() } else { vec![a.suite.parse()?] };
    let mut passed = true;
    for suite in suites {
        let report = run_suite(suite, a.max_len)?;
        writeln!(out, "{report}")?;
        passed &= report.passed();
    }
    Ok(passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("becrank").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn avg_reports_exact_fractions() {
        let (code, text) = run_str(&["compare", "1", "1", "--method", "avg"]);
        assert_eq!(code, 0);
        assert_eq!(text.trim(), "Equivalent (2/3 = 2/3)");
    }

    #[test]
    fn bad_input_is_a_usage_error() {
        assert_eq!(run_str(&["compare", "012", "1"]).0, 2);
        assert_eq!(run_str(&["compare", "0", "1", "--method", "nope"]).0, 2);
        assert_eq!(run_str(&["verify", "no-such-suite"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, text) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(text.contains("compare"));
    }
}
