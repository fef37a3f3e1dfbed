//! Command-line front end. Exit codes: 0 when everything holds, 1 when a
//! counterexample (or a rejected bijection input) is found, 2 on usage or
//! parse errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::bijection::{forward, forward_bounded, inverse_trace, BijectionError};
use crate::colored_partitions::ColoredPartition;
use crate::identity_lab::{
    build_gl, build_pl, build_rl, sweep, trinomial_rhs, IdentityId, ParamGrid, SweepOptions, SweepReport,
    DEFAULT_MARKER_CAP, DEFAULT_Q_CAP,
};
use crate::qseries::{MarkerSeries, Truncation};
use crate::theorem_checks::{
    check_goellnitz, check_schur, theorem1_table, theorem2_table, theorem3_table, write_csv, CountReport,
    TheoremId,
};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "QSCHUR_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Inclusive integer range, written `a..b` or as a single value `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Range { lo, hi })
    }
}

impl Range {
    fn contains(&self, v: i64) -> bool {
        (self.lo..=self.hi).contains(&v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "qschur", version, about = "Exact checks of double bounded Schur-type identities")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep an identity over a parameter grid.
    Verify(VerifyArgs),
    /// Compare both sides of a partition theorem.
    Count(CountArgs),
    /// Trace the vector-partition correspondence.
    Bijection {
        #[command(subcommand)]
        direction: BijectionCommand,
    },
    /// Print a generating function.
    Gf(GfArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// One of eq21, eq32, eq44, eq46, eq48, eq53, eq516, eq63, eq63lm,
    /// rec55, rec58, rec59, rec512, eq26, eq11, eq61.
    identity: String,
    #[arg(long = "L", allow_hyphen_values = true)]
    l: Option<Range>,
    #[arg(long = "M", allow_hyphen_values = true)]
    m: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    i: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    qmax: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    amax: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    bmax: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    cmax: Option<Range>,
    /// Add 1 to every right-hand side.
    #[arg(long)]
    perturb: bool,
    /// Use s = alpha + beta + 2 delta + epsilon + phi in the six-fold sums.
    #[arg(long)]
    literal_s: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CountArgs {
    /// One of S, T1, T2, T3, G.
    theorem: String,
    #[arg(long, allow_hyphen_values = true)]
    n: Range,
    #[arg(long, allow_hyphen_values = true)]
    i: Option<Range>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<Range>,
    #[arg(long = "L", allow_hyphen_values = true)]
    l: Option<Range>,
    #[arg(long = "M", allow_hyphen_values = true)]
    m: Option<Range>,
    /// Theorem 2 with L > M, bucketing at nu(M).
    #[arg(long)]
    mirrored: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Subcommand)]
enum BijectionCommand {
    /// `"<pi1> / <pi2>"`, e.g. `"a3+a1 / b2"`; `∅` is the empty partition.
    Forward {
        input: String,
        /// With --M, also certify the bound profile of the image.
        #[arg(long = "L", allow_hyphen_values = true)]
        l: Option<i64>,
        #[arg(long = "M", allow_hyphen_values = true)]
        m: Option<i64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A Type-1 partition such as `ab4+b2+a1`.
    Inverse {
        input: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct GfArgs {
    /// One of GL, RL, PL, trinomialRHS.
    kind: String,
    #[arg(long = "L", allow_hyphen_values = true)]
    l: i64,
    #[arg(long, default_value_t = DEFAULT_MARKER_CAP)]
    amax: i64,
    #[arg(long, default_value_t = DEFAULT_MARKER_CAP)]
    bmax: i64,
    #[arg(long, default_value_t = DEFAULT_Q_CAP)]
    qmax: i64,
    #[command(flatten)]
    output: OutputArgs,
}

/// Rendered output and exit status of a successful parse.
struct Outcome {
    text: String,
    code: i32,
    /// Message for standard error when something fails.
    alert: Option<String>,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn fmt_params(p: &BTreeMap<String, i64>, order: &[&str]) -> String {
    let mut keys: Vec<&str> = order.iter().copied().filter(|k| p.contains_key(*k)).collect();
    keys.extend(p.keys().map(String::as_str).filter(|k| !order.contains(k)));
    keys.iter().map(|k| format!("{k}={}", p[*k])).collect::<Vec<_>>().join(" ")
}

fn verify(args: VerifyArgs) -> Result<(Outcome, OutputArgs), CliError> {
    let id: IdentityId = args.identity.parse().map_err(|e: crate::identity_lab::LabError| usage(e.to_string()))?;
    let given: Vec<(&str, Option<Range>)> = vec![
        ("L", args.l),
        ("M", args.m),
        ("i", args.i),
        ("j", args.j),
        ("k", args.k),
        ("qmax", args.qmax),
        ("amax", args.amax),
        ("bmax", args.bmax),
        ("cmax", args.cmax),
    ];
    let mut ranges = BTreeMap::new();
    for (name, range) in given {
        let Some(r) = range else { continue };
        if !id.parameters().contains(&name) {
            return Err(usage(format!("{id} takes no --{name}")));
        }
        if r.lo < 0 && !matches!(id, IdentityId::Eq21 | IdentityId::Eq63) {
            return Err(usage(format!("{id} does not admit negative --{name}")));
        }
        ranges.insert(name.to_string(), (r.lo, r.hi));
    }
    let grid = ParamGrid::for_identity(id, &ranges);
    let opts = SweepOptions { perturb: args.perturb, literal_s: args.literal_s };
    let report = sweep(id, &grid, opts).map_err(|e| usage(e.to_string()))?;
    let order = id.parameters();
    let alert = report.failures.first().map(|v| {
        let mut msg = format!("FAIL {id} {}", fmt_params(&v.params, order));
        if let Some(w) = &v.witness {
            let _ = write!(msg, ": first difference at {w}");
        }
        for c in v.checks.iter().filter(|c| !c.holds) {
            let _ = write!(msg, "; sub-check {:?} fails", c.name);
            if let Some(w) = &c.witness {
                let _ = write!(msg, " at {w}");
            }
        }
        if let Some(note) = &v.note {
            let _ = write!(msg, " ({note})");
        }
        msg
    });
    let text = match args.output.format {
        Format::Json => json(&report),
        Format::Csv => verify_csv(&report, order)?,
        Format::Text => verify_summary(&report, order),
    };
    let code = if report.all_hold() { 0 } else { 1 };
    Ok((Outcome { text, code, alert }, args.output))
}

fn verify_summary(r: &SweepReport, order: &[&str]) -> String {
    let ranges: Vec<String> = order
        .iter()
        .map(|k| {
            let (lo, hi) = r.ranges[*k];
            format!("{k}={lo}..{hi}")
        })
        .collect();
    format!(
        "{} [{}]: {} cells, {} evaluated, {} skipped, {} failures\n",
        r.identity,
        ranges.join(" "),
        r.cells,
        r.evaluated,
        r.skipped,
        r.failures.len()
    )
}

fn verify_csv(r: &SweepReport, order: &[&str]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let first = r.failures.first();
    w.write_record(["identity", "cells", "evaluated", "skipped", "failures", "first_failure", "witness"])
        .map_err(io::Error::from)?;
    w.write_record([
        r.identity.to_string(),
        r.cells.to_string(),
        r.evaluated.to_string(),
        r.skipped.to_string(),
        r.failures.len().to_string(),
        first.map_or(String::new(), |v| fmt_params(&v.params, order)),
        first.and_then(|v| v.witness.as_ref()).map_or(String::new(), ToString::to_string),
    ])
    .map_err(io::Error::from)?;
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn nonneg(r: Range, name: &str) -> Result<Range, CliError> {
    if r.lo < 0 {
        return Err(usage(format!("--{name} must be nonnegative")));
    }
    Ok(r)
}

const DEFAULT_BOUND_RANGE: Range = Range { lo: 0, hi: 6 };

fn count(args: CountArgs) -> Result<(Outcome, OutputArgs), CliError> {
    let theorem: TheoremId = args.theorem.parse().map_err(|e: crate::theorem_checks::TheoremError| usage(e.to_string()))?;
    let n = nonneg(args.n, "n")?;
    let n_max = n.hi as u64;
    let keep_n = |r: &CountReport| n.contains(r.params["n"]);
    let keep_ij = |r: &CountReport| {
        args.i.is_none_or(|i| i.contains(r.params["i"])) && args.j.is_none_or(|j| j.contains(r.params["j"]))
    };
    let needs_ij = matches!(theorem, TheoremId::T1 | TheoremId::T2 | TheoremId::T3);
    let needs_lm = matches!(theorem, TheoremId::T2 | TheoremId::T3);
    if !needs_ij && (args.i.is_some() || args.j.is_some()) {
        return Err(usage(format!("{theorem} takes no --i/--j")));
    }
    if !needs_lm && (args.l.is_some() || args.m.is_some()) {
        return Err(usage(format!("{theorem} takes no --L/--M")));
    }
    if args.mirrored && theorem != TheoremId::T2 {
        return Err(usage("--mirrored applies to T2 only"));
    }
    let reports: Vec<CountReport> = match theorem {
        TheoremId::S => check_schur(n_max).into_iter().filter(keep_n).collect(),
        TheoremId::G => check_goellnitz(n_max).into_iter().filter(keep_n).collect(),
        TheoremId::T1 => theorem1_table(n_max).into_iter().filter(|r| keep_n(r) && keep_ij(r)).collect(),
        TheoremId::T2 | TheoremId::T3 => {
            let ls = nonneg(args.l.unwrap_or(DEFAULT_BOUND_RANGE), "L")?;
            let ms = nonneg(args.m.unwrap_or(DEFAULT_BOUND_RANGE), "M")?;
            let mut out = Vec::new();
            for l in ls.lo..=ls.hi {
                for m in ms.lo..=ms.hi {
                    let table = if args.mirrored {
                        if l <= m {
                            continue;
                        }
                        theorem2_table(n_max, l, m)
                    } else {
                        if m < l {
                            continue;
                        }
                        if theorem == TheoremId::T2 {
                            theorem2_table(n_max, l, m)
                        } else {
                            theorem3_table(n_max, l, m)
                        }
                    };
                    let table = table.map_err(|e| usage(e.to_string()))?;
                    out.extend(table.into_iter().filter(|r| keep_n(r) && keep_ij(r)));
                }
            }
            out
        }
    };
    let failing: Vec<&CountReport> = reports.iter().filter(|r| !r.fully_holds()).collect();
    let alert = failing.first().map(|r| {
        format!("FAIL {theorem} {}: lhs {} vs rhs {}", fmt_params(&r.params, &["n", "i", "j", "L", "M"]), r.lhs, r.rhs)
    });
    let text = match args.output.format {
        Format::Json => json(&reports),
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&reports, &mut buf).map_err(io::Error::from)?;
            String::from_utf8(buf).expect("csv output is UTF-8")
        }
        Format::Text => {
            let mut t = String::new();
            for r in &reports {
                let mark = if r.fully_holds() { "ok" } else { "FAIL" };
                let _ = writeln!(
                    t,
                    "{} {}: {} = {} {mark}",
                    r.theorem,
                    fmt_params(&r.params, &["n", "i", "j", "L", "M"]),
                    r.lhs,
                    r.rhs
                );
                for f in &r.findings {
                    let _ = writeln!(t, "  finding: {f}");
                }
            }
            let _ = writeln!(t, "{} rows, {} failing", reports.len(), failing.len());
            t
        }
    };
    let code = if failing.is_empty() { 0 } else { 1 };
    Ok((Outcome { text, code, alert }, args.output))
}

fn parse_partition(s: &str) -> Result<ColoredPartition, CliError> {
    s.parse().map_err(|e| usage(format!("cannot parse {s:?}: {e}")))
}

fn bijection(cmd: BijectionCommand) -> Result<(Outcome, OutputArgs), CliError> {
    match cmd {
        BijectionCommand::Forward { input, l, m, output } => {
            let (a, b) = input
                .split_once('/')
                .ok_or_else(|| usage("forward input must look like \"<pi1> / <pi2>\""))?;
            let (pi1, pi2) = (parse_partition(a)?, parse_partition(b)?);
            let result = match (l, m) {
                (Some(l), Some(m)) => forward_bounded(&pi1, &pi2, l, m).map(|b| (b.trace, Some(b.certificate))),
                (None, None) => forward(&pi1, &pi2).map(|t| (t, None)),
                _ => return Err(usage("--L and --M go together")),
            };
            match result {
                Ok((trace, cert)) => {
                    let text = match output.format {
                        Format::Json => json(&serde_json::json!({ "trace": trace, "certificate": cert })),
                        _ => {
                            let mut t = trace.to_string();
                            if let Some(c) = cert {
                                let _ = writeln!(
                                    t,
                                    "\nnu(L)={} nu(M)={}: {} a-parts <= {}, {} b-parts <= {}, {} ab-parts <= {}",
                                    c.nu_l, c.nu_m, c.a_parts, c.a_bound, c.b_parts, c.b_bound, c.k, c.ab_bound
                                );
                            }
                            t
                        }
                    };
                    Ok((Outcome { text, code: 0, alert: None }, output))
                }
                Err(BijectionError::InvalidInput(msg)) => Err(usage(msg)),
                Err(e @ BijectionError::BoundViolation(_)) => {
                    Ok((Outcome { text: String::new(), code: 1, alert: Some(e.to_string()) }, output))
                }
            }
        }
        BijectionCommand::Inverse { input, output } => {
            let pi3 = parse_partition(&input)?;
            match inverse_trace(&pi3) {
                Ok(trace) => {
                    let text = match output.format {
                        Format::Json => json(&trace),
                        _ => trace.to_string(),
                    };
                    Ok((Outcome { text, code: 0, alert: None }, output))
                }
                Err(e) => Ok((Outcome { text: String::new(), code: 1, alert: Some(e.to_string()) }, output)),
            }
        }
    }
}

fn gf(args: GfArgs) -> Result<(Outcome, OutputArgs), CliError> {
    if args.l < 0 {
        return Err(usage("--L must be nonnegative"));
    }
    if args.amax < 0 || args.bmax < 0 || args.qmax < 0 {
        return Err(usage("caps must be nonnegative"));
    }
    let caps = Truncation::new(Some([args.amax as u32, args.bmax as u32, 0]), Some(args.qmax));
    let kind = args.kind.to_ascii_lowercase();
    let series: Result<MarkerSeries, String> = match kind.as_str() {
        "gl" => build_gl(args.l, caps).map_err(|e| e.to_string()),
        "rl" => Ok(build_rl(args.l, caps)),
        "pl" => Ok(build_pl(args.l).truncated(caps)),
        "trinomialrhs" => Ok(trinomial_rhs(args.l).truncated(caps)),
        _ => return Err(usage(format!("unknown generating function {:?}", args.kind))),
    };
    let series = match series {
        Ok(s) => s,
        Err(msg) => return Ok((Outcome { text: String::new(), code: 1, alert: Some(msg) }, args.output)),
    };
    let text = match args.output.format {
        Format::Json => json(&serde_json::json!({ "kind": args.kind, "L": args.l, "series": series })),
        _ => format!("{series}\n"),
    };
    Ok((Outcome { text, code: 0, alert: None }, args.output))
}

/// Sets the global worker count from [`THREADS_ENV`] if present.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {value:?}")))?;
    // a pool that is already built (e.g. in tests) is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let (outcome, output) = match cli.command {
        Command::Verify(a) => verify(a)?,
        Command::Count(a) => count(a)?,
        Command::Bijection { direction } => bijection(direction)?,
        Command::Gf(a) => gf(a)?,
    };
    match &output.out {
        Some(path) => std::fs::write(path, &outcome.text)?,
        None => io::stdout().lock().write_all(outcome.text.as_bytes())?,
    }
    if let Some(alert) = &outcome.alert {
        eprintln!("{alert}");
    }
    Ok(outcome.code)
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
