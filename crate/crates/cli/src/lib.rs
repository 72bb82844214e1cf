//! Command-line front end for `ehrhart-core`.
//!
//! Every subcommand produces a [`CommandResult`]: an ordered set of fields
//! rendered either as `key: value` lines or, with `--json`, as one JSON
//! document. The exit code is determined by the result status.

mod output;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use ehrhart_core::classifier::{BasicViolation, Check};
use ehrhart_core::{
    count_points, delta_from_box, delta_from_counts, ehrhart_polynomial, enumerate_candidates,
    evaluate_ehrhart, evaluate_interior, inequality_report, is_realizable, realize, CandidateDelta,
    DeltaVector, Error, LatticeSimplex, PolytopeFile, Rational, Verdict, DEFAULT_BUDGET,
};
use num_bigint::BigInt;
use serde_json::{json, Number, Value};

pub use output::{CommandResult, Status};

#[derive(Debug, Parser)]
#[command(
    name = "ehrhart",
    version,
    about = "Delta-vectors and Ehrhart polynomials of lattice simplices"
)]
pub struct Cli {
    /// Emit one JSON document instead of key/value lines.
    #[arg(long, global = true)]
    pub json: bool,

    /// Cap on candidate points for brute-force counting.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Delta-vector, volume and Ehrhart data of a simplex file.
    Delta {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Box)]
        method: Method,
    },
    /// Check the delta-vector inequalities and the realizability verdict.
    Check {
        #[arg(required = true, allow_negative_numbers = true, value_name = "DELTA")]
        entries: Vec<String>,
    },
    /// Build a witness simplex for a realizable delta-vector.
    Realize {
        #[arg(required = true, allow_negative_numbers = true, value_name = "DELTA")]
        entries: Vec<String>,
        /// Write the witness polytope file here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Recompute the delta-vector of the witness (default).
        #[arg(long, overrides_with = "no_verify")]
        verify: bool,
        #[arg(long, overrides_with = "verify")]
        no_verify: bool,
    },
    /// List every candidate with delta_0 = 1 and bounded sum, with verdicts.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        max_sum: u64,
        /// Construct and verify a witness for every realizable row.
        #[arg(long)]
        realize_all: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Box,
    Counts,
    Both,
}

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
///
/// Argument errors are reported as `invalid-input`; `--help` and
/// `--version` exit 0.
pub fn run_from_args<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let result = run(&cli);
            let stdout = if cli.json {
                result.to_json()
            } else {
                result.to_text()
            };
            Invocation {
                stdout,
                stderr: String::new(),
                code: result.exit_code(),
            }
        }
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Invocation {
                    stdout: rendered,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Invocation {
                    stdout: String::new(),
                    stderr: rendered,
                    code: Status::InvalidInput.exit_code(),
                },
            }
        }
    }
}

pub fn run(cli: &Cli) -> CommandResult {
    match &cli.command {
        Command::Delta { file, method } => cmd_delta(file, *method, cli.budget),
        Command::Check { entries } => cmd_check(entries),
        Command::Realize {
            entries,
            out,
            no_verify,
            ..
        } => cmd_realize(entries, out.as_deref(), !no_verify),
        Command::Enumerate {
            dim,
            max_sum,
            realize_all,
        } => cmd_enumerate(*dim, *max_sum, *realize_all),
    }
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::BudgetExceeded { .. } => Status::BudgetExceeded,
        Error::Internal(_) | Error::InconsistentCounts { .. } => Status::InternalInconsistency,
        _ => Status::InvalidInput,
    }
}

fn big(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integers are valid JSON numbers"))
}

fn rational(v: &Rational) -> Value {
    Value::String(v.to_string())
}

fn delta_value(d: &DeltaVector) -> Value {
    json!(d.entries())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn cmd_delta(path: &Path, method: Method, budget: u64) -> CommandResult {
    let mut r = CommandResult::new("delta");
    let simplex = match load_simplex(path) {
        Ok(s) => s,
        Err(e) => return r.fail(status_of(&e), e.to_string()),
    };
    let d = simplex.dim();
    r.push("file", path.display().to_string());
    r.push("dimension", d);
    r.push("ambient_dim", simplex.ambient_dim());
    r.push(
        "method",
        match method {
            Method::Box => "box",
            Method::Counts => "counts",
            Method::Both => "both",
        },
    );

    let by_box = || -> ehrhart_core::Result<(DeltaVector, Vec<BigInt>, Vec<BigInt>)> {
        let delta = delta_from_box(&simplex)?;
        let volume = simplex.normalized_volume()?;
        if volume != BigInt::from(delta.sum()) {
            return Err(Error::Internal(format!(
                "|det| = {volume} but delta sums to {}",
                delta.sum()
            )));
        }
        let closed = (1..=d as i64)
            .map(|n| evaluate_ehrhart(&delta, n))
            .collect();
        let open = (1..=d as u64)
            .map(|n| evaluate_interior(&delta, n))
            .collect::<ehrhart_core::Result<_>>()?;
        Ok((delta, closed, open))
    };
    let by_counts = || -> ehrhart_core::Result<(DeltaVector, Vec<BigInt>, Vec<BigInt>)> {
        let closed: Vec<u64> = (1..=d as u64)
            .map(|n| count_points(&simplex, n, false, budget))
            .collect::<ehrhart_core::Result<_>>()?;
        let open: Vec<u64> = (1..=d as u64)
            .map(|n| count_points(&simplex, n, true, budget))
            .collect::<ehrhart_core::Result<_>>()?;
        let delta = delta_from_counts(&closed, d)?;
        Ok((
            delta,
            closed.into_iter().map(BigInt::from).collect(),
            open.into_iter().map(BigInt::from).collect(),
        ))
    };

    let computed = match method {
        Method::Box => by_box(),
        Method::Counts => by_counts(),
        Method::Both => by_box().and_then(|a| {
            let b = by_counts()?;
            if a != b {
                return Err(Error::Internal(format!(
                    "box method gives {} with counts {:?}, brute force gives {} with counts {:?}",
                    a.0, a.1, b.0, b.1
                )));
            }
            Ok(a)
        }),
    };
    let (delta, closed, open) = match computed {
        Ok(v) => v,
        Err(e) => return r.fail(status_of(&e), e.to_string()),
    };

    let volume = BigInt::from(delta.sum());
    r.push("delta", delta_value(&delta));
    r.push("normalized_volume", big(&volume));
    r.push("volume", rational(&Rational::new(volume, factorial(d))));
    r.push(
        "ehrhart_polynomial",
        Value::Array(ehrhart_polynomial(&delta).iter().map(rational).collect()),
    );
    r.push("i(P,n)", Value::Array(closed.iter().map(big).collect()));
    r.push("i*(P,n)", Value::Array(open.iter().map(big).collect()));
    r
}

fn load_simplex(path: &Path) -> ehrhart_core::Result<LatticeSimplex> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    PolytopeFile::parse(&text)?.to_simplex()
}

fn parse_candidate(tokens: &[String]) -> Result<CandidateDelta, String> {
    let entries = tokens
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| format!("`{t}` is not an integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    CandidateDelta::new(entries).map_err(|e| e.to_string())
}

fn check_value(c: &Check) -> Value {
    match c {
        Ok(()) => json!({"pass": true}),
        Err(v) => json!({"pass": false, "index": v.index, "lhs": v.lhs, "rhs": v.rhs}),
    }
}

fn basic_value(c: &Result<(), BasicViolation>) -> Value {
    match c {
        Ok(()) => json!({"pass": true}),
        Err(v) => json!({"pass": false, "violation": v.to_string()}),
    }
}

fn verdict_status(v: &Verdict) -> Status {
    match v {
        Verdict::Yes => Status::Ok,
        Verdict::No(_) => Status::NotRealizable,
        Verdict::OutOfScope(_) => Status::OutOfScope,
    }
}

fn reason_value(v: &Verdict) -> Value {
    match v {
        Verdict::Yes => Value::Null,
        Verdict::No(r) => Value::String(r.to_string()),
        Verdict::OutOfScope(r) => Value::String(r.to_string()),
    }
}

pub fn cmd_check(tokens: &[String]) -> CommandResult {
    let mut r = CommandResult::new("check");
    let c = match parse_candidate(tokens) {
        Ok(c) => c,
        Err(e) => return r.fail(Status::InvalidInput, e),
    };
    let report = inequality_report(&c);
    let verdict = is_realizable(&c);
    r.push("delta", json!(c.entries()));
    r.push("dimension", c.dim());
    r.push("sum", c.sum());
    r.push("basic", basic_value(&report.basic));
    r.push(
        "stanley",
        match &report.stanley {
            Some(check) => check_value(check),
            None => json!({"pass": false, "violation": "all entries are zero"}),
        },
    );
    r.push("hibi", check_value(&report.hibi));
    r.push("lower_bound", check_value(&report.lower_bound));
    r.push("inequalities_pass", report.all_pass());
    r.push("verdict", verdict.label());
    r.push("reason", reason_value(&verdict));
    r.status = verdict_status(&verdict);
    r
}

pub fn cmd_realize(tokens: &[String], out: Option<&Path>, verify: bool) -> CommandResult {
    let mut r = CommandResult::new("realize");
    let c = match parse_candidate(tokens) {
        Ok(c) => c,
        Err(e) => return r.fail(Status::InvalidInput, e),
    };
    r.push("delta", json!(c.entries()));
    r.push("dimension", c.dim());
    let verdict = is_realizable(&c);
    r.push("verdict", verdict.label());
    if !verdict.is_yes() {
        let reason = reason_value(&verdict);
        let message = reason.as_str().unwrap_or_default().to_string();
        return r.fail(verdict_status(&verdict), message);
    }
    let (simplex, plan) = match realize(&c) {
        Ok(v) => v,
        Err(e) => return r.fail(Status::InternalInconsistency, e.to_string()),
    };
    r.push("plan", plan.to_string());
    if verify {
        match delta_from_box(&simplex) {
            Ok(got) if CandidateDelta::from(&got) == c => {
                r.push("verified", true);
            }
            Ok(got) => {
                return r.fail(
                    Status::InternalInconsistency,
                    format!("witness has delta {got}, expected {c}"),
                )
            }
            Err(e) => return r.fail(Status::InternalInconsistency, e.to_string()),
        }
    } else {
        r.push("verified", Value::Null);
    }
    let file = PolytopeFile::from_simplex(&simplex, Some(plan.to_string()));
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, file.to_json()) {
            return r.fail(Status::InvalidInput, format!("{}: {e}", path.display()));
        }
        r.push("out", path.display().to_string());
    }
    r.push("ambient_dim", simplex.ambient_dim());
    r.push(
        "vertices",
        Value::Array(
            simplex
                .vertices()
                .iter()
                .map(|v| Value::Array(v.iter().map(big).collect()))
                .collect(),
        ),
    );
    r
}

pub fn cmd_enumerate(d: usize, max_sum: u64, realize_all: bool) -> CommandResult {
    let mut r = CommandResult::new("enumerate");
    r.push("dimension", d);
    r.push("max_sum", max_sum);
    if d < 3 {
        return r.fail(Status::OutOfScope, format!("dimension {d} < 3"));
    }
    if max_sum > 3 {
        return r.fail(Status::OutOfScope, format!("max-sum {max_sum} > 3"));
    }
    let rows = enumerate_candidates(d, max_sum);
    let mut yes = 0usize;
    let mut verified = 0usize;
    let mut failures = 0usize;
    let mut table = Vec::with_capacity(rows.len());
    for (c, v) in &rows {
        let mut row = serde_json::Map::new();
        row.insert("delta".into(), json!(c.entries()));
        row.insert("verdict".into(), Value::String(v.label().into()));
        row.insert("reason".into(), reason_value(v));
        if v.is_yes() {
            yes += 1;
            if realize_all {
                let outcome = realize(c).and_then(|(s, plan)| {
                    let ok = CandidateDelta::from(&delta_from_box(&s)?) == *c
                        && s.is_full_dimensional()
                        && s.normalized_volume()? == BigInt::from(c.sum());
                    Ok((plan, ok))
                });
                match outcome {
                    Ok((plan, ok)) => {
                        row.insert("plan".into(), Value::String(plan.to_string()));
                        row.insert("verified".into(), Value::Bool(ok));
                        if ok {
                            verified += 1;
                        } else {
                            failures += 1;
                        }
                    }
                    Err(e) => {
                        row.insert("verified".into(), Value::Bool(false));
                        row.insert("error".into(), Value::String(e.to_string()));
                        failures += 1;
                    }
                }
            }
        }
        table.push(Value::Object(row));
    }
    r.push("rows", Value::Array(table));
    r.push("candidates", rows.len());
    r.push("realizable", yes);
    if realize_all {
        r.push("verified", verified);
        r.push("verification_failures", failures);
        if failures > 0 {
            return r.fail(
                Status::InternalInconsistency,
                format!("{failures} witnesses failed verification"),
            );
        }
    }
    r
}
