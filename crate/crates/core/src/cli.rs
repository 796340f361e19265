//! JSON command-line front end.
//!
//! One job per invocation: the subcommand picks the operation, the job body
//! is read as JSON from `--input FILE` or standard input, and the result is
//! written as JSON to standard output. Exit codes: 0 success, 1 a fuzz
//! campaign found a counterexample inside a guaranteed region, 2 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{self, bohr_chain_check, bohr_params, BoundCertificate};
use crate::domain::{CaseLabel, Complex, Exponent, WeightedSystem, VERDICT_TOL};
use crate::error::Error;
use crate::oracle::{self, LambdaPlacement, SearchConfig};
use crate::superquad::{subquadratic_gap, euler_lagrange_identity, refined_bound};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sharpbound", version, about = "Sharp constants and superquadratic refinements for weighted power sums")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Read the job from FILE instead of standard input.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Seed for fuzz and sharpness campaigns.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of instances (fuzz) or restarts (sharpness).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Relative tolerance for inequality verdicts.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Force the sign case for `check` (i, ii or iii).
    #[arg(long, global = true)]
    case: Option<String>,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Sharp constant, Q-weights and extremal point.
    Lambda,
    /// Check the inequality for given points and lambda.
    Check,
    /// Superquadratic refinement of the bound.
    Refine,
    /// Two-term Euler-Lagrange type identity.
    Identity,
    /// Bohr parameter mapping and chain check.
    Bohr,
    /// Randomised campaign over a sign case or the refinement.
    Fuzz,
    /// Brute-force maximisation of the bound ratio.
    Sharpness,
}

/// A number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum ComplexInput {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexInput> for Complex {
    fn from(c: ComplexInput) -> Self {
        match c {
            ComplexInput::Real(r) => Complex::new(r, 0.0),
            ComplexInput::Pair([re, im]) => Complex::new(re, im),
        }
    }
}

fn complex_vec(v: Vec<ComplexInput>) -> Vec<Complex> {
    v.into_iter().map(Complex::from).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemJob {
    p: f64,
    mu: Vec<f64>,
    a: Vec<ComplexInput>,
    #[serde(default)]
    x: Option<Vec<ComplexInput>>,
    #[serde(default)]
    lambda: Option<f64>,
    #[serde(default)]
    case: Option<String>,
    #[serde(default)]
    search: Option<SearchConfig>,
}

impl SystemJob {
    fn system(&self) -> Result<WeightedSystem, CliError> {
        let sys = WeightedSystem::new(Exponent::new(self.p)?, complex_vec(self.a.clone()), self.mu.clone())?;
        Ok(match &self.x {
            Some(x) => sys.with_points(complex_vec(x.clone()))?,
            None => sys,
        })
    }

    fn require_points(&self) -> Result<(), CliError> {
        if self.x.is_none() {
            return Err(CliError::input("this command needs the points \"x\""));
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IdentityJob {
    x: f64,
    y: f64,
    a: f64,
    b: f64,
    mu: f64,
    nu: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BohrJob {
    s: f64,
    p: f64,
    #[serde(default)]
    x: Option<f64>,
    #[serde(default)]
    y: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FuzzJob {
    /// `i`, `ii`, `iii` or `refinement`.
    case: String,
    n: usize,
    p: f64,
    #[serde(default)]
    lambda_factor: Option<f64>,
    #[serde(default)]
    search: Option<SearchConfig>,
}

#[derive(Debug)]
struct CliError {
    kind: &'static str,
    detail: String,
}

impl CliError {
    fn input(detail: impl Into<String>) -> Self {
        CliError { kind: "input", detail: detail.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError { kind: e.kind(), detail: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::input(format!("invalid job JSON: {e}"))
    }
}

fn parse<T: for<'de> Deserialize<'de>>(body: &str) -> Result<T, CliError> {
    Ok(serde_json::from_str(body)?)
}

fn search_config(args: &Args, from_job: Option<SearchConfig>) -> SearchConfig {
    let mut cfg = from_job.unwrap_or_default();
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    cfg
}

fn tolerance(args: &Args) -> Result<f64, CliError> {
    match args.tol {
        Some(t) if !(t >= 0.0) || !t.is_finite() => Err(CliError::input("--tol must be a finite nonnegative number")),
        Some(t) => Ok(t),
        None => Ok(VERDICT_TOL),
    }
}

fn parse_case(s: &str) -> Result<CaseLabel, CliError> {
    CaseLabel::parse(s).ok_or_else(|| CliError::input(format!("unknown case {s:?}, expected i, ii or iii")))
}

/// Result JSON and whether a guaranteed inequality was found violated.
fn execute(args: &Args, body: &str) -> Result<(Value, bool), CliError> {
    let value = match args.command {
        Command::Lambda => {
            let job: SystemJob = parse(body)?;
            let sys = job.system()?;
            let cert = BoundCertificate::new(&sys.mu, &sys.a, sys.exponent)?;
            json!({ "lambda_bar": cert.lambda_bar, "Q": cert.q_weights, "x_star": cert.x_star })
        }
        Command::Check => {
            let job: SystemJob = parse(body)?;
            job.require_points()?;
            let lambda = job.lambda.ok_or_else(|| CliError::input("check needs \"lambda\""))?;
            let forced = match args.case.as_deref().or(job.case.as_deref()) {
                Some(c) => Some(parse_case(c)?),
                None => None,
            };
            let out = bounds::check(&job.system()?, lambda, forced, tolerance(args)?)?;
            serde_json::to_value(out)?
        }
        Command::Refine => {
            let job: SystemJob = parse(body)?;
            job.require_points()?;
            let sys = job.system()?;
            let refined = refined_bound(&sys)?;
            let mut v = serde_json::to_value(&refined)?;
            if sys.p() <= 2.0 {
                let gap = subquadratic_gap(&sys)?;
                v["gap"] = json!(gap.gap);
                v["upper"] = json!(gap.upper);
            }
            v["direction"] = json!(if sys.p() >= 2.0 { "lhs >= total" } else { "main_term <= lhs <= total" });
            v
        }
        Command::Identity => {
            let job: IdentityJob = parse(body)?;
            let id = euler_lagrange_identity(job.x, job.y, job.a, job.b, job.mu, job.nu)?;
            json!({ "lhs": id.lhs, "rhs": id.rhs, "agree": id.agree() })
        }
        Command::Bohr => {
            let job: BohrJob = parse(body)?;
            let b = bohr_params(job.s, job.p)?;
            let mut v = json!({
                "a": b.a, "b": b.b, "mu": b.mu, "nu": b.nu, "lambda": b.lambda,
                "matches_sharp": b.matches_sharp()?,
            });
            match (job.x, job.y) {
                (Some(x), Some(y)) => {
                    let (first, second) = bohr_chain_check(job.s, job.p, x, y)?;
                    v["chain"] = json!([first, second]);
                }
                (None, None) => {}
                _ => return Err(CliError::input("bohr needs both \"x\" and \"y\" or neither")),
            }
            v
        }
        Command::Fuzz => {
            let job: FuzzJob = parse(body)?;
            let cfg = search_config(args, job.search);
            let exp = Exponent::new(job.p)?;
            let (report, guaranteed) = if job.case.eq_ignore_ascii_case("refinement") {
                if job.lambda_factor.is_some() {
                    return Err(CliError::input("lambda_factor does not apply to the refinement campaign"));
                }
                (oracle::fuzz_refinement(job.n, job.p, &cfg)?, true)
            } else {
                let case = parse_case(&job.case)?;
                match job.lambda_factor {
                    None => (oracle::fuzz_case(case, job.n, exp, &cfg)?, true),
                    Some(f) => {
                        let inside = if case == CaseLabel::CaseI { f >= 1.0 } else { f <= 1.0 };
                        (oracle::fuzz_case_with(case, job.n, exp, &cfg, LambdaPlacement::Scaled(f))?, inside)
                    }
                }
            };
            return Ok((serde_json::to_value(&report)?, guaranteed && !report.is_clean()));
        }
        Command::Sharpness => {
            let job: SystemJob = parse(body)?;
            let sys = job.system()?;
            let cfg = search_config(args, job.search);
            let (found, report) = oracle::sharpness_campaign(&sys.mu, &sys.a, sys.exponent, &cfg)?;
            let lambda_bar = bounds::sharp_lambda(&sys.mu, &sys.a, sys.exponent)?;
            let mut v = serde_json::to_value(&report)?;
            v["lambda_bar"] = json!(lambda_bar);
            v["x_best"] = json!(found.x_best);
            v["relative_gap"] = json!((lambda_bar - found.best_ratio) / lambda_bar);
            return Ok((v, !report.is_clean()));
        }
    };
    Ok((value, false))
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    detail: &'a str,
}

fn emit(out: &mut dyn Write, value: &Value, pretty: bool) -> std::io::Result<()> {
    if pretty {
        serde_json::to_writer_pretty(&mut *out, value)?;
    } else {
        serde_json::to_writer(&mut *out, value)?;
    }
    writeln!(out)
}

fn emit_error(out: &mut dyn Write, kind: &str, detail: &str) {
    let body = json!({ "error": ErrorBody { kind, detail } });
    let _ = emit(out, &body, false);
}

/// Runs one invocation. `argv` includes the program name.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{e}");
            emit_error(stdout, "usage", e.kind().as_str().unwrap_or("invalid arguments"));
            return EXIT_INPUT;
        }
    };
    let body = match &args.input {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display())),
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map(|_| s).map_err(|e| format!("cannot read standard input: {e}"))
        }
    };
    let body = match body {
        Ok(b) => b,
        Err(detail) => {
            let _ = writeln!(stderr, "{detail}");
            emit_error(stdout, "io", &detail);
            return EXIT_INPUT;
        }
    };
    match execute(&args, &body) {
        Ok((value, violated)) => {
            if emit(stdout, &value, args.pretty).is_err() {
                return EXIT_INPUT;
            }
            if violated {
                let _ = writeln!(stderr, "counterexample found in a guaranteed region");
                EXIT_VIOLATION
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}: {}", e.kind, e.detail);
            emit_error(stdout, e.kind, &e.detail);
            EXIT_INPUT
        }
    }
}
