//! `gtransform`: run the extrapolation engines, the integral driver, the
//! operation-count benches and the exact equivalence checks.
//!
//! Exit codes: 0 success, 1 failed check or unwritable output, 2 unreadable
//! or invalid input document, 3 every entry beyond column 0 broke down,
//! 64 usage error.

mod document;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gtransform::bench::{bench_method, BenchMethod, MIN_LEVELS};
use gtransform::check::run_all;
use gtransform::quad::{g_transform, GTransformResult, Integrand, IntegrandSpec, QuadratureConfig, SampleTable};
use gtransform::{
    run_epsilon, run_fs_qd, run_rs, shanks_prepare, AccelError, EntryStatus, ExtrapolationTable, Method, Rational,
    SequencePair,
};
use serde::Serialize;
use serde_json::Value;

use document::{diagonal, table_rows, InputDocument, JsonScalar, Mode, OutputDocument};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BREAKDOWN: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Largest `L` accepted by `check`.
const CHECK_MAX_LEVELS: usize = 5;

#[derive(Debug, Parser)]
#[command(name = "gtransform", version, about = "Higher-order G-transformation engines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Fsqd,
    Rs,
    Eps,
}

impl From<EngineArg> for Method {
    fn from(e: EngineArg) -> Method {
        match e {
            EngineArg::Fsqd => Method::FsQd,
            EngineArg::Rs => Method::Rs,
            EngineArg::Eps => Method::Eps,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum BenchArg {
    Fsqd,
    FsqdDiag,
    Rs,
    Eps,
}

impl From<BenchArg> for BenchMethod {
    fn from(b: BenchArg) -> BenchMethod {
        match b {
            BenchArg::Fsqd => BenchMethod::Fsqd,
            BenchArg::FsqdDiag => BenchMethod::FsqdDiag,
            BenchArg::Rs => BenchMethod::Rs,
            BenchArg::Eps => BenchMethod::Eps,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extrapolation table of a sequence read from a JSON document.
    Table {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        method: EngineArg,
        /// Exact rational arithmetic instead of double precision.
        #[arg(long)]
        exact: bool,
        /// FS/qd only: compute the (0, n) entries and leave the rest uncomputed.
        #[arg(long)]
        diagonal_only: bool,
        /// Write the JSON document here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Approximate an infinite integral by G_n(x; h).
    Integrate {
        /// exp_decay, t_exp, sinc or table.
        #[arg(long)]
        integrand: String,
        /// Lower limit.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        /// First node; defaults to the lower limit.
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "fsqd")]
        engine: EngineArg,
        /// Simpson intervals per panel (even, at least 2).
        #[arg(long, default_value_t = 64)]
        subdivisions: usize,
        /// Use the closed-form F where the catalog has one.
        #[arg(long)]
        analytic_f: bool,
        /// Samples for `--integrand table`: A = F(x+ih), u = f(x+ih).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Print the whole table rather than the diagonal.
        #[arg(long)]
        full: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Operation counts of one engine on seeded random input.
    Bench {
        #[arg(long, value_enum)]
        method: BenchArg,
        #[arg(long = "L")]
        levels: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Exact equivalence suite on random rational input.
    Check {
        #[arg(long = "L")]
        levels: usize,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("gtransform: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Table { input, method, exact, diagonal_only, output } => {
            cmd_table(&input, method.into(), exact, diagonal_only, output.as_deref())
        }
        Command::Integrate { integrand, a, x, h, n_max, engine, subdivisions, analytic_f, input, full, json } => {
            let integrand: Integrand = integrand.parse().map_err(|e| Failure::usage(format!("{e}")))?;
            let cfg = QuadratureConfig { subdivisions, analytic: analytic_f };
            let spec = match integrand {
                Integrand::Table(_) => {
                    let path = input.ok_or_else(|| Failure::usage("--integrand table needs --input"))?;
                    table_spec(&path)?
                }
                other => IntegrandSpec::new(other, a),
            };
            let x = x.unwrap_or(spec.lower);
            let result = g_transform(&spec, x, h, n_max, engine.into(), &cfg).map_err(|e| Failure::usage(e.to_string()))?;
            let text = if json {
                to_json(&IntegrateDocument::new(&spec, &result))
            } else {
                render_integrate(&spec, &result, full)
            };
            print!("{text}");
            Ok(0)
        }
        Command::Bench { method, levels, seed } => {
            if levels < MIN_LEVELS {
                return Err(Failure::usage(format!("--L must be at least {MIN_LEVELS}, got {levels}")));
            }
            let report = bench_method(method.into(), levels, seed).map_err(|e| Failure::usage(e.to_string()))?;
            print!("{}", to_json(&report));
            Ok(0)
        }
        Command::Check { levels, cases, seed } => {
            if !(1..=CHECK_MAX_LEVELS).contains(&levels) {
                return Err(Failure::usage(format!("--L must be between 1 and {CHECK_MAX_LEVELS}, got {levels}")));
            }
            if cases == 0 {
                return Err(Failure::usage("--cases must be at least 1"));
            }
            match run_all(levels, cases, seed) {
                Ok(s) => {
                    println!(
                        "all checks passed: L = {levels}, {} cases, {} exact comparisons, {} redrawn samples",
                        s.cases, s.comparisons, s.redraws
                    );
                    Ok(0)
                }
                Err(ce) => {
                    println!("counterexample found\n{ce}");
                    Ok(EXIT_FAILURE)
                }
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn read_document(path: &Path) -> Result<InputDocument, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    InputDocument::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn accel_failure(e: AccelError) -> Failure {
    let message = match e {
        AccelError::ZeroInput { index } => format!("field u[{index}]: must be nonzero"),
        AccelError::ZeroDifference { index } => {
            format!("field A: A[{}] - A[{index}] is zero, so u[{index}] would vanish", index + 1)
        }
        AccelError::Length { what, expected, found } => {
            format!("field {what}: expected at most {expected} values, found {found}")
        }
        other => other.to_string(),
    };
    Failure::input(message)
}

fn compute<S: JsonScalar>(
    doc: &InputDocument,
    method: Method,
    diagonal_only: bool,
) -> Result<ExtrapolationTable<S>, Failure> {
    let a: Vec<S> = doc.a_values().map_err(|e| Failure::input(e.to_string()))?;
    if method == Method::Eps {
        return run_epsilon(&a).map_err(accel_failure);
    }
    let seq = match doc.mode() {
        Mode::Shanks => shanks_prepare(&a),
        Mode::General => {
            let u = doc.u_values().map_err(|e| Failure::input(e.to_string()))?.unwrap_or_default();
            SequencePair::new(a, u)
        }
    }
    .map_err(accel_failure)?;
    match method {
        Method::Rs => run_rs(&seq).map(|(_, t)| t),
        _ => run_fs_qd(&seq, diagonal_only).map(|r| r.table),
    }
    .map_err(accel_failure)
}

/// No valid entry beyond column 0, and at least one breakdown there.
fn all_broken<S: gtransform::Scalar>(table: &ExtrapolationTable<S>) -> bool {
    let mut any_breakdown = false;
    for (_, n, e) in table.iter() {
        if n == 0 {
            continue;
        }
        match e.status() {
            EntryStatus::Valid => return false,
            EntryStatus::Breakdown => any_breakdown = true,
            EntryStatus::NotComputed => {}
        }
    }
    any_breakdown
}

fn emit<S: JsonScalar>(table: &ExtrapolationTable<S>, output: Option<&Path>) -> Result<u8, Failure> {
    let text = to_json(&OutputDocument::new(table));
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => print!("{text}"),
    }
    Ok(if all_broken(table) { EXIT_BREAKDOWN } else { 0 })
}

fn cmd_table(
    input: &Path,
    method: Method,
    exact: bool,
    diagonal_only: bool,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    if diagonal_only && method != Method::FsQd {
        return Err(Failure::usage("--diagonal-only applies to --method fsqd only"));
    }
    let doc = read_document(input)?;
    if exact {
        emit(&compute::<Rational>(&doc, method, diagonal_only)?, output)
    } else {
        emit(&compute::<f64>(&doc, method, diagonal_only)?, output)
    }
}

fn table_spec(path: &Path) -> Result<IntegrandSpec, Failure> {
    let doc = read_document(path)?;
    let big_f: Vec<f64> = doc.a_values().map_err(|e| Failure::input(e.to_string()))?;
    let f: Vec<f64> = match doc.mode() {
        Mode::General => doc.u_values().map_err(|e| Failure::input(e.to_string()))?.unwrap_or_default(),
        Mode::Shanks => Vec::new(),
    };
    let reference = doc.reference().map_err(|e| Failure::input(e.to_string()))?;
    Ok(IntegrandSpec::table(SampleTable { big_f, f }, reference))
}

#[derive(Serialize)]
struct IntegrateDocument {
    integrand: &'static str,
    a: f64,
    x: f64,
    h: f64,
    method: &'static str,
    reference: Option<f64>,
    diagonal: Vec<Value>,
    /// `|G_n(x;h) - I[f]|`, or `|G_n - G_{n-1}|` (from `n = 1`) without a
    /// reference.
    errors: Vec<Option<f64>>,
    error_kind: &'static str,
    table: Vec<document::TableRow>,
}

impl IntegrateDocument {
    fn new(spec: &IntegrandSpec, r: &GTransformResult) -> Self {
        let mut table = table_rows(&r.table);
        for row in &mut table {
            row.error = r.error(row.j, row.n);
        }
        let (errors, error_kind) = match r.reference {
            Some(_) => ((0..=r.table.max_order()).map(|n| r.error(0, n)).collect(), "reference"),
            None => (r.diagonal_differences(), "successive_difference"),
        };
        IntegrateDocument {
            integrand: spec.integrand.id(),
            a: spec.lower,
            x: r.x,
            h: r.h,
            method: r.table.method().name(),
            reference: r.reference,
            diagonal: diagonal(&r.table),
            errors,
            error_kind,
            table,
        }
    }
}

fn cell(e: &gtransform::Entry<f64>) -> String {
    match e.value() {
        Some(v) => format!("{v:.16e}"),
        None => e.status().name().to_string(),
    }
}

fn render_integrate(spec: &IntegrandSpec, r: &GTransformResult, full: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "integrand {} on [{}, inf), x = {}, h = {}, engine {}",
        spec.integrand.id(),
        spec.lower,
        r.x,
        r.h,
        r.table.method()
    );
    match r.reference {
        Some(i) => {
            let _ = writeln!(s, "reference I[f] = {i:.16e}");
            let _ = writeln!(s, "{:>3}  {:>24}  {:>10}", "n", "G_n(x;h)", "|G_n - I|");
            for (n, e) in r.table.diagonal().into_iter().enumerate() {
                let err = r.error(0, n).map_or(String::new(), |v| format!("{v:.3e}"));
                let _ = writeln!(s, "{n:>3}  {:>24}  {err:>10}", cell(e));
            }
        }
        None => {
            let _ = writeln!(s, "{:>3}  {:>24}  {:>14}", "n", "G_n(x;h)", "|G_n - G_n-1|");
            let diffs = r.diagonal_differences();
            for (n, e) in r.table.diagonal().into_iter().enumerate() {
                let d = n.checked_sub(1).and_then(|k| diffs[k]).map_or(String::new(), |v| format!("{v:.3e}"));
                let _ = writeln!(s, "{n:>3}  {:>24}  {d:>14}", cell(e));
            }
        }
    }
    if full {
        let _ = writeln!(s, "\nfull table, G_n(x + jh; h):");
        let _ = writeln!(s, "{:>3} {:>3}  {:>24}  {:>10}", "j", "n", "value", "error");
        for (j, n, e) in r.table.iter() {
            let err = r.error(j, n).map_or(String::new(), |v| format!("{v:.3e}"));
            let _ = writeln!(s, "{j:>3} {n:>3}  {:>24}  {err:>10}", cell(e));
        }
    }
    s
}
