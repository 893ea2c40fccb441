//! The `heavenly` command line.
//!
//! Exit codes: 0 when every check passes (or a computation succeeds), 1 when
//! a check fails, 2 on usage, input or parse errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use heavenly_core::diffpoly::Point;
use heavenly_core::jetspace::JetError;
use heavenly_core::liealg::{pfaffian, LieError};
use heavenly_core::plebanski::{verify_suites, PlebanskiError, SUITES};
use heavenly_core::report::Status;
use heavenly_core::{chart, lie_bracket, parse_poly, parse_symbol, prolong, Chart, DiffPoly, ExprError, VectorField};

#[derive(Parser, Debug)]
#[command(name = "heavenly", version, about = "Exact jet-calculus verifier for heavenly-equation symmetries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a named identity suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random points per identity.
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Evaluate an expression at a point given as `{symbol: value}`.
    Eval {
        #[arg(long)]
        chart: String,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        at: PathBuf,
    },
    /// Lie bracket of two vector fields.
    Bracket {
        #[arg(long)]
        chart: String,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Prolongation of a point field to the given jet order.
    Prolong {
        #[arg(long)]
        chart: String,
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Pfaffian of an antisymmetric matrix given as `{chart, rows}`.
    Pfaffian {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}: {1}")]
    Json(PathBuf, serde_json::Error),
    #[error("in {context}: {source}")]
    Expr { context: String, source: ExprError },
    #[error("chart mismatch: expected {expected}, file declares {got}")]
    ChartMismatch { expected: String, got: String },
    #[error("{0} is not a rational constant")]
    NotConstant(String),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Suite(#[from] PlebanskiError),
    #[error("{0}")]
    Eval(String),
}

/// A vector field as exchanged on disk.
#[derive(Debug, Serialize, Deserialize)]
pub struct FieldFile {
    pub chart: String,
    pub coefficients: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub chart: String,
    pub rows: Vec<Vec<String>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_path_buf(), e))
}

fn expr(text: &str, c: &Chart) -> Result<DiffPoly, CliError> {
    parse_poly(text, c).map_err(|source| CliError::Expr {
        context: text.to_string(),
        source,
    })
}

fn read_field(path: &Path, c: &Arc<Chart>) -> Result<VectorField, CliError> {
    let f: FieldFile = read_json(path)?;
    if f.chart != c.name() {
        return Err(CliError::ChartMismatch {
            expected: c.name().to_string(),
            got: f.chart,
        });
    }
    let mut out = VectorField::zero(c.clone());
    for (dir, coeff) in &f.coefficients {
        let sym = parse_symbol(dir, c).map_err(|source| CliError::Expr {
            context: dir.clone(),
            source,
        })?;
        out.set(sym, expr(coeff, c)?)?;
    }
    Ok(out)
}

fn field_file(x: &VectorField) -> FieldFile {
    FieldFile {
        chart: x.chart().name().to_string(),
        coefficients: x.coefficients().iter().map(|(s, p)| (s.to_string(), p.to_string())).collect(),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn verify(out: &mut dyn Write, suite: &str, json: Option<&Path>, seed: u64, points: usize) -> Result<i32, CliError> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let report = verify_suites(&names, seed, points)?;
    let _ = out.write_all(report.render_text().as_bytes());
    if let Some(path) = json {
        std::fs::write(path, to_json(&report) + "\n").map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    }
    Ok(if report.status == Status::Fail { 1 } else { 0 })
}

fn eval(out: &mut dyn Write, c: &Chart, text: &str, at: &Path) -> Result<i32, CliError> {
    let p = expr(text, c)?;
    let raw: BTreeMap<String, String> = read_json(at)?;
    let mut pt = Point::new();
    for (name, value) in &raw {
        let sym = parse_symbol(name, c).map_err(|source| CliError::Expr {
            context: name.clone(),
            source,
        })?;
        let v = expr(value, c)?.as_constant().ok_or_else(|| CliError::NotConstant(value.clone()))?;
        pt.insert(sym, v);
    }
    let v = p.eval(&pt).map_err(|e| CliError::Eval(e.to_string()))?;
    let _ = writeln!(out, "{v}");
    Ok(0)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Verify {
            suite,
            json,
            seed,
            points,
        } => verify(out, &suite, json.as_deref(), seed, points),
        Command::Eval { chart: name, expr: e, at } => eval(out, &*chart(&name)?, &e, &at),
        Command::Bracket { chart: name, x, y } => {
            let c = chart(&name)?;
            let z = lie_bracket(&read_field(&x, &c)?, &read_field(&y, &c)?)?;
            let _ = writeln!(out, "{}", to_json(&field_file(&z)));
            Ok(0)
        }
        Command::Prolong {
            chart: name,
            field,
            order,
        } => {
            let c = chart(&name)?;
            let pr = prolong(&read_field(&field, &c)?, order)?;
            let coefficients = pr
                .directions()
                .into_iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(s, p)| (s.to_string(), p.to_string()))
                .collect();
            let f = FieldFile {
                chart: c.name().to_string(),
                coefficients,
            };
            let _ = writeln!(out, "{}", to_json(&f));
            Ok(0)
        }
        Command::Pfaffian { matrix } => {
            let m: MatrixFile = read_json(&matrix)?;
            let c = chart(&m.chart)?;
            let rows = m
                .rows
                .iter()
                .map(|r| r.iter().map(|e| expr(e, &c)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let _ = writeln!(out, "{}", pfaffian(&rows)?);
            Ok(0)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("HEAVENLY_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second configuration attempt in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the command line, writing reports and results to `out` and
/// diagnostics to standard error; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock())
}
