//! Command-line front end: `poly`, `normal-order`, `moments`, `verify` and
//! `eval`.
//!
//! Exit codes: 0 on success (for `verify`, every row passed), 1 when a
//! verification row or a computation fails, 2 on bad usage or input,
//! including points outside a transform's domain.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use meixner::measures::QuadConfig;
use meixner::par::Execution;
use meixner::sheffer::{Class, MeixnerParams};
use meixner::transforms;

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

use commands::{EvalArgs, PolyBasis, What};
use config::{ParamFile, PARAMS_ENV};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<transforms::Error> for CliError {
    fn from(e: transforms::Error) -> Self {
        match e {
            transforms::Error::OutsideDomain { .. } | transforms::Error::OutsideSupport(_) | transforms::Error::Tolerance(_) => {
                CliError::Input(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<meixner::measures::Error> for CliError {
    fn from(e: meixner::measures::Error) -> Self {
        match e {
            meixner::measures::Error::OutsideSupport(_) | meixner::measures::Error::Domain(_) => CliError::Input(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// Meixner-class orthogonal Sheffer sequences: exact polynomials, normal
/// ordering, moments, transforms and verification suites.
#[derive(Debug, Parser)]
#[command(name = "meixner", version, after_help = OPERATOR_HELP)]
pub struct Cli {
    /// Parameter file (JSON); see docs/param_file.schema.json.
    #[arg(long, global = true, env = PARAMS_ENV, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// Reference parameter set; takes precedence over --params.
    #[arg(long, global = true, value_name = "CLASS", value_parser = ["laguerre", "meixner-1", "meixner-2", "meixner-i", "meixner-ii"])]
    pub preset: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Run batch work on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

const OPERATOR_HELP: &str = "\
Operator grammar for normal-order:
  expr   := term (('+' | '-') term)*
  term   := factor ('*' factor)*
  factor := atom ('^' integer)?
  atom   := 'U' | 'V' | scalar | '(' expr ')'
Scalars are integers, p/q or decimals, optionally followed by i.
--a and --b take Gaussian rational literals such as 1/2-3i.

Without --params or --preset the Laguerre reference set (1, 1, 1) is used.";

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact coefficients, highest degree first.
    Poly {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, value_enum, default_value_t = PolyBasis::Monomial)]
        basis: PolyBasis,
    },
    /// Normal form (every U left of every V) under [V, U] = aV + b.
    NormalOrder {
        expr: String,
        /// Defaults to β of the parameter set.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Defaults to α - β of the parameter set.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Exact moments of the orthogonality measure next to quadrature.
    Moments {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Runs a verification suite; exit 0 iff every row passes.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Suite::Exact)]
        suite: verify::Suite,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Same as --format json.
        #[arg(long)]
        json: bool,
        /// Perturbs one seeded Stirling number of the second kind before running.
        #[arg(long)]
        corrupt_stirling: bool,
    },
    /// Evaluates a function at a point, or over a grid with --grid.
    Eval {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        /// `re` or `re,im`.
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = commands::parse_complex)]
        z: num_complex::Complex64,
        /// Second kernel argument, `re` or `re,im`.
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = commands::parse_complex)]
        w: num_complex::Complex64,
        /// Kernel parameters; default to η and σ of the parameter set.
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        sigma: Option<f64>,
        /// Comma-separated coefficients, highest degree first. Sheffer basis for
        /// transform-S, monomials for transform-curlyS, falling factorials for
        /// transform-T.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        coeffs: String,
        /// Relative tolerance for series evaluation.
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        /// Grid mode over the ranges below (each `start:stop:count`).
        #[arg(long)]
        grid: bool,
        #[arg(long, allow_hyphen_values = true, value_parser = commands::parse_range, requires = "grid")]
        x_range: Option<commands::Range>,
        #[arg(long, allow_hyphen_values = true, value_parser = commands::parse_range, requires = "grid")]
        re_range: Option<commands::Range>,
        #[arg(long, allow_hyphen_values = true, value_parser = commands::parse_range, requires = "grid")]
        im_range: Option<commands::Range>,
    },
}

fn resolve(cli: &Cli) -> Result<(MeixnerParams, QuadConfig), CliError> {
    if let Some(name) = &cli.preset {
        return Ok((config::preset(name)?, QuadConfig::default()));
    }
    match &cli.params {
        Some(path) => {
            let file = ParamFile::load(path)?;
            Ok((file.params()?, file.quad()?))
        }
        None => Ok((MeixnerParams::reference(Class::Laguerre), QuadConfig::default())),
    }
}

fn parse_coeffs(text: &str) -> Result<Vec<meixner::GaussRational>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|e| CliError::Input(format!("--coeffs: {e}"))))
        .collect()
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let (params, cfg) = resolve(cli)?;
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let format = cli.format;
    let text = match &cli.command {
        Command::Poly { n, basis } => commands::poly(&params, *n, *basis, format)?,
        Command::NormalOrder { expr, a, b } => commands::normal_order_cmd(&params, expr, a.as_deref(), b.as_deref(), format)?,
        Command::Moments { n_max } => commands::moments(&params, *n_max, &cfg, format)?,
        Command::Verify { suite, seed, json, corrupt_stirling } => {
            let mut ctx = verify::Context::new(Some(params), cfg, *seed);
            if *corrupt_stirling {
                ctx.corrupt_stirling();
            }
            let report = verify::run(*suite, &ctx, exec);
            let code = if report.passed { 0 } else { 1 };
            let text = if *json || format == Format::Json { report.to_json() + "\n" } else { report.to_text() };
            return Ok((text, code));
        }
        Command::Eval { what, x, z, w, eta, sigma, coeffs, tol, grid, x_range, re_range, im_range } => {
            let args = EvalArgs { what: *what, x: *x, z: *z, w: *w, eta: *eta, sigma: *sigma, coeffs: parse_coeffs(coeffs)?, tol: *tol };
            if *grid {
                let xs = x_range.clone().map_or_else(|| vec![*x], |r| r.0);
                let res = re_range.clone().map_or_else(|| vec![z.re], |r| r.0);
                let ims = im_range.clone().map_or_else(|| vec![z.im], |r| r.0);
                commands::eval_grid(&params, &cfg, &args, &xs, &res, &ims, format)?
            } else {
                commands::eval(&params, &cfg, &args, format)?
            }
        }
    };
    Ok((text, 0))
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
