//! The `jordan` command line tool.
//!
//! Every subcommand reads one JSON document (`--input`, or stdin) and writes
//! one JSON document (`--output`, or stdout). Exit status is 0 on success,
//! 2 when the input is rejected and 3 when a numerical routine fails.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use jordan_core::frame::default_tau_group;
use jordan_core::kl::{kl_check, KlConfig};
use jordan_core::oracle::{regular_subgradient_probe, DEFAULT_DIRECTIONS};
use jordan_core::transfer::{lambda_k_subdiff_member_with, spectral_subdiff_member_with, spectral_value};
use jordan_core::{
    eigen_dir_derivative, majorizes, operator_commute, spectral_decompose, Element,
    SpectralDecomposition, SubdiffKind, SymmetricFunctionId,
};

pub mod output;

#[derive(Debug, Parser)]
#[command(name = "jordan", version, about = "Spectral functions on Euclidean Jordan algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input JSON file; stdin when omitted.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; stdout when omitted or `-`.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Membership and commutation tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Eigenvalue grouping tolerance; `1e-8·(1 + ‖x‖)` when omitted.
    #[arg(long, global = true)]
    pub tau_group: Option<f64>,
    /// Seed for the sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Spectral decomposition of `x`: `{lambda, frame}`.
    Decompose {
        /// Read a `{lambda, frame}` document and rebuild `x` instead.
        #[arg(long)]
        reconstruct: bool,
    },
    /// Whether `x` and `y` operator commute.
    Commute,
    /// Directional derivative of the eigenvalue map at `x` along `z`.
    Dirderiv,
    /// Whether `u` is majorized by `v`.
    Majorize,
    /// Membership of `s` in a subdifferential of `f∘λ` at `x`.
    Subdiff,
    /// Membership of `s` in a subdifferential of `λ_k` at `x`.
    #[command(name = "lambda-k")]
    LambdaK,
    /// Sampling check of the KL inequality for `f∘λ` around `x`.
    Kl,
    /// Sampling probe of the regular subgradient inequality for `f∘λ`.
    Probe,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<jordan_core::Error> for CliError {
    fn from(e: jordan_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecomposeInput {
    x: Element,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    x: Element,
    #[serde(alias = "z")]
    y: Element,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MajorizeInput {
    u: Vec<f64>,
    v: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubdiffInput {
    function: SymmetricFunctionId,
    kind: SubdiffKind,
    x: Element,
    s: Element,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaKInput {
    k: usize,
    kind: SubdiffKind,
    x: Element,
    s: Element,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KlInput {
    function: SymmetricFunctionId,
    x: Element,
    alpha: f64,
    c: f64,
    nu: f64,
    radius: f64,
    n_samples: usize,
}

fn default_dirs() -> usize {
    DEFAULT_DIRECTIONS
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbeInput {
    function: SymmetricFunctionId,
    x: Element,
    s: Element,
    epsilon: f64,
    radii: Vec<f64>,
    #[serde(default = "default_dirs")]
    n_dirs: usize,
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(format!("invalid input: {e}")))
}

fn emit<T: Serialize>(value: &T) -> Result<String, CliError> {
    output::to_string(value).map_err(|e| CliError::Validation(e.to_string()))
}

/// Runs `command` on the input document and returns the output document.
pub fn execute(command: &Command, common: &Common, input: &str) -> Result<String, CliError> {
    if !(common.tol >= 0.0 && common.tol.is_finite()) {
        return Err(CliError::Validation("--tol must be a finite nonnegative number".into()));
    }
    if let Some(t) = common.tau_group {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(CliError::Validation("--tau-group must be a finite nonnegative number".into()));
        }
    }
    let tau = |x: &Element| common.tau_group.unwrap_or_else(|| default_tau_group(x.norm()));
    let tol = common.tol;
    match command {
        Command::Decompose { reconstruct: false } => {
            let DecomposeInput { x } = parse(input)?;
            emit(&spectral_decompose(&x)?)
        }
        Command::Decompose { reconstruct: true } => {
            let dec: SpectralDecomposition = parse(input)?;
            emit(&serde_json::json!({ "x": dec.reconstruct() }))
        }
        Command::Commute => {
            let PairInput { x, y } = parse(input)?;
            emit(&serde_json::json!({ "commutes": operator_commute(&x, &y, tol)? }))
        }
        Command::Dirderiv => {
            let PairInput { x, y: z } = parse(input)?;
            let d = eigen_dir_derivative(&x, &z, tau(&x))?;
            emit(&serde_json::json!({ "derivative": d }))
        }
        Command::Majorize => {
            let MajorizeInput { u, v } = parse(input)?;
            emit(&serde_json::json!({ "majorizes": majorizes(&u, &v, tol)? }))
        }
        Command::Subdiff => {
            let i: SubdiffInput = parse(input)?;
            let t = tau(&i.x);
            emit(&spectral_subdiff_member_with(i.function, i.kind, &i.x, &i.s, tol, t)?)
        }
        Command::LambdaK => {
            let i: LambdaKInput = parse(input)?;
            let t = tau(&i.x);
            emit(&lambda_k_subdiff_member_with(i.k, i.kind, &i.x, &i.s, tol, t)?)
        }
        Command::Kl => {
            let i: KlInput = parse(input)?;
            let cfg = KlConfig::new(i.alpha, i.c, i.nu, i.radius, i.n_samples, common.seed);
            emit(&kl_check(i.function, &i.x, &cfg)?)
        }
        Command::Probe => {
            let i: ProbeInput = parse(input)?;
            if i.x.algebra() != i.s.algebra() {
                return Err(CliError::Validation("x and s live in different algebras".into()));
            }
            let alg = i.x.algebra().clone();
            let eval = |c: &[f64]| spectral_value(i.function, &alg.from_coords(c)?);
            let verdict = regular_subgradient_probe(
                eval,
                &i.x.coords(),
                &i.s.coords(),
                i.epsilon,
                &i.radii,
                i.n_dirs,
                common.seed,
            )?;
            emit(&verdict)
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = fs::read_to_string(p)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", p.display())))?
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Validation(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn write_output(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text),
        _ => io::stdout().write_all(text.as_bytes()),
    }
}

/// Runs a parsed command line and returns the exit status.
pub fn run(cli: &Cli) -> i32 {
    let result = read_input(cli.common.input.as_ref())
        .and_then(|input| execute(&cli.command, &cli.common, &input));
    match result {
        Ok(text) => match write_output(cli.common.output.as_ref(), &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
