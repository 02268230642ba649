use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grover_exact::scanner::Grid;

/// Parse an angle: a decimal literal in radians, or a multiple of π written
/// with a `pi` suffix (`0.268pi`, `-0.5pi`, `pi`).
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let trimmed = text.trim();
    let value = match trimmed.strip_suffix("pi") {
        Some(coeff) => {
            let coeff = match coeff {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => parse_decimal(c)?,
            };
            coeff * PI
        }
        None => parse_decimal(trimmed)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle `{text}` is not finite"))
    }
}

fn parse_decimal(text: &str) -> Result<f64, String> {
    // Rust's float parser also takes "inf", "nan" and friends; restrict to decimals.
    let ok = !text.is_empty()
        && text
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    if !ok {
        return Err(format!("`{text}` is not a decimal number"));
    }
    text.parse::<f64>()
        .map_err(|_| format!("`{text}` is not a decimal number"))
}

fn parse_grid_with(text: &str, bound: fn(&str) -> Result<f64, String>) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, steps] = parts.as_slice() else {
        return Err(format!("grid `{text}` must look like lo:hi:steps"));
    };
    let steps: usize = steps
        .trim()
        .parse()
        .map_err(|_| format!("grid step count `{steps}` is not a positive integer"))?;
    Grid::new(bound(lo)?, bound(hi)?, steps).map_err(|e| e.to_string())
}

/// `lo:hi:steps` with plain decimal bounds.
pub fn parse_grid(text: &str) -> Result<Grid, String> {
    parse_grid_with(text, parse_decimal)
}

/// `lo:hi:steps` with angle bounds (`0.05pi:pi:2000`).
pub fn parse_angle_grid(text: &str) -> Result<Grid, String> {
    parse_grid_with(text, parse_angle)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "grover-exact",
    version,
    about = "Exact success probability and coherence dynamics of two-phase Grover search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the success probability and coherence ratio of one instance.
    Eval(EvalArgs),
    /// Tabulate P(lambda) along a lambda grid for beta = -alpha.
    Scan(ScanArgs),
    /// Find the alpha (beta = -alpha) with the smallest lambda lower bound.
    Optimize(OptimizeArgs),
    /// Ratio of dephased-start to pure-start success probability.
    Sensitivity(SensitivityArgs),
    /// Check the closed forms against the brute-force oracles.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write results here (and the run manifest to `<out>.manifest.json`)
    /// instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Marked fraction in [0, 1].
    #[arg(long)]
    pub lambda: f64,

    /// Coherence of the initial state in [-1, 1].
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub xi: f64,

    /// Oracle phase (radians, or e.g. `0.5pi`).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,

    /// Diffuser phase; defaults to -alpha.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub beta: Option<f64>,

    #[arg(long)]
    pub iters: u64,

    /// Require the coherence ratio; exit with code 3 when it is undefined.
    #[arg(long)]
    pub coherence: bool,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,

    #[arg(long)]
    pub iters: u64,

    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub xi: f64,

    /// lo:hi:steps, both ends included.
    #[arg(long, value_parser = parse_grid, default_value = "0.001:1:4000")]
    pub lambda_grid: Grid,

    /// Also certify the lambda lower bound for this threshold (xi = 1).
    #[arg(long)]
    pub threshold: Option<f64>,

    #[arg(long, default_value_t = grover_exact::scanner::DEFAULT_REFINE_TOL)]
    pub refine_tol: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// One or more iteration counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub iters: Vec<u64>,

    #[arg(long)]
    pub threshold: f64,

    #[arg(long, value_parser = parse_angle_grid, default_value = "0.05pi:pi:2000")]
    pub alpha_grid: Grid,

    #[arg(long, value_parser = parse_grid, default_value = "0.001:1:4000")]
    pub lambda_grid: Grid,

    #[arg(long, default_value_t = grover_exact::scanner::DEFAULT_REFINE_TOL)]
    pub refine_tol: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    #[arg(long)]
    pub lambda: f64,

    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub alpha: f64,

    #[arg(long)]
    pub iters: u64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = grover_exact::validation::ValidationOptions::default().seed)]
    pub seed: u64,

    /// Largest register (qubits) for the full-statevector checks.
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,

    /// Skip the reference-value checks (threshold scans, root, sensitivity).
    #[arg(long)]
    pub skip_reference: bool,

    /// Add this offset to every closed-form output before checking.
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub perturb: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}
