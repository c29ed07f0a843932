use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Weighted Chebyshev polynomials on the unit circle for the weight |z - 1|^s.
///
/// Parallel work is capped by the CHEB_THREADS environment variable.
#[derive(Debug, Parser)]
#[command(name = "wcheb", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file (atomically) instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free and circle-constrained minimisers for w_s and degree n
    Solve(SolveArgs),
    /// Norm table ||w_s T_n|| for n = 0..n_max with monotonicity verdicts
    Norms(NormsArgs),
    /// Erdős–Lax type checks for c prod (z - a_k)^{s_k}
    ErdosLax(ErdosLaxArgs),
    /// Zero statistics of T_n^{w_s}; CSV lists the zeros
    Zeros(ZerosArgs),
    /// Chebyshev polynomial of the lemniscate |z^m - 1| = 1 of degree nm + l
    Lemniscate(LemniscateArgs),
    /// Scaled Jacobi-weight norms 2^{m-1} ||w T_m|| against Bernstein's limit
    Asymptotics(AsymptoticsArgs),
    /// Pipeline against the direct minimax oracle
    Oracle(OracleArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Norms(_) => "norms",
            Command::ErdosLax(_) => "erdos-lax",
            Command::Zeros(_) => "zeros",
            Command::Lemniscate(_) => "lemniscate",
            Command::Asymptotics(_) => "asymptotics",
            Command::Oracle(_) => "oracle",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolveArgs {
    /// Weight exponent s >= 0
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    /// Degree n >= 0
    #[arg(long)]
    pub n: usize,
    /// Remez stopping tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NormsArgs {
    /// Weight exponent s >= 0
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    /// Largest degree, at least 1
    #[arg(long)]
    pub n_max: usize,
    /// Remez stopping tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    /// equality for unimodular roots, generalized for |a_k| >= 1, turan for |a_k| <= 1
    Auto,
    Equality,
    Generalized,
    Turan,
    MaximalPoint,
    PolyaSzego,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Equality,
    Generalized,
    Turan,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(ArgGroup::new("input").required(true).args(["spec", "suite"])))]
pub struct ErdosLaxArgs {
    /// JSON file {"scale": [re, im], "factors": [{"root": [re, im], "exponent": s}]}
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Check applied to the spec file
    #[arg(long, value_enum, default_value_t = CheckMode::Auto)]
    pub mode: CheckMode,
    /// Run a seeded random suite instead of a spec file
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Number of random cases
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
    /// Seed of the random suite
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Relative tolerance of the verdicts
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Argument of zeta for polya-szego (zeta = e^{i angle})
    #[arg(long, default_value_t = std::f64::consts::PI, allow_negative_numbers = true)]
    pub zeta_angle: f64,
    /// Power l of z for polya-szego
    #[arg(long, default_value_t = 1)]
    pub l: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZerosArgs {
    /// Weight exponent s >= 0
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    /// Degree n >= 1
    #[arg(long)]
    pub n: usize,
    /// Radius r of the radial mass nu({|z| <= r})
    #[arg(long, default_value_t = 0.9)]
    pub radial: f64,
    /// Remez stopping tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LemniscateArgs {
    /// Number of petals m >= 1
    #[arg(long)]
    pub m: usize,
    /// Residue 0 <= l < m
    #[arg(long)]
    pub l: usize,
    /// Circle degree n >= 0
    #[arg(long)]
    pub n: usize,
    /// Remez stopping tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AsymptoticsArgs {
    /// Exponent of (1 - x)
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Exponent of (1 + x)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    /// First degree
    #[arg(long, default_value_t = 1)]
    pub m_min: usize,
    /// Last degree
    #[arg(long, default_value_t = 40)]
    pub m_max: usize,
    /// Remez stopping tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleMode {
    Free,
    Constrained,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    /// Weight exponent (s >= 1 in constrained mode)
    #[arg(long, allow_negative_numbers = true)]
    pub s: f64,
    /// Degree (at most 12 free, 8 constrained)
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = OracleMode::Free)]
    pub mode: OracleMode,
    /// Free-mode grid size on [0, pi]; 0 selects 8192 (n + 1)
    #[arg(long, default_value_t = 0)]
    pub grid: usize,
    /// Seed of the constrained multi-start
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Number of constrained starts
    #[arg(long, default_value_t = 8)]
    pub starts: usize,
    /// Also explore the odd zero at z = 1 (constrained, odd n)
    #[arg(long)]
    pub explore_sigma: bool,
    /// Solver tolerance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}
