use clap::{Args, Parser, Subcommand};
use fracrelax::verify::Suite;
use fracrelax::ModelKind;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser, Debug)]
#[command(
    name = "fracrelax",
    version,
    about = "Classical and fractional dielectric relaxation: evaluation, oracles and fitting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the three-parameter Mittag-Leffler function E^c_{a,b}(x)
    Ml(MlArgs),
    /// Tabulate the memory function M(t) of a model
    Kernel(KernelArgs),
    /// Tabulate the relaxation function phi(t)
    Eval(EvalArgs),
    /// Tabulate the permittivity spectrum (omega, eps', eps'')
    Spectrum(SpectrumArgs),
    /// Solve the kinetic equation numerically and compare with the closed form
    Solve(SolveArgs),
    /// Fit a model to a measured spectrum
    Fit(FitArgs),
    /// Run the built-in verification suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ModelFlags {
    /// debye, cc, cd or hn
    #[arg(long)]
    pub model: ModelKind,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Order of the fractional kinetic equation (1 = classical)
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct GridFlags {
    /// First abscissa
    #[arg(long)]
    pub tmin: Option<f64>,
    /// Last abscissa
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Logarithmic spacing (the default)
    #[arg(long, conflicts_with = "linear")]
    pub geometric: bool,
    /// Uniform spacing
    #[arg(long)]
    pub linear: bool,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct KindFlags {
    /// Classical relaxation (requires gamma = 1)
    #[arg(long, conflicts_with = "fractional")]
    pub classical: bool,
    /// Fractional relaxation (the default; identical to classical at gamma = 1)
    #[arg(long)]
    pub fractional: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    Alpha,
    Beta,
    Gamma,
    Sigma,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::Gamma => "gamma",
            SweepParam::Sigma => "sigma",
        }
    }
}

/// `NAME=v1,v2,...`
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

impl FromStr for Sweep {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, list) = s.split_once('=').ok_or("expected NAME=v1,v2,...")?;
        let param = match name.trim() {
            "alpha" => SweepParam::Alpha,
            "beta" => SweepParam::Beta,
            "gamma" => SweepParam::Gamma,
            "sigma" => SweepParam::Sigma,
            other => {
                return Err(format!(
                    "cannot sweep '{other}' (alpha, beta, gamma or sigma)"
                ))
            }
        };
        let values = list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("'{v}' is not a number"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err("sweep needs at least one value".into());
        }
        Ok(Sweep { param, values })
    }
}

#[derive(Args, Debug)]
pub struct MlArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Evaluate at -x instead of x
    #[arg(long)]
    pub negate: bool,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub grid: GridFlags,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub grid: GridFlags,
    #[arg(long)]
    pub sweep: Option<Sweep>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub kind: KindFlags,
    #[command(flatten)]
    pub grid: GridFlags,
    #[arg(long)]
    pub sweep: Option<Sweep>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    #[command(flatten)]
    pub grid: GridFlags,
    /// Static permittivity eps_0
    #[arg(long, default_value_t = 1.0)]
    pub eps_static: f64,
    /// High-frequency permittivity eps_inf
    #[arg(long, default_value_t = 0.0)]
    pub eps_inf: f64,
    /// Relative Gaussian noise applied to eps' and eps''
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub sweep: Option<Sweep>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// End of the time window
    #[arg(long, default_value_t = 5.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 512)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// CSV with header omega,eps_real,eps_imag
    pub input: PathBuf,
    #[arg(long)]
    pub model: ModelKind,
    /// Start values (default: exponents 0.5, sigma from the loss peak)
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Keep eps_0 and eps_inf fixed at these values
    #[arg(long, requires = "eps_inf")]
    pub eps_static: Option<f64>,
    #[arg(long, requires = "eps_static")]
    pub eps_inf: Option<f64>,
    /// Weight residuals by 1/|eps|
    #[arg(long)]
    pub relative: bool,
    /// Exit with status 1 if the fit did not converge
    #[arg(long)]
    pub strict: bool,
    /// Key-value result file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these suites (reductions, oracle, solver, recurrence, monotonicity)
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    /// Raise every error threshold to at least this value
    #[arg(long)]
    pub tol: Option<f64>,
}
