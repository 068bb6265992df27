//! Parameterization shared by every relaxation law.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// The four nested empirical relaxation laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Debye,
    ColeCole,
    ColeDavidson,
    HavriliakNegami,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::Debye,
        ModelKind::ColeCole,
        ModelKind::ColeDavidson,
        ModelKind::HavriliakNegami,
    ];

    /// Short name used on the command line and in CSV provenance lines.
    pub fn short_name(self) -> &'static str {
        match self {
            ModelKind::Debye => "debye",
            ModelKind::ColeCole => "cc",
            ModelKind::ColeDavidson => "cd",
            ModelKind::HavriliakNegami => "hn",
        }
    }

    pub fn frees_alpha(self) -> bool {
        matches!(self, ModelKind::ColeCole | ModelKind::HavriliakNegami)
    }

    pub fn frees_beta(self) -> bool {
        matches!(self, ModelKind::ColeDavidson | ModelKind::HavriliakNegami)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "debye" | "d" => Ok(ModelKind::Debye),
            "cc" | "cole-cole" | "colecole" => Ok(ModelKind::ColeCole),
            "cd" | "cole-davidson" | "coledavidson" => Ok(ModelKind::ColeDavidson),
            "hn" | "havriliak-negami" | "havriliaknegami" => Ok(ModelKind::HavriliakNegami),
            other => Err(Error::InvalidParameter(format!(
                "unknown model kind '{other}'"
            ))),
        }
    }
}

/// Shape exponents, fractional order and relaxation time of one model.
///
/// `alpha` and `beta` are the Cole-Cole and Cole-Davidson exponents,
/// `gamma` the order of the fractional kinetic equation (1 for the
/// classical laws) and `sigma` the characteristic relaxation time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub kind: ModelKind,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub sigma: f64,
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in (0, 1], got {v}"
        )));
    }
    Ok(())
}

impl ModelParams {
    /// Validates all invariants, including the exponents a kind pins to 1.
    pub fn new(kind: ModelKind, alpha: f64, beta: f64, gamma: f64, sigma: f64) -> Result<Self> {
        check_unit("alpha", alpha)?;
        check_unit("beta", beta)?;
        check_unit("gamma", gamma)?;
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        if !kind.frees_alpha() && alpha != 1.0 {
            return Err(Error::InvalidParameter(format!(
                "{kind} model requires alpha = 1, got {alpha}"
            )));
        }
        if !kind.frees_beta() && beta != 1.0 {
            return Err(Error::InvalidParameter(format!(
                "{kind} model requires beta = 1, got {beta}"
            )));
        }
        Ok(Self {
            kind,
            alpha,
            beta,
            gamma,
            sigma,
        })
    }

    pub fn debye(sigma: f64) -> Result<Self> {
        Self::new(ModelKind::Debye, 1.0, 1.0, 1.0, sigma)
    }

    pub fn cole_cole(alpha: f64, sigma: f64) -> Result<Self> {
        Self::new(ModelKind::ColeCole, alpha, 1.0, 1.0, sigma)
    }

    pub fn cole_davidson(beta: f64, sigma: f64) -> Result<Self> {
        Self::new(ModelKind::ColeDavidson, 1.0, beta, 1.0, sigma)
    }

    pub fn havriliak_negami(alpha: f64, beta: f64, sigma: f64) -> Result<Self> {
        Self::new(ModelKind::HavriliakNegami, alpha, beta, 1.0, sigma)
    }

    /// Same law with fractional order `gamma`.
    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Self::new(self.kind, self.alpha, self.beta, gamma, self.sigma)
    }

    /// Leading exponent ρ of the memory function, M(t) ~ t^{ρ-1} as t → 0.
    pub fn kernel_exponent(&self) -> f64 {
        self.alpha * self.beta
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} alpha={} beta={} gamma={} sigma={}",
            self.kind, self.alpha, self.beta, self.gamma, self.sigma
        )
    }
}
