//! Relaxation functions φ(t), their transforms φ̃(s), and the complex
//! susceptibility laws.
//!
//! The Havriliak-Negami family is written through the excess
//! `E^β_{α,b}(-y) - y^{-β}/Γ(b-αβ)`, so the long-time tails come out
//! without subtracting two nearly equal numbers.

use crate::error::{Error, Result};
use crate::mlcore::{ml1, ml2, prabhakar_excess, EvalOptions, MLArgs};
use crate::model::{ModelKind, ModelParams};
use crate::special::{expm1_c, gamma_q, ln1p_c, rgamma};
use num_complex::Complex64;

/// Static and high-frequency dielectric constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PermittivityScale {
    pub eps_static: f64,
    pub eps_inf: f64,
}

impl PermittivityScale {
    pub fn new(eps_static: f64, eps_inf: f64) -> Result<Self> {
        let s = Self {
            eps_static,
            eps_inf,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_static.is_finite() && self.eps_inf.is_finite())
            || self.eps_static <= self.eps_inf
        {
            return Err(Error::InvalidParameter(format!(
                "need finite eps_static > eps_inf, got {} and {}",
                self.eps_static, self.eps_inf
            )));
        }
        Ok(())
    }

    pub fn strength(&self) -> f64 {
        self.eps_static - self.eps_inf
    }
}

/// Sample values, real or complex.
#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl Values {
    pub fn len(&self) -> usize {
        match self {
            Values::Real(v) => v.len(),
            Values::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match self {
            Values::Real(v) => Some(v),
            Values::Complex(_) => None,
        }
    }

    pub fn as_complex(&self) -> Option<&[Complex64]> {
        match self {
            Values::Complex(v) => Some(v),
            Values::Real(_) => None,
        }
    }
}

/// A tabulated function on a strictly increasing grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    pub abscissae: Vec<f64>,
    pub values: Values,
    pub meta: String,
}

impl SampledFunction {
    pub fn new(abscissae: Vec<f64>, values: Values, meta: impl Into<String>) -> Result<Self> {
        if abscissae.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} abscissae but {} values",
                abscissae.len(),
                values.len()
            )));
        }
        check_increasing(&abscissae)?;
        Ok(Self {
            abscissae,
            values,
            meta: meta.into(),
        })
    }

    pub fn real(abscissae: Vec<f64>, values: Vec<f64>, meta: impl Into<String>) -> Result<Self> {
        Self::new(abscissae, Values::Real(values), meta)
    }

    pub fn len(&self) -> usize {
        self.abscissae.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissae.is_empty()
    }
}

pub(crate) fn check_increasing(xs: &[f64]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("abscissae must be finite".into()));
    }
    if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!(
            "abscissae must be strictly increasing (index {})",
            i + 1
        )));
    }
    Ok(())
}

fn opts() -> EvalOptions {
    EvalOptions::default()
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::DomainError(format!(
            "time must be finite and non-negative, got {t}"
        )));
    }
    Ok(())
}

/// Classical relaxation function, φ(0) = 1. The fractional order is ignored.
pub fn relax_classical(p: &ModelParams, t: f64) -> Result<f64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(1.0);
    }
    let x = t / p.sigma;
    match p.kind {
        ModelKind::Debye => Ok((-x).exp()),
        ModelKind::ColeCole => ml1(p.alpha, -x.powf(p.alpha), &opts()),
        ModelKind::ColeDavidson => Ok(gamma_q(p.beta, x)),
        // with α = 1 the law is Cole-Davidson and the incomplete gamma form is exact
        ModelKind::HavriliakNegami if p.alpha == 1.0 => Ok(gamma_q(p.beta, x)),
        ModelKind::HavriliakNegami => {
            let y = x.powf(p.alpha);
            let args = MLArgs::new(p.alpha, p.alpha * p.beta + 1.0, p.beta)?;
            Ok(-y.powf(p.beta) * prabhakar_excess(&args, y, &opts())?)
        }
    }
}

/// Solution of the fractional kinetic equation of order γ. At γ = 1 this is
/// exactly [`relax_classical`]; for γ < 1 it diverges like t^{γ-1} at 0.
pub fn relax_fractional(p: &ModelParams, t: f64) -> Result<f64> {
    if p.gamma == 1.0 {
        return relax_classical(p, t);
    }
    check_time(t)?;
    if t == 0.0 {
        return Err(Error::DomainError(format!(
            "fractional relaxation of order {} diverges at t = 0",
            p.gamma
        )));
    }
    let g = p.gamma;
    let pre = t.powf(g - 1.0);
    let x = t / p.sigma;
    let cd = |beta: f64| -> Result<f64> {
        let args = MLArgs::new(1.0, beta + g, beta)?;
        Ok(-pre * x.powf(beta) * prabhakar_excess(&args, x, &opts())?)
    };
    match p.kind {
        ModelKind::Debye => Ok(pre * ml2(1.0, g, -x, &opts())?),
        ModelKind::ColeCole => Ok(pre * ml2(p.alpha, g, -x.powf(p.alpha), &opts())?),
        ModelKind::ColeDavidson => cd(p.beta),
        ModelKind::HavriliakNegami if p.alpha == 1.0 => cd(p.beta),
        ModelKind::HavriliakNegami => {
            let y = x.powf(p.alpha);
            let args = MLArgs::new(p.alpha, p.alpha * p.beta + g, p.beta)?;
            Ok(-pre * y.powf(p.beta) * prabhakar_excess(&args, y, &opts())?)
        }
    }
}

/// Laplace transform φ̃(s) of the fractional relaxation function; `Re(s) > 0`.
pub fn relax_laplace(p: &ModelParams, s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::DomainError(format!(
            "Laplace variable needs finite Re(s) > 0, got {s}"
        )));
    }
    Ok(relax_laplace_principal(p, s))
}

/// φ̃(s) continued to the plane cut along (-∞, 0], as contour inversion needs.
pub fn relax_laplace_principal(p: &ModelParams, s: Complex64) -> Complex64 {
    let g = p.gamma;
    let sigma = p.sigma;
    match p.kind {
        ModelKind::Debye => s.powf(1.0 - g) / (s + 1.0 / sigma),
        ModelKind::ColeCole => s.powf(p.alpha - g) / (s.powf(p.alpha) + sigma.powf(-p.alpha)),
        ModelKind::ColeDavidson | ModelKind::HavriliakNegami => {
            let w = (s * sigma).powf(p.alpha);
            // 1 - (1+w)^{-β} without cancellation at small w
            let one_minus = -expm1_c(ln1p_c(w) * (-p.beta));
            s.powf(-g) * one_minus
        }
    }
}

/// Empirical susceptibility `1/(1+(sσ)^α)^β`, principal branch; 1 at s = 0.
pub fn susceptibility_empirical(p: &ModelParams, s: Complex64) -> Complex64 {
    if s == Complex64::new(0.0, 0.0) {
        return Complex64::new(1.0, 0.0);
    }
    let z = s * p.sigma;
    let w = if p.alpha == 1.0 { z } else { z.powf(p.alpha) };
    if p.beta == 1.0 {
        1.0 / (1.0 + w)
    } else {
        (ln1p_c(w) * (-p.beta)).exp()
    }
}

/// Susceptibility of the fractional model, `1 - s^γ φ̃(s)`. Defined for
/// `Re(s) > 0` and on the imaginary axis away from 0.
pub fn susceptibility_fractional(p: &ModelParams, s: Complex64) -> Result<Complex64> {
    if s.re < 0.0 || s == Complex64::new(0.0, 0.0) || !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::DomainError(format!(
            "susceptibility needs Re(s) >= 0 and s != 0, got {s}"
        )));
    }
    Ok(1.0 - s.powf(p.gamma) * relax_laplace_principal(p, s))
}

/// `ε* = ε∞ + (ε₀ - ε∞)χ`; loss is `-Im ε*`.
pub fn permittivity(scale: &PermittivityScale, chi: Complex64) -> Complex64 {
    scale.eps_inf + scale.strength() * chi
}

/// Relaxation function on a grid, classical or fractional.
pub fn tabulate(p: &ModelParams, ts: &[f64], fractional: bool) -> Result<SampledFunction> {
    let f = if fractional {
        relax_fractional
    } else {
        relax_classical
    };
    let values = ts.iter().map(|&t| f(p, t)).collect::<Result<Vec<_>>>()?;
    SampledFunction::real(ts.to_vec(), values, p.to_string())
}

/// Permittivity spectrum at s = iω.
pub fn spectrum(
    p: &ModelParams,
    scale: &PermittivityScale,
    omegas: &[f64],
) -> Result<SampledFunction> {
    scale.validate()?;
    let values = omegas
        .iter()
        .map(|&w| permittivity(scale, susceptibility_empirical(p, Complex64::new(0.0, w))))
        .collect();
    SampledFunction::new(omegas.to_vec(), Values::Complex(values), p.to_string())
}

/// `1/Γ(γ)`, the coefficient of the t^{γ-1} singularity of every fractional solution.
pub fn fractional_leading_coefficient(p: &ModelParams) -> f64 {
    rgamma(p.gamma)
}
