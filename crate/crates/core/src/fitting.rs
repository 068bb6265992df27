//! Recovery of (α, β, σ, ε₀, ε∞) from permittivity spectra by
//! Levenberg-Marquardt on the empirical susceptibility laws.
//!
//! Shape exponents are fitted through a logistic map onto (0, 1) and σ
//! through its logarithm, so every trial point is admissible.

use crate::error::{Error, Result};
use crate::model::{ModelKind, ModelParams};
use crate::relaxation::{permittivity, susceptibility_empirical, PermittivityScale};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub const MAX_ITERATIONS: usize = 200;
pub const RSS_REL_TOL: f64 = 1e-12;
pub const GRADIENT_TOL: f64 = 1e-10;
pub const DEGENERATE_CONDITION: f64 = 1e12;
const MIN_SAMPLES: usize = 5;
const LAMBDA_INIT: f64 = 1e-3;
const LAMBDA_MAX: f64 = 1e16;

/// One measured point of a permittivity spectrum; `eps_imag` is the loss ε″.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SusceptibilitySample {
    pub omega: f64,
    pub eps_real: f64,
    pub eps_imag: f64,
}

impl SusceptibilitySample {
    pub fn new(omega: f64, eps_real: f64, eps_imag: f64) -> Result<Self> {
        let s = Self {
            omega,
            eps_real,
            eps_imag,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega must be positive and finite, got {}",
                self.omega
            )));
        }
        if !(self.eps_real.is_finite() && self.eps_imag.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite permittivity at omega = {}",
                self.omega
            )));
        }
        Ok(())
    }
}

/// How residuals are scaled before squaring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Weighting {
    #[default]
    Unweighted,
    /// Divide both components by `|ε*_data|`.
    Relative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitProblem {
    pub data: Vec<SusceptibilitySample>,
    pub kind: ModelKind,
    /// Whether ε₀ and ε∞ are fitted; when false they are taken from `init`.
    pub fit_scale: bool,
    pub init: Option<(ModelParams, PermittivityScale)>,
    pub weighting: Weighting,
}

impl FitProblem {
    pub fn new(data: Vec<SusceptibilitySample>, kind: ModelKind) -> Self {
        Self {
            data,
            kind,
            fit_scale: true,
            init: None,
            weighting: Weighting::Unweighted,
        }
    }

    pub fn free_parameters(&self) -> usize {
        usize::from(self.kind.frees_alpha())
            + usize::from(self.kind.frees_beta())
            + 1
            + 2 * usize::from(self.fit_scale)
    }

    pub fn validate(&self) -> Result<()> {
        let need = MIN_SAMPLES.max(self.free_parameters() + 1);
        if self.data.len() < need {
            return Err(Error::InvalidParameter(format!(
                "{} samples given, at least {need} needed",
                self.data.len()
            )));
        }
        for s in &self.data {
            s.validate()?;
        }
        if !self.fit_scale && self.init.is_none() {
            return Err(Error::InvalidParameter(
                "a fixed permittivity scale must be supplied in init".into(),
            ));
        }
        if let Some((p, sc)) = &self.init {
            sc.validate()?;
            if p.kind != self.kind {
                return Err(Error::InvalidParameter(format!(
                    "init is a {} model, problem is {}",
                    p.kind, self.kind
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub params: ModelParams,
    pub scale: PermittivityScale,
    pub rss: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Ratio of extreme singular values of the Jacobian at the optimum.
    pub jacobian_condition: f64,
    pub degenerate_jacobian: bool,
    /// ∞-norm of Jᵀr at the optimum.
    pub gradient_norm: f64,
    /// rss after every accepted step, starting with the initial point.
    pub rss_trace: Vec<f64>,
}

/// Stacked `[ε′_model - ε′_data, ε″_model - ε″_data]`.
pub fn residuals(
    problem: &FitProblem,
    params: &ModelParams,
    scale: &PermittivityScale,
) -> Vec<f64> {
    let n = problem.data.len();
    let mut out = vec![0.0; 2 * n];
    for (i, s) in problem.data.iter().enumerate() {
        let eps = permittivity(
            scale,
            susceptibility_empirical(params, Complex64::new(0.0, s.omega)),
        );
        let w = match problem.weighting {
            Weighting::Unweighted => 1.0,
            Weighting::Relative => 1.0 / s.eps_real.hypot(s.eps_imag).max(f64::MIN_POSITIVE),
        };
        out[i] = w * (eps.re - s.eps_real);
        out[n + i] = w * (-eps.im - s.eps_imag);
    }
    out
}

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn logit(p: f64) -> f64 {
    // keep the start strictly inside (0, 1)
    let p = p.clamp(1e-6, 1.0 - 1e-6);
    (p / (1.0 - p)).ln()
}

/// Maps between the unconstrained vector θ and model parameters.
struct Layout {
    kind: ModelKind,
    fit_scale: bool,
    gamma: f64,
    fixed_scale: PermittivityScale,
}

impl Layout {
    fn encode(&self, p: &ModelParams, s: &PermittivityScale) -> DVector<f64> {
        let mut v = Vec::with_capacity(5);
        if self.kind.frees_alpha() {
            v.push(logit(p.alpha));
        }
        if self.kind.frees_beta() {
            v.push(logit(p.beta));
        }
        v.push(p.sigma.ln());
        if self.fit_scale {
            v.push(s.eps_static);
            v.push(s.eps_inf);
        }
        DVector::from_vec(v)
    }

    fn decode(&self, theta: &DVector<f64>) -> Option<(ModelParams, PermittivityScale)> {
        let mut it = theta.iter().copied();
        let alpha = if self.kind.frees_alpha() {
            logistic(it.next()?)
        } else {
            1.0
        };
        let beta = if self.kind.frees_beta() {
            logistic(it.next()?)
        } else {
            1.0
        };
        let sigma = it.next()?.exp();
        let scale = if self.fit_scale {
            PermittivityScale::new(it.next()?, it.next()?).ok()?
        } else {
            self.fixed_scale
        };
        // logistic(x) rounds to 0 or 1 far out; 1 is admissible, 0 is not
        let p = ModelParams::new(self.kind, alpha, beta, self.gamma, sigma).ok()?;
        Some((p, scale))
    }
}

fn rss_of(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

/// Starting point from the data: exponents 0.5, σ = 1/ω at the loss peak,
/// ε₀ and ε∞ from the extremes of ε′.
pub fn default_init(problem: &FitProblem) -> Result<(ModelParams, PermittivityScale)> {
    let peak = problem
        .data
        .iter()
        .max_by(|a, b| a.eps_imag.total_cmp(&b.eps_imag))
        .ok_or_else(|| Error::InvalidParameter("no samples".into()))?;
    let sigma = 1.0 / peak.omega;
    let alpha = if problem.kind.frees_alpha() { 0.5 } else { 1.0 };
    let beta = if problem.kind.frees_beta() { 0.5 } else { 1.0 };
    let hi = problem
        .data
        .iter()
        .map(|s| s.eps_real)
        .fold(f64::NEG_INFINITY, f64::max);
    let lo = problem
        .data
        .iter()
        .map(|s| s.eps_real)
        .fold(f64::INFINITY, f64::min);
    let scale = if hi > lo {
        PermittivityScale::new(hi, lo)?
    } else {
        PermittivityScale::new(hi + 1.0, lo)?
    };
    Ok((
        ModelParams::new(problem.kind, alpha, beta, 1.0, sigma)?,
        scale,
    ))
}

/// Forward-difference Jacobian of the residuals in θ.
fn jacobian(
    problem: &FitProblem,
    layout: &Layout,
    theta: &DVector<f64>,
    r0: &[f64],
) -> Option<DMatrix<f64>> {
    let m = r0.len();
    let n = theta.len();
    let mut jac = DMatrix::zeros(m, n);
    for j in 0..n {
        let step = f64::EPSILON.sqrt() * theta[j].abs().max(1.0);
        let mut shifted = theta.clone();
        shifted[j] += step;
        let (p, s) = layout.decode(&shifted)?;
        let r = residuals(problem, &p, &s);
        for i in 0..m {
            jac[(i, j)] = (r[i] - r0[i]) / step;
        }
    }
    Some(jac)
}

fn condition(jac: &DMatrix<f64>) -> f64 {
    let sv = jac.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// Damped Gauss-Newton fit. A run that stops on the iteration limit is
/// returned with `converged = false`; an ill-conditioned Jacobian is
/// reported through `degenerate_jacobian`.
pub fn fit(problem: &FitProblem) -> Result<FitResult> {
    problem.validate()?;
    let (p0, s0) = match &problem.init {
        Some(init) => *init,
        None => default_init(problem)?,
    };
    let layout = Layout {
        kind: problem.kind,
        fit_scale: problem.fit_scale,
        gamma: p0.gamma,
        fixed_scale: s0,
    };
    let mut theta = layout.encode(&p0, &s0);
    let (mut params, mut scale) = layout
        .decode(&theta)
        .ok_or_else(|| Error::InvalidParameter("initial point is not admissible".into()))?;
    let mut r = residuals(problem, &params, &scale);
    let mut rss = rss_of(&r);
    let mut trace = vec![rss];
    let mut lambda = LAMBDA_INIT;
    let mut iterations = 0;
    let mut converged = false;
    let mut jac = jacobian(problem, &layout, &theta, &r).ok_or_else(|| {
        Error::InvalidParameter("Jacobian step left the admissible region".into())
    })?;

    while iterations < MAX_ITERATIONS {
        let rv = DVector::from_column_slice(&r);
        let grad = jac.transpose() * &rv;
        if grad.amax() < GRADIENT_TOL {
            converged = true;
            break;
        }
        iterations += 1;
        let jtj = jac.transpose() * &jac;
        let mut accepted = false;
        while lambda <= LAMBDA_MAX {
            let mut a = jtj.clone();
            for k in 0..a.nrows() {
                a[(k, k)] += lambda * jtj[(k, k)].max(1e-12);
            }
            let step = match a.cholesky() {
                Some(ch) => ch.solve(&(-&grad)),
                None => {
                    lambda *= 2.0;
                    continue;
                }
            };
            let trial = &theta + &step;
            if let Some((tp, ts)) = layout.decode(&trial) {
                let tr = residuals(problem, &tp, &ts);
                let trss = rss_of(&tr);
                if trss.is_finite() && trss < rss {
                    let improvement = (rss - trss) / rss;
                    theta = trial;
                    params = tp;
                    scale = ts;
                    r = tr;
                    rss = trss;
                    trace.push(rss);
                    lambda = (lambda / 3.0).max(1e-15);
                    accepted = true;
                    if improvement < RSS_REL_TOL {
                        converged = true;
                    }
                    break;
                }
            }
            lambda *= 2.0;
        }
        if !accepted {
            // no damping reduces rss: stationary to rounding
            converged = true;
        }
        match jacobian(problem, &layout, &theta, &r) {
            Some(j) => jac = j,
            None => break,
        }
        if converged || !accepted {
            break;
        }
    }
    let gradient_norm = (jac.transpose() * DVector::from_column_slice(&r)).amax();
    let jacobian_condition = condition(&jac);
    Ok(FitResult {
        params,
        scale,
        rss,
        iterations,
        converged,
        jacobian_condition,
        degenerate_jacobian: !(jacobian_condition <= DEGENERATE_CONDITION),
        gradient_norm,
        rss_trace: trace,
    })
}

/// 64-bit linear congruential generator (Knuth's MMIX constants).
/// Uniform deviates use the top 53 bits; normals come from Box-Muller.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        self.state
    }

    /// Uniform on (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal, `sqrt(-2 ln u1) cos(2π u2)`.
    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

/// Synthetic spectrum with independent multiplicative Gaussian noise on
/// ε′ and ε″ (ε′ drawn first at each frequency).
pub fn synth(
    params: &ModelParams,
    scale: &PermittivityScale,
    omegas: &[f64],
    noise_rel: f64,
    seed: u64,
) -> Result<Vec<SusceptibilitySample>> {
    if !(noise_rel >= 0.0 && noise_rel.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "noise_rel must be finite and >= 0, got {noise_rel}"
        )));
    }
    scale.validate()?;
    let mut rng = Lcg::new(seed);
    omegas
        .iter()
        .map(|&w| {
            let eps = permittivity(
                scale,
                susceptibility_empirical(params, Complex64::new(0.0, w)),
            );
            let (mut re, mut loss) = (eps.re, -eps.im);
            if noise_rel > 0.0 {
                re *= 1.0 + noise_rel * rng.normal();
                loss *= 1.0 + noise_rel * rng.normal();
            }
            SusceptibilitySample::new(w, re, loss)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::geometric;

    fn hn_truth() -> (ModelParams, PermittivityScale) {
        (
            ModelParams::havriliak_negami(0.7, 0.6, 2.0).unwrap(),
            PermittivityScale::new(10.0, 2.0).unwrap(),
        )
    }

    fn omegas() -> Vec<f64> {
        geometric(1e-3, 1e3, 60).unwrap()
    }

    fn start(data: &[SusceptibilitySample]) -> (ModelParams, PermittivityScale) {
        let hi = data
            .iter()
            .map(|s| s.eps_real)
            .fold(f64::NEG_INFINITY, f64::max);
        let lo = data
            .iter()
            .map(|s| s.eps_real)
            .fold(f64::INFINITY, f64::min);
        (
            ModelParams::havriliak_negami(0.5, 0.5, 1.0).unwrap(),
            PermittivityScale::new(hi, lo).unwrap(),
        )
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn residuals_vanish_on_generating_model() {
        let (p, s) = hn_truth();
        let data = synth(&p, &s, &omegas(), 0.0, 1).unwrap();
        let prob = FitProblem::new(data, ModelKind::HavriliakNegami);
        assert!(residuals(&prob, &p, &s).iter().all(|&r| r == 0.0));

        let d = ModelParams::debye(1.0).unwrap();
        let data = synth(&d, &s, &omegas(), 0.0, 1).unwrap();
        let prob = FitProblem::new(data, ModelKind::ColeCole);
        let cc1 = ModelParams::cole_cole(1.0, 1.0).unwrap();
        assert!(residuals(&prob, &cc1, &s).iter().all(|&r| r == 0.0));
    }

    #[test]
    fn residual_direction_matches_sigma_derivative() {
        let d = ModelParams::debye(1.0).unwrap();
        let s = PermittivityScale::new(10.0, 2.0).unwrap();
        let w = omegas();
        let prob = FitProblem::new(synth(&d, &s, &w, 0.0, 1).unwrap(), ModelKind::Debye);
        let r = residuals(&prob, &ModelParams::debye(1.01).unwrap(), &s);
        let n = w.len();
        for (i, &om) in w.iter().enumerate() {
            // ε′ = ε∞ + Δ/(1+ω²σ²) falls with σ; ε″ = Δωσ/(1+ω²σ²) rises for ωσ < 1
            assert!(r[i] < 0.0);
            let expected = if om < 0.99 {
                1.0
            } else if om > 1.01 {
                -1.0
            } else {
                0.0
            };
            if expected != 0.0 {
                assert_eq!(r[n + i].signum(), expected, "omega {om}");
            }
        }
    }

    #[test]
    fn noise_free_recovery() {
        let (p, s) = hn_truth();
        let data = synth(&p, &s, &omegas(), 0.0, 1).unwrap();
        let mut prob = FitProblem::new(data.clone(), ModelKind::HavriliakNegami);
        prob.init = Some(start(&data));
        let res = fit(&prob).unwrap();
        assert!(res.converged);
        assert!(rel(res.params.alpha, 0.7) < 1e-4);
        assert!(rel(res.params.beta, 0.6) < 1e-4);
        assert!(rel(res.params.sigma, 2.0) < 1e-4);
        assert!(rel(res.scale.eps_static, 10.0) < 1e-4);
        assert!(rel(res.scale.eps_inf, 2.0) < 1e-4);
        assert!(res.rss_trace.windows(2).all(|w| w[1] <= w[0]));
        assert!(!res.degenerate_jacobian);

        // restarting at the optimum does not move it
        let mut again = prob.clone();
        again.init = Some((res.params, res.scale));
        let res2 = fit(&again).unwrap();
        assert!((res2.rss - res.rss).abs() <= 1e-14 * res.rss.max(1e-300) + 1e-28);
    }

    #[test]
    fn noisy_recovery_fixed_seed() {
        let (p, s) = hn_truth();
        let data = synth(&p, &s, &omegas(), 0.01, 42).unwrap();
        let mut prob = FitProblem::new(data.clone(), ModelKind::HavriliakNegami);
        prob.init = Some(start(&data));
        let res = fit(&prob).unwrap();
        assert!(res.converged);
        assert!(rel(res.params.alpha, 0.7) < 5e-2, "{}", res.params);
        assert!(rel(res.params.beta, 0.6) < 5e-2, "{}", res.params);
        assert!(rel(res.params.sigma, 2.0) < 5e-2, "{}", res.params);
    }

    // Individual seeds can land outside 5e-2 on σ because the least-squares
    // estimator itself scatters that far; the fitter must still reach the
    // optimum, and the typical error must sit inside the tolerance.
    #[test]
    fn noisy_recovery_over_seeds() {
        let (p, s) = hn_truth();
        let mut worst = Vec::new();
        for seed in 0..20 {
            let data = synth(&p, &s, &omegas(), 0.01, seed).unwrap();
            let mut prob = FitProblem::new(data.clone(), ModelKind::HavriliakNegami);
            prob.init = Some(start(&data));
            let res = fit(&prob).unwrap();
            assert!(res.converged, "seed {seed}");
            assert!(
                res.rss <= rss_of(&residuals(&prob, &p, &s)),
                "seed {seed}: fit above truth"
            );
            worst.push(
                rel(res.params.alpha, 0.7)
                    .max(rel(res.params.beta, 0.6))
                    .max(rel(res.params.sigma, 2.0)),
            );
        }
        worst.sort_by(f64::total_cmp);
        let median = 0.5 * (worst[9] + worst[10]);
        assert!(median < 5e-2, "median {median}");
        assert!(worst[19] < 0.25, "worst {}", worst[19]);
    }

    #[test]
    fn debye_data_with_havriliak_negami_model() {
        let d = ModelParams::debye(1.0).unwrap();
        let s = PermittivityScale::new(10.0, 2.0).unwrap();
        let data = synth(&d, &s, &omegas(), 0.0, 1).unwrap();
        let res = fit(&FitProblem::new(data, ModelKind::HavriliakNegami)).unwrap();
        assert!(
            1.0 - res.params.alpha < 1e-3 && 1.0 - res.params.beta < 1e-3,
            "{}",
            res.params
        );
    }

    #[test]
    fn jacobian_agrees_with_central_differences() {
        let (p, s) = hn_truth();
        let data = synth(&p, &s, &omegas(), 0.01, 7).unwrap();
        let prob = FitProblem::new(data, ModelKind::HavriliakNegami);
        let layout = Layout {
            kind: prob.kind,
            fit_scale: true,
            gamma: 1.0,
            fixed_scale: s,
        };
        let point = (
            ModelParams::havriliak_negami(0.45, 0.8, 0.7).unwrap(),
            PermittivityScale::new(9.0, 2.5).unwrap(),
        );
        let theta = layout.encode(&point.0, &point.1);
        let r0 = residuals(&prob, &point.0, &point.1);
        let jac = jacobian(&prob, &layout, &theta, &r0).unwrap();
        for j in 0..theta.len() {
            let hstep = 0.5 * f64::EPSILON.sqrt() * theta[j].abs().max(1.0);
            let shift = |d: f64| {
                let mut t = theta.clone();
                t[j] += d;
                let (pp, ss) = layout.decode(&t).unwrap();
                residuals(&prob, &pp, &ss)
            };
            let (rp, rm) = (shift(hstep), shift(-hstep));
            let col: Vec<f64> = (0..r0.len())
                .map(|i| (rp[i] - rm[i]) / (2.0 * hstep))
                .collect();
            let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            let diff = (0..r0.len())
                .map(|i| (jac[(i, j)] - col[i]).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(diff <= 1e-5 * norm, "column {j}: {diff} vs {norm}");
        }
    }

    #[test]
    fn problem_validation() {
        let (p, s) = hn_truth();
        let few = synth(&p, &s, &[1.0, 2.0, 3.0, 4.0, 5.0], 0.0, 1).unwrap();
        assert!(fit(&FitProblem::new(few.clone(), ModelKind::HavriliakNegami)).is_err());
        assert!(fit(&FitProblem::new(few, ModelKind::Debye)).is_ok());
        let mut fixed = FitProblem::new(
            synth(&p, &s, &omegas(), 0.0, 1).unwrap(),
            ModelKind::HavriliakNegami,
        );
        fixed.fit_scale = false;
        assert!(fit(&fixed).is_err());
        fixed.init = Some(start(&fixed.data));
        fixed.init.as_mut().unwrap().1 = s;
        let res = fit(&fixed).unwrap();
        assert!(rel(res.params.sigma, 2.0) < 1e-6);
        assert!(SusceptibilitySample::new(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn synth_is_deterministic_with_the_stated_noise_level() {
        let (p, s) = hn_truth();
        let w = omegas();
        let a = synth(&p, &s, &w, 0.01, 42).unwrap();
        assert_eq!(a, synth(&p, &s, &w, 0.01, 42).unwrap());
        assert_ne!(a, synth(&p, &s, &w, 0.01, 43).unwrap());
        let exact = synth(&p, &s, &w, 0.0, 42).unwrap();
        let ratios: Vec<f64> = a
            .iter()
            .zip(&exact)
            .flat_map(|(n, e)| [n.eps_real / e.eps_real - 1.0, n.eps_imag / e.eps_imag - 1.0])
            .collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let sd = (ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>()
            / (ratios.len() - 1) as f64)
            .sqrt();
        assert!((sd - 0.01).abs() < 0.002, "{sd}");
    }

    #[test]
    fn lcg_first_outputs() {
        let mut g = Lcg::new(0);
        assert_eq!(g.next_u64(), Lcg::INCREMENT);
        assert_eq!(
            g.next_u64(),
            Lcg::INCREMENT
                .wrapping_mul(Lcg::MULTIPLIER)
                .wrapping_add(Lcg::INCREMENT)
        );
        let u = Lcg::new(1).uniform();
        assert!(u > 0.0 && u < 1.0);
    }
}
