//! Time-domain solution of the (fractional) kinetic equation in its
//! integrated form `φ + M∗φ = t^{γ-1}/Γ(γ)`, by product integration.
//!
//! The solution is split as `φ = G + ψ`. `G` collects the fractional powers
//! of t that the large-s expansion of `s^{-γ}/(1 + M̃(s))` predicts below
//! t²; it carries the non-smooth behaviour at the origin. The remainder `ψ`
//! vanishes like t² and is found by piecewise-linear product integration of
//! `ψ + M∗ψ = f - G - M∗G`. For the pure power kernels (Debye, Cole-Cole)
//! the right-hand side is the first omitted term; otherwise `M∗G` is
//! integrated with the kernel values cached per lag.

use crate::error::{Error, Result};
use crate::kernels::{effective_kind, memory_time_unchecked, SeriesTruncation};
use crate::model::{ModelKind, ModelParams};
use crate::quad::GaussLegendre;
use crate::relaxation::{SampledFunction, Values};
use crate::special::{gamma, rgamma};

pub const MIN_STEPS: usize = 16;
const MIN_DIAGONAL: f64 = 1e-8;
/// ψ is made to vanish at least like t^{this} at the origin.
const SUBTRACTION_TARGET: f64 = 2.0;
const MAX_SUBTRACTION_TERMS: usize = 16;

/// Uniform grid `t_k = k·h`, `h = t_end/steps`, anchored at the origin;
/// points before `t_start` are solved for but not reported.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
}

impl SolverGrid {
    pub fn new(t_start: f64, t_end: f64, steps: usize) -> Result<Self> {
        let g = Self {
            t_start,
            t_end,
            steps,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < MIN_STEPS {
            return Err(Error::GridTooCoarse {
                steps: self.steps,
                min: MIN_STEPS,
            });
        }
        if !(self.t_start >= 0.0 && self.t_end.is_finite() && self.t_end > self.t_start) {
            return Err(Error::InvalidParameter(format!(
                "solver grid needs 0 <= t_start < t_end, got [{}, {}]",
                self.t_start, self.t_end
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        self.t_end / self.steps as f64
    }
}

/// The second-kind Volterra problem for one parameter set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolterraProblem {
    pub params: ModelParams,
    pub forcing_gamma: f64,
}

impl VolterraProblem {
    pub fn new(params: ModelParams) -> Self {
        Self {
            params,
            forcing_gamma: params.gamma,
        }
    }

    /// `t^{γ-1}/Γ(γ)`, identically 1 at γ = 1.
    pub fn forcing(&self, t: f64) -> f64 {
        if self.forcing_gamma == 1.0 {
            1.0
        } else {
            t.powf(self.forcing_gamma - 1.0) * rgamma(self.forcing_gamma)
        }
    }
}

/// Closed-form part `G(t) = Σ c_j t^{e_j+γ-1}/Γ(e_j+γ)`, the first terms of
/// the large-s expansion of `s^{-γ}/(1 + M̃(s))`.
struct Subtraction {
    gamma: f64,
    /// (coefficient with 1/Γ folded in, power of t); the first entry is the forcing
    terms: Vec<(f64, f64)>,
    /// first omitted term, used when the kernel is a pure power
    omitted: (f64, f64),
}

impl Subtraction {
    fn new(p: &ModelParams, kind: ModelKind) -> Self {
        let (g, sigma) = (p.gamma, p.sigma);
        let keep = |e: f64| e + g - 1.0 < SUBTRACTION_TARGET;
        let mut raw: Vec<(f64, f64)> = vec![(1.0, 0.0)];
        let mut omitted = (0.0, f64::INFINITY);
        match kind {
            // 1/(1 + (sσ)^{-ρ}) = Σ (-1)^k (sσ)^{-kρ}
            ModelKind::Debye | ModelKind::ColeCole => {
                let rho = p.kernel_exponent();
                for k in 1..=MAX_SUBTRACTION_TERMS {
                    let e = k as f64 * rho;
                    let c = if k % 2 == 0 { 1.0 } else { -1.0 } * sigma.powf(-e);
                    if !keep(e) || k == MAX_SUBTRACTION_TERMS {
                        omitted = (c, e);
                        break;
                    }
                    raw.push((c, e));
                }
            }
            // 1 - (1 + (sσ)^α)^{-β} = Σ_j (-1)^j (β)_j/j! (sσ)^{-α(β+j)}
            ModelKind::ColeDavidson | ModelKind::HavriliakNegami => {
                let (alpha, beta) = (p.alpha, p.beta);
                let mut binom = 1.0;
                for j in 0..MAX_SUBTRACTION_TERMS {
                    if j > 0 {
                        binom *= -(beta + j as f64 - 1.0) / j as f64;
                    }
                    let e = alpha * (beta + j as f64);
                    if !keep(e) {
                        break;
                    }
                    raw.push((-binom * sigma.powf(-e), e));
                }
            }
        }
        let fold = |(c, e): (f64, f64)| (c * rgamma(e + g), e + g - 1.0);
        Self {
            gamma: g,
            terms: raw.into_iter().map(fold).collect(),
            omitted: fold(omitted),
        }
    }

    fn sum(&self, t: f64, skip_forcing: bool) -> f64 {
        let lt = t.ln();
        self.terms[usize::from(skip_forcing)..]
            .iter()
            .map(|&(c, e)| c * (e * lt).exp())
            .sum()
    }

    fn value(&self, t: f64) -> f64 {
        self.sum(t, false)
    }

    /// `f - G`, formed without the forcing term.
    fn forcing_excess(&self, t: f64) -> f64 {
        -self.sum(t, true)
    }

    fn omitted(&self, t: f64) -> f64 {
        self.omitted.0 * t.powf(self.omitted.1)
    }

    /// Smallest positive power of t in `G`, below which it is non-smooth.
    fn roughness(&self) -> f64 {
        self.terms
            .iter()
            .skip(1)
            .map(|&(_, e)| e + 1.0 - self.gamma)
            .fold(1.0, f64::min)
    }
}

/// Kernel weights on one lag interval `[mh, (m+1)h]`: positions in [0, 1]
/// and `w·M(u)` products.
struct LagRule {
    x: Vec<f64>,
    a: Vec<f64>,
}

struct Kernel<'a> {
    p: &'a ModelParams,
    trunc: SeriesTruncation,
    rho: f64,
}

impl Kernel<'_> {
    fn eval(&self, u: f64) -> Result<f64> {
        memory_time_unchecked(self.p, u, &self.trunc)
            .map_err(|e| Error::SingularKernel(format!("M({u}) for {}: {e}", self.p)))
    }
}

fn power_moments(h: f64, rho: f64, lead: f64, m: usize) -> (f64, f64) {
    let mf = m as f64;
    // (m+1)^a - m^a without cancellation
    let diff = |a: f64| {
        if m == 0 {
            1.0
        } else {
            mf.powf(a) * (a * (1.0 / mf).ln_1p()).exp_m1()
        }
    };
    let scale = lead * h.powf(rho);
    let mu0 = scale * diff(rho) / rho;
    let mu1 = scale * (diff(rho + 1.0) / (rho + 1.0) - mf * diff(rho) / rho);
    (mu0, mu1)
}

/// φ on the grid.
pub fn solve(p: &ModelParams, grid: &SolverGrid) -> Result<SampledFunction> {
    grid.validate()?;
    let gamma_order = p.gamma;
    if gamma_order < 1.0 && grid.t_start <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "fractional order {gamma_order} needs t_start > 0 (the solution is unbounded at 0)"
        )));
    }
    let n_steps = grid.steps;
    let h = grid.step();
    let kind = effective_kind(p);
    let rho = p.kernel_exponent();
    let lead = p.sigma.powf(-rho) * rgamma(rho);
    let kernel = Kernel {
        p,
        trunc: SeriesTruncation::default(),
        rho,
    };
    let sub = Subtraction::new(p, kind);
    let exact_power = matches!(kind, ModelKind::Debye | ModelKind::ColeCole);

    let times: Vec<f64> = (0..=n_steps).map(|k| k as f64 * h).collect();
    let (mu0, mu1, rules) = if exact_power {
        let (m0, m1): (Vec<f64>, Vec<f64>) =
            (0..n_steps).map(|m| power_moments(h, rho, lead, m)).unzip();
        (m0, m1, Vec::new())
    } else {
        let rules = lag_rules(&kernel, h, n_steps)?;
        let m0 = rules.iter().map(|r| r.a.iter().sum()).collect();
        let m1 = rules
            .iter()
            .map(|r| r.a.iter().zip(&r.x).map(|(a, x)| a * x).sum())
            .collect();
        (m0, m1, rules)
    };

    // right-hand side of ψ + M∗ψ = r
    let mut rhs = vec![0.0; n_steps + 1];
    for n in 1..=n_steps {
        let t = times[n];
        rhs[n] = if exact_power {
            sub.omitted(t)
        } else {
            sub.forcing_excess(t) - convolve_subtraction(&kernel, &sub, &rules, h, n)?
        };
    }

    let diag = 1.0 + mu0[0] - mu1[0];
    if diag.abs() < MIN_DIAGONAL || !diag.is_finite() {
        return Err(Error::IllConditioned {
            step: 1,
            diagonal: diag,
        });
    }
    // hat-function weights at lag k: W_0 = μ0_0 - μ1_0, W_k = μ1_{k-1} + μ0_k - μ1_k
    let weights: Vec<f64> = (0..n_steps)
        .map(|k| {
            if k == 0 {
                mu0[0] - mu1[0]
            } else {
                mu1[k - 1] + mu0[k] - mu1[k]
            }
        })
        .collect();
    let mut psi = vec![0.0; n_steps + 1];
    for n in 1..=n_steps {
        // ψ_0 = 0
        let history: f64 = (1..n).map(|k| weights[k] * psi[n - k]).sum();
        psi[n] = (rhs[n] - history) / diag;
    }

    let first = times
        .iter()
        .position(|&t| t >= grid.t_start - 1e-9 * h)
        .unwrap_or(n_steps);
    let first = if gamma_order < 1.0 {
        first.max(1)
    } else {
        first
    };
    let abscissae = times[first..].to_vec();
    let values = (first..=n_steps)
        .map(|n| {
            if n == 0 {
                1.0
            } else {
                sub.value(times[n]) + psi[n]
            }
        })
        .collect();
    SampledFunction::new(
        abscissae,
        Values::Real(values),
        format!("solve {p} steps={n_steps}"),
    )
}

/// Gauss-Legendre nodes and kernel values on every lag interval; the
/// first interval uses `u = h w^{1/ρ}` to absorb the singularity.
fn lag_rules(kernel: &Kernel, h: f64, n_steps: usize) -> Result<Vec<LagRule>> {
    let g16 = GaussLegendre::new(16);
    let g12 = GaussLegendre::new(12);
    let g6 = GaussLegendre::new(6);
    let rho = kernel.rho;
    let mut rules = Vec::with_capacity(n_steps);
    let mut first = LagRule {
        x: Vec::new(),
        a: Vec::new(),
    };
    for (&w, &wt) in g16.nodes.iter().zip(&g16.weights) {
        let x = w.powf(1.0 / rho);
        let u = h * x;
        // M(u)·du = [M(u) u^{1-ρ}] h^ρ/ρ dw
        let smooth = kernel.eval(u)? * u.powf(1.0 - rho);
        first.x.push(x);
        first.a.push(wt * smooth * h.powf(rho) / rho);
    }
    rules.push(first);
    for m in 1..n_steps {
        let gl = if m < 8 { &g12 } else { &g6 };
        let mut r = LagRule {
            x: Vec::with_capacity(gl.nodes.len()),
            a: Vec::with_capacity(gl.nodes.len()),
        };
        for (&x, &wt) in gl.nodes.iter().zip(&gl.weights) {
            let u = (m as f64 + x) * h;
            r.x.push(x);
            r.a.push(wt * h * kernel.eval(u)?);
        }
        rules.push(r);
    }
    Ok(rules)
}

/// `(M∗G)(t_n)`: cached lag rules away from τ = 0, a graded rule on the
/// interval touching τ = 0.
fn convolve_subtraction(
    kernel: &Kernel,
    sub: &Subtraction,
    rules: &[LagRule],
    h: f64,
    n: usize,
) -> Result<f64> {
    let t = n as f64 * h;
    // τ = h v^q makes τ^{γ-1} dτ and the τ^{e} factors smooth in v
    let q = 1.0 / (sub.gamma * sub.roughness()).min(1.0);
    let gl = GaussLegendre::new(12);
    if n == 1 {
        // both singular ends in one interval: graded rules from each side
        let half = 0.5 * h;
        let mut acc = 0.0;
        for (&v, &wt) in gl.nodes.iter().zip(&gl.weights) {
            let tau = half * v.powf(q);
            acc += wt * half * q * v.powf(q - 1.0) * kernel.eval(t - tau)? * sub.value(tau);
            let r = 1.0 / kernel.rho;
            let u = half * v.powf(r);
            let smooth = kernel.eval(u)? * u.powf(1.0 - kernel.rho);
            acc += wt * smooth * half.powf(kernel.rho) / kernel.rho * sub.value(t - u);
        }
        return Ok(acc);
    }
    let mut acc = 0.0;
    for (m, rule) in rules.iter().enumerate().take(n - 1) {
        for (x, a) in rule.x.iter().zip(&rule.a) {
            acc += a * sub.value(t - (m as f64 + x) * h);
        }
    }
    for (&v, &wt) in gl.nodes.iter().zip(&gl.weights) {
        let tau = h * v.powf(q);
        let jac = h * q * v.powf(q - 1.0);
        acc += wt * jac * kernel.eval(t - tau)? * sub.value(tau);
    }
    Ok(acc)
}

/// Grünwald-Letnikov approximation of the Riemann-Liouville derivative of
/// order γ on a uniform grid. The sum only covers the samples given, so a
/// grid not starting at 0 truncates the memory. The first sample has no
/// value in the output.
pub fn rl_derivative(samples: &SampledFunction, gamma_order: f64) -> Result<SampledFunction> {
    if !(gamma_order > 0.0 && gamma_order <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "derivative order must lie in (0, 1], got {gamma_order}"
        )));
    }
    let n = samples.len();
    if n < MIN_STEPS + 1 {
        return Err(Error::GridTooCoarse {
            steps: n.saturating_sub(1),
            min: MIN_STEPS,
        });
    }
    let f = samples
        .values
        .as_real()
        .ok_or_else(|| Error::InvalidParameter("derivative needs real samples".into()))?;
    let t = &samples.abscissae;
    let h = (t[n - 1] - t[0]) / (n - 1) as f64;
    if t.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
        return Err(Error::InvalidParameter(
            "derivative needs a uniform grid".into(),
        ));
    }
    let mut g = vec![1.0; n];
    for j in 1..n {
        g[j] = g[j - 1] * (1.0 - (gamma_order + 1.0) / j as f64);
    }
    let scale = h.powf(-gamma_order);
    let values = (1..n)
        .map(|i| scale * (0..=i).map(|j| g[j] * f[i - j]).sum::<f64>())
        .collect();
    SampledFunction::new(
        t[1..].to_vec(),
        Values::Real(values),
        format!("rl_derivative order={gamma_order} of {}", samples.meta),
    )
}

/// `Γ(p+1)/Γ(p+1-γ) t^{p-γ}`, the derivative of `t^p`; used by tests and checks.
pub fn rl_derivative_of_power(p: f64, gamma_order: f64, t: f64) -> f64 {
    gamma(p + 1.0) * rgamma(p + 1.0 - gamma_order) * t.powf(p - gamma_order)
}
