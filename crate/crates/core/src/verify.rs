//! Self-checks: reduction ladders, oracle equivalence, solver convergence,
//! the two-parameter recurrence and finite-order complete monotonicity.
//!
//! Each check measures one error figure and compares it with a threshold.
//! A tolerance floor passed to the suites raises every error threshold to
//! at least that value; order-of-convergence thresholds are not affected.

use crate::error::{Error, Result};
use crate::grid::geometric;
use crate::kernels::{memory_laplace, memory_time_unchecked, SeriesTruncation};
use crate::kinetic_solver::{solve, SolverGrid};
use crate::laplace_oracle::{forward, invert, QuadratureConfig, TalbotConfig};
use crate::mlcore::{kilbas_saigo, ml1, ml2, EvalOptions, KSArgs};
use crate::model::{ModelKind, ModelParams};
use crate::relaxation::{
    relax_classical, relax_fractional, relax_laplace_principal, susceptibility_empirical,
    susceptibility_fractional,
};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Reductions,
    Oracle,
    Solver,
    Recurrence,
    Monotonicity,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Reductions,
        Suite::Oracle,
        Suite::Solver,
        Suite::Recurrence,
        Suite::Monotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Reductions => "reductions",
            Suite::Oracle => "oracle",
            Suite::Solver => "solver",
            Suite::Recurrence => "recurrence",
            Suite::Monotonicity => "monotonicity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown suite '{s}' (expected reductions, oracle, solver, recurrence or monotonicity)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    AtMost,
    AtLeast,
}

/// One measured figure against its threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    /// Set when a computation failed; the check then fails.
    pub failure: Option<String>,
}

impl Check {
    fn error(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            comparison: Comparison::AtMost,
            failure: None,
        }
    }

    fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            value,
            threshold,
            comparison: Comparison::AtLeast,
            failure: None,
        }
    }

    fn failed(name: impl Into<String>, threshold: f64, e: &Error) -> Self {
        Self {
            name: name.into(),
            value: f64::NAN,
            threshold,
            comparison: Comparison::AtMost,
            failure: Some(e.to_string()),
        }
    }

    /// Turns a fallible error measurement into a check.
    fn measure(name: impl Into<String>, threshold: f64, f: impl FnOnce() -> Result<f64>) -> Self {
        let name = name.into();
        match f() {
            Ok(v) => Self::error(name, v, threshold),
            Err(e) => Self::failed(name, threshold, &e),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
            && match self.comparison {
                Comparison::AtMost => self.value <= self.threshold,
                Comparison::AtLeast => self.value >= self.threshold,
            }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let op = match self.comparison {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        };
        match &self.failure {
            Some(msg) => write!(f, "{status}  {}  error: {msg}", self.name),
            None => write!(
                f,
                "{status}  {}  {:.3e} {op} {:.1e}",
                self.name, self.value, self.threshold
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

/// Threshold after applying the optional floor.
fn thr(nominal: f64, floor: Option<f64>) -> f64 {
    floor.map_or(nominal, |f| nominal.max(f))
}

/// `|a - b| / max(1, |b|)`.
fn combined(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(errs: I) -> Result<f64> {
    let mut m: f64 = 0.0;
    for e in errs {
        let e = e?;
        if e.is_nan() {
            return Err(Error::AccuracyLoss("NaN in comparison".into()));
        }
        m = m.max(e);
    }
    Ok(m)
}

fn grid40() -> Vec<f64> {
    geometric(1e-2, 10.0, 40).expect("fixed grid")
}

fn hn(alpha: f64, beta: f64, gamma: f64) -> ModelParams {
    ModelParams::new(ModelKind::HavriliakNegami, alpha, beta, gamma, 1.0).expect("fixed parameters")
}

fn params(kind: ModelKind, alpha: f64, beta: f64, gamma: f64, sigma: f64) -> ModelParams {
    ModelParams::new(kind, alpha, beta, gamma, sigma).expect("fixed parameters")
}

const SHAPES: [f64; 3] = [0.3, 0.5, 0.8];

/// HN(1, b) = CD(b), HN(a, 1) = CC(a), HN(1, 1) = e^{-t/σ} on a 40-point grid.
pub fn classical_reductions(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-10, floor);
    let ts = grid40();
    let mut out = Vec::new();
    for &b in &SHAPES {
        let cd = params(ModelKind::ColeDavidson, 1.0, b, 1.0, 1.0);
        out.push(Check::measure(format!("HN(1,{b}) = CD({b})"), tol, || {
            max_over(ts.iter().map(|&t| {
                Ok(combined(
                    relax_classical(&hn(1.0, b, 1.0), t)?,
                    relax_classical(&cd, t)?,
                ))
            }))
        }));
    }
    for &a in &SHAPES {
        let cc = params(ModelKind::ColeCole, a, 1.0, 1.0, 1.0);
        out.push(Check::measure(format!("HN({a},1) = CC({a})"), tol, || {
            max_over(ts.iter().map(|&t| {
                Ok(combined(
                    relax_classical(&hn(a, 1.0, 1.0), t)?,
                    relax_classical(&cc, t)?,
                ))
            }))
        }));
    }
    out.push(Check::measure("HN(1,1) = exp(-t)", tol, || {
        max_over(ts.iter().map(|&t| {
            Ok(combined(
                relax_classical(&hn(1.0, 1.0, 1.0), t)?,
                (-t).exp(),
            ))
        }))
    }));
    out
}

/// HNF → CDF → DF and HNF → CCF → DF for γ ∈ {0.5, 0.8, 1}; at γ = 1 every
/// fractional function must equal its classical counterpart.
pub fn fractional_reductions(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-10, floor);
    let ts = grid40();
    let mut out = Vec::new();
    let pair = |a: ModelParams, b: ModelParams| {
        max_over(
            ts.iter()
                .map(|&t| Ok(combined(relax_fractional(&a, t)?, relax_fractional(&b, t)?))),
        )
    };
    for g in [0.5, 0.8, 1.0] {
        let df = params(ModelKind::Debye, 1.0, 1.0, g, 1.0);
        for &b in &SHAPES {
            let cdf = params(ModelKind::ColeDavidson, 1.0, b, g, 1.0);
            out.push(Check::measure(
                format!("HNF(1,{b};{g}) = CDF({b};{g})"),
                tol,
                || pair(hn(1.0, b, g), cdf),
            ));
        }
        for &a in &SHAPES {
            let ccf = params(ModelKind::ColeCole, a, 1.0, g, 1.0);
            out.push(Check::measure(
                format!("HNF({a},1;{g}) = CCF({a};{g})"),
                tol,
                || pair(hn(a, 1.0, g), ccf),
            ));
        }
        let cdf1 = params(ModelKind::ColeDavidson, 1.0, 1.0, g, 1.0);
        let ccf1 = params(ModelKind::ColeCole, 1.0, 1.0, g, 1.0);
        out.push(Check::measure(format!("CDF(1;{g}) = DF({g})"), tol, || {
            pair(cdf1, df)
        }));
        out.push(Check::measure(format!("CCF(1;{g}) = DF({g})"), tol, || {
            pair(ccf1, df)
        }));
    }
    for p in reduction_models(1.0) {
        out.push(Check::measure(
            format!("{} gamma=1 fractional = classical", p.kind),
            tol,
            || {
                max_over(
                    ts.iter()
                        .map(|&t| Ok(combined(relax_fractional(&p, t)?, relax_classical(&p, t)?))),
                )
            },
        ));
    }
    out
}

fn reduction_models(gamma: f64) -> [ModelParams; 4] {
    [
        params(ModelKind::Debye, 1.0, 1.0, gamma, 1.0),
        params(ModelKind::ColeCole, 0.5, 1.0, gamma, 1.0),
        params(ModelKind::ColeDavidson, 1.0, 0.5, gamma, 1.0),
        params(ModelKind::HavriliakNegami, 0.5, 0.5, gamma, 1.0),
    ]
}

fn ks_opts() -> EvalOptions {
    EvalOptions {
        rel_tol: 1e-12,
        abs_tol: 1e-14,
        ..EvalOptions::default()
    }
}

// the special cases are compared in absolute terms (values lie in [0, 1]), so
// a series whose rounding bound is below 1e-10 is accurate enough
fn ks_compare_opts() -> EvalOptions {
    EvalOptions {
        rel_tol: 1e-10,
        abs_tol: 1e-10,
        ..EvalOptions::default()
    }
}

/// E_{a,1,0}(-t^a) = E_a(-t^a) and E_{1,1+β,β}(-t^{1+β}) = exp(-t^{1+β}/(1+β)).
pub fn kilbas_saigo_cases(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-8, floor);
    let ts = grid40();
    let o = ks_compare_opts();
    let mut out = Vec::new();
    for a in [0.25, 0.5, 0.75, 1.0] {
        out.push(Check::measure(format!("KS({a},1,0) = E_{a}"), tol, || {
            let args = KSArgs::new(a, 1.0, 0.0)?;
            max_over(ts.iter().map(|&t| {
                let z = -t.powf(a);
                Ok(combined(kilbas_saigo(&args, z, &o)?, ml1(a, z, &o)?))
            }))
        }));
    }
    for b in [-0.5, -0.25, 0.0] {
        out.push(Check::measure(
            format!("KS(1,{},{b}) = stretched exp", 1.0 + b),
            tol,
            || {
                let args = KSArgs::new(1.0, 1.0 + b, b)?;
                max_over(ts.iter().map(|&t| {
                    let e = 1.0 + b;
                    Ok(combined(
                        kilbas_saigo(&args, -t.powf(e), &o)?,
                        (-t.powf(e) / e).exp(),
                    ))
                }))
            },
        ));
    }
    out
}

/// The fractional susceptibility does not depend on γ.
pub fn gamma_invariance(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-12, floor);
    let mut out = Vec::new();
    for p in reduction_models(1.0) {
        out.push(Check::measure(
            format!("{} susceptibility independent of gamma", p.kind),
            tol,
            || {
                let mut worst: f64 = 0.0;
                for g in [0.3, 0.7, 1.0] {
                    let pg = p.with_gamma(g)?;
                    for k in -2..=2 {
                        let s = Complex64::new(0.0, 10f64.powi(k));
                        worst = worst.max(
                            (susceptibility_fractional(&pg, s)? - susceptibility_empirical(&pg, s))
                                .norm(),
                        );
                    }
                }
                Ok(worst)
            },
        ));
    }
    out
}

/// The nine parameter sets per law used by the Talbot comparison.
pub fn oracle_parameter_sets(kind: ModelKind) -> Vec<ModelParams> {
    const GAMMAS: [f64; 3] = [0.5, 0.8, 1.0];
    let mut out = Vec::with_capacity(9);
    for (i, &x) in SHAPES.iter().enumerate() {
        for (j, &g) in GAMMAS.iter().enumerate() {
            out.push(match kind {
                ModelKind::Debye => params(kind, 1.0, 1.0, g, [1.0, 2.0, 4.0][i]),
                ModelKind::ColeCole => params(kind, x, 1.0, g, 1.0),
                ModelKind::ColeDavidson => params(kind, 1.0, x, g, 1.0),
                ModelKind::HavriliakNegami => params(kind, x, SHAPES[j], GAMMAS[(i + j) % 3], 1.0),
            });
        }
    }
    out
}

/// Talbot inversion of the s-domain relaxation functions against the
/// closed forms, 20 points in [0.1, 10], relative error.
pub fn talbot_equivalence(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-6, floor);
    let ts = geometric(0.1, 10.0, 20).expect("fixed grid");
    let cfg = TalbotConfig::default();
    let mut out = Vec::new();
    for kind in ModelKind::ALL {
        out.push(Check::measure(
            format!("{kind} Talbot vs closed form (9 sets)"),
            tol,
            || {
                let mut worst: f64 = 0.0;
                for p in oracle_parameter_sets(kind) {
                    for &t in &ts {
                        let exact = relax_fractional(&p, t)?;
                        let approx = invert(|s| relax_laplace_principal(&p, s), t, &cfg)?;
                        worst = worst.max(((approx - exact) / exact).abs());
                    }
                }
                Ok(worst)
            },
        ));
    }
    out
}

/// Forward quadrature of the memory functions against their transforms.
pub fn kernel_transform(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-5, floor);
    let trunc = SeriesTruncation::default();
    let mut out = Vec::new();
    for kind in ModelKind::ALL {
        out.push(Check::measure(
            format!("{kind} memory function transform"),
            tol,
            || {
                let alphas: &[f64] = if kind.frees_alpha() {
                    &[0.3, 0.5, 0.8, 1.0]
                } else {
                    &[1.0]
                };
                let betas: &[f64] = if kind.frees_beta() {
                    &[0.3, 0.5, 0.8, 1.0]
                } else {
                    &[1.0]
                };
                let mut worst: f64 = 0.0;
                for &a in alphas {
                    for &b in betas {
                        let p = params(kind, a, b, 1.0, 1.0);
                        let cfg =
                            QuadratureConfig::default().with_singularity(p.kernel_exponent() - 1.0);
                        let cfg = if p.kernel_exponent() == 1.0 {
                            QuadratureConfig::default()
                        } else {
                            cfg
                        };
                        for s in [0.5, 1.0, 2.0, 4.0] {
                            let s = Complex64::new(s, 0.0);
                            // the endpoint rule samples t far below the public evaluator's floor
                            let numeric = forward(
                                |t| memory_time_unchecked(&p, t, &trunc).unwrap_or(f64::NAN),
                                s,
                                &cfg,
                            )?;
                            let exact = memory_laplace(&p, s)?;
                            worst = worst.max((numeric - exact).norm() / exact.norm());
                        }
                    }
                }
                Ok(worst)
            },
        ));
    }
    out
}

/// The parameter sets of the solver comparison.
pub fn solver_cases() -> Vec<ModelParams> {
    vec![
        params(ModelKind::Debye, 1.0, 1.0, 0.6, 1.0),
        params(ModelKind::Debye, 1.0, 1.0, 1.0, 1.0),
        params(ModelKind::ColeCole, 0.5, 1.0, 0.6, 1.0),
        params(ModelKind::ColeCole, 0.5, 1.0, 1.0, 1.0),
        params(ModelKind::ColeDavidson, 1.0, 0.5, 1.0, 1.0),
        params(ModelKind::HavriliakNegami, 0.5, 0.5, 1.0, 1.0),
    ]
}

/// Max abs error of the Volterra solution on [h, t_end].
pub fn solver_error(p: &ModelParams, t_end: f64, steps: usize) -> Result<f64> {
    let h = t_end / steps as f64;
    let sol = solve(p, &SolverGrid::new(h, t_end, steps)?)?;
    let vals = sol.values.as_real().expect("real solution");
    max_over(
        sol.abscissae
            .iter()
            .zip(vals)
            .map(|(&t, &v)| Ok((v - relax_fractional(p, t)?).abs())),
    )
}

/// Error at 512 steps on [h, 5] and the 256/512 error ratio.
pub fn solver_equivalence(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-3, floor);
    let mut out = Vec::new();
    for p in solver_cases() {
        let label = format!("{} a={} b={} g={}", p.kind, p.alpha, p.beta, p.gamma);
        match solver_error(&p, 5.0, 256).and_then(|e256| Ok((e256, solver_error(&p, 5.0, 512)?))) {
            Ok((e256, e512)) => {
                out.push(Check::error(
                    format!("solver {label} error at 512 steps"),
                    e512,
                    tol,
                ));
                out.push(Check::at_least(
                    format!("solver {label} error ratio 256/512"),
                    e256 / e512,
                    1.8,
                ));
            }
            Err(e) => out.push(Check::failed(format!("solver {label}"), tol, &e)),
        }
    }
    out
}

/// E_{a,b}(y) = 1/Γ(b) + y E_{a,a+b}(y) over a ∈ {0.3, 0.5, 1},
/// b ∈ {0.5, 1, 1.7}, y ∈ [-10, 2].
pub fn recurrence(floor: Option<f64>) -> Vec<Check> {
    let tol = thr(1e-10, floor);
    let o = EvalOptions::default();
    let ys: Vec<f64> = (0..=48).map(|i| -10.0 + 0.25 * i as f64).collect();
    let mut out = Vec::new();
    for a in [0.3, 0.5, 1.0] {
        for b in [0.5, 1.0, 1.7] {
            out.push(Check::measure(
                format!("E_({a},{b}) recurrence"),
                tol,
                || {
                    max_over(ys.iter().map(|&y| {
                        let lhs = ml2(a, b, y, &o)?;
                        let rhs = crate::special::rgamma(b) + y * ml2(a, a + b, y, &o)?;
                        Ok((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0))
                    }))
                },
            ));
        }
    }
    out
}

/// Most negative first-order and second-order divided difference violation
/// (first differences must be ≤ 0, second ≥ 0). Returns the size of the
/// worst violation, 0 when none.
pub fn divided_difference_violation(ts: &[f64], vs: &[f64]) -> f64 {
    let d1: Vec<f64> = ts
        .windows(2)
        .zip(vs.windows(2))
        .map(|(t, v)| (v[1] - v[0]) / (t[1] - t[0]))
        .collect();
    let up = d1.iter().copied().fold(0.0f64, f64::max);
    let bend = d1
        .windows(2)
        .enumerate()
        .map(|(i, d)| (d[1] - d[0]) / (ts[i + 2] - ts[i]))
        .fold(0.0f64, |m, d2| m.max(-d2));
    up.max(bend)
}

/// Finite-order complete-monotonicity probe on 200 points in [1e-3, 1e2].
pub fn complete_monotonicity(floor: Option<f64>) -> Vec<Check> {
    let slack = thr(1e-12, floor);
    let ts = geometric(1e-3, 1e2, 200).expect("fixed grid");
    let o = EvalOptions::default();
    let mut out = Vec::new();
    for a in [0.25, 0.5, 0.75, 1.0] {
        out.push(Check::measure(
            format!("E_{a}(-t^{a}) monotone and convex"),
            slack,
            || {
                let vs = ts
                    .iter()
                    .map(|&t| ml1(a, -t.powf(a), &o))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(divided_difference_violation(&ts, &vs))
            },
        ));
    }
    for p in [
        ModelParams::debye(1.0),
        ModelParams::cole_cole(0.5, 1.0),
        ModelParams::cole_davidson(0.5, 1.0),
        ModelParams::havriliak_negami(0.5, 0.5, 1.0),
    ] {
        let p = p.expect("fixed parameters");
        out.push(Check::measure(
            format!("{} relaxation monotone and convex", p.kind),
            slack,
            || {
                let vs = ts
                    .iter()
                    .map(|&t| relax_classical(&p, t))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(divided_difference_violation(&ts, &vs))
            },
        ));
    }
    let ko = ks_opts();
    for (alpha, beta) in [(0.5, -0.3), (0.8, 0.1), (1.0, -0.5)] {
        out.push(Check::measure(
            format!("KS stretched({alpha},{beta}) monotone and convex"),
            slack,
            || {
                let args = KSArgs::stretched(alpha, beta)?;
                let e = alpha + beta;
                let short = geometric(1e-3, 3.0, 60).expect("fixed grid");
                let vs = short
                    .iter()
                    .map(|&t| kilbas_saigo(&args, -t.powf(e), &ko))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(divided_difference_violation(&short, &vs))
            },
        ));
    }
    out
}

pub fn run_suite(suite: Suite, floor: Option<f64>) -> SuiteReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::Reductions => {
            let mut c = classical_reductions(floor);
            c.extend(fractional_reductions(floor));
            c.extend(kilbas_saigo_cases(floor));
            c.extend(gamma_invariance(floor));
            c
        }
        Suite::Oracle => {
            let mut c = talbot_equivalence(floor);
            c.extend(kernel_transform(floor));
            c
        }
        Suite::Solver => solver_equivalence(floor),
        Suite::Recurrence => recurrence(floor),
        Suite::Monotonicity => complete_monotonicity(floor),
    };
    SuiteReport {
        suite,
        checks,
        elapsed: start.elapsed(),
    }
}

pub fn run(suites: &[Suite], floor: Option<f64>) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run_suite(s, floor)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn floor_only_loosens() {
        let c = Check::error("x", 1e-9, thr(1e-10, None));
        assert!(!c.passed());
        assert!(Check::error("x", 1e-9, thr(1e-10, Some(1e-2))).passed());
        assert_eq!(thr(1e-3, Some(1e-6)), 1e-3);
        assert!(!Check::at_least("r", 1.5, 1.8).passed());
        let mut f = Check::error("x", 0.0, 1.0);
        f.failure = Some("boom".into());
        assert!(!f.passed());
    }

    #[test]
    fn divided_differences_detect_violations() {
        let ts = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(
            divided_difference_violation(&ts, &[4.0, 2.0, 1.0, 0.5]),
            0.0
        );
        assert!(divided_difference_violation(&ts, &[4.0, 2.0, 2.5, 0.5]) > 0.0);
        // decreasing but concave
        assert!(divided_difference_violation(&ts, &[4.0, 3.9, 3.0, 1.0]) > 0.0);
    }

    #[test]
    fn fast_suites_pass() {
        for s in [
            Suite::Reductions,
            Suite::Oracle,
            Suite::Recurrence,
            Suite::Monotonicity,
        ] {
            let r = run_suite(s, None);
            for c in &r.checks {
                assert!(c.passed(), "{c}");
            }
        }
    }
}
