//! Memory functions `M(t)` of the four relaxation laws and their Laplace
//! transforms `M̃(s)`, defined through `φ̃(s) = 1/(s + s M̃(s))`.

use crate::error::{Error, Result};
use crate::mlcore::{ml2, ml3, EvalOptions, MLArgs};
use crate::model::{ModelKind, ModelParams};
use crate::quad::gauss_kronrod;
use crate::special::{expm1_c, ln1p_c, rgamma};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Kernels are refused below this fraction of σ.
pub const MIN_TIME_FRACTION: f64 = 1e-12;

/// The Havriliak-Negami k-sum is used while `(t/σ)^α <= HN_SERIES_LIMIT`;
/// beyond it the terms decay slowly, need Prabhakar functions of large
/// order, and the summed spectral form takes over.
pub const HN_SERIES_LIMIT: f64 = 0.5;

/// Upper limit of `u` in the spectral integral; e^{-u} is below 1e-26 there.
const HN_SPECTRAL_CUTOFF: f64 = 60.0;

/// Beyond `t/σ` of this size the Cole-Davidson kernel equals its limit
/// `1/(βσ)` to within e^{-40}.
const CD_SATURATION: f64 = 40.0;

/// Truncation control for the Havriliak-Negami k-sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesTruncation {
    pub tail_tol: f64,
    pub max_k: usize,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self {
            tail_tol: 1e-12,
            max_k: 512,
        }
    }
}

impl SeriesTruncation {
    pub fn validate(&self) -> Result<()> {
        if !(self.tail_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tail_tol must be positive, got {}",
                self.tail_tol
            )));
        }
        if self.max_k < 1 {
            return Err(Error::InvalidParameter("max_k must be at least 1".into()));
        }
        Ok(())
    }
}

fn eval_opts(trunc: &SeriesTruncation) -> EvalOptions {
    EvalOptions {
        rel_tol: trunc.tail_tol.clamp(1e-14, 1e-10),
        ..EvalOptions::default()
    }
}

/// `M(t)` for `t > 0`.
pub fn memory_time(p: &ModelParams, t: f64, trunc: &SeriesTruncation) -> Result<f64> {
    trunc.validate()?;
    if !(t > 0.0) || t < MIN_TIME_FRACTION * p.sigma || !t.is_finite() {
        return Err(Error::DomainError(format!(
            "memory function needs t >= {:e}·σ, got t = {t}",
            MIN_TIME_FRACTION
        )));
    }
    memory_time_unchecked(p, t, trunc)
}

/// `M(t)` without the small-time refusal, for callers that integrate the
/// singularity themselves.
pub(crate) fn memory_time_unchecked(
    p: &ModelParams,
    t: f64,
    trunc: &SeriesTruncation,
) -> Result<f64> {
    let sigma = p.sigma;
    let (alpha, beta) = (p.alpha, p.beta);
    match effective_kind(p) {
        ModelKind::Debye => Ok(1.0 / sigma),
        ModelKind::ColeCole => Ok((t / sigma).powf(alpha - 1.0) * rgamma(alpha) / sigma),
        ModelKind::ColeDavidson => cole_davidson_time(beta, sigma, t, trunc),
        ModelKind::HavriliakNegami => havriliak_negami_time(alpha, beta, sigma, t, trunc),
    }
}

/// The law a parameter set actually describes once exponents equal to 1
/// are taken into account.
pub(crate) fn effective_kind(p: &ModelParams) -> ModelKind {
    match (p.alpha == 1.0, p.beta == 1.0) {
        (true, true) => ModelKind::Debye,
        (false, true) => ModelKind::ColeCole,
        (true, false) => ModelKind::ColeDavidson,
        (false, false) => ModelKind::HavriliakNegami,
    }
}

// M_CD(t) = e^{-x} x^{β-1} E_{β,β}(x^β) / σ, x = t/σ
fn cole_davidson_time(beta: f64, sigma: f64, t: f64, trunc: &SeriesTruncation) -> Result<f64> {
    let x = t / sigma;
    if x > CD_SATURATION {
        return Ok(1.0 / (beta * sigma));
    }
    let e = ml2(beta, beta, x.powf(beta), &eval_opts(trunc))?;
    Ok((-x).exp() * x.powf(beta - 1.0) * e / sigma)
}

fn havriliak_negami_time(
    alpha: f64,
    beta: f64,
    sigma: f64,
    t: f64,
    trunc: &SeriesTruncation,
) -> Result<f64> {
    if (t / sigma).powf(alpha) <= HN_SERIES_LIMIT {
        havriliak_negami_series(alpha, beta, sigma, t, trunc)
    } else {
        havriliak_negami_spectral(alpha, beta, sigma, t, trunc.tail_tol)
    }
}

// M_HN(t) = (1/t) Σ_k x^{c_k} E^{c_k}_{α, α c_k}(-x), c_k = β(k+1), x = (t/σ)^α
pub(crate) fn havriliak_negami_series(
    alpha: f64,
    beta: f64,
    sigma: f64,
    t: f64,
    trunc: &SeriesTruncation,
) -> Result<f64> {
    let x = (t / sigma).powf(alpha);
    let ln_x = x.ln();
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for k in 0..trunc.max_k {
        let c = beta * (k + 1) as f64;
        // late terms only need to be accurate relative to the running sum
        let opts = EvalOptions {
            abs_tol: 0.1 * trunc.tail_tol * sum * t * (-c * ln_x).exp(),
            ..eval_opts(trunc)
        };
        let e = ml3(&MLArgs::new(alpha, alpha * c, c)?, -x, &opts)?;
        let term = (c * ln_x).exp() * e / t;
        sum += term;
        let m = term.abs();
        if k > 0 && m <= prev && m < trunc.tail_tol * sum.abs() {
            return Ok(sum);
        }
        prev = m;
    }
    Err(Error::NonConvergence {
        terms: trunc.max_k,
        context: format!("Havriliak-Negami kernel series at t = {t}"),
    })
}

/// The k-sum summed under the real-line inversion integral. `M̃_HN` is
/// analytic off the negative axis, so
///
/// ```text
/// M(t) = t^{α-1} / (β σ^α Γ(α)) + (1/t) ∫_0^∞ e^{-u} d(u/t) du,
/// d(r) = Im[M̃(r e^{-iπ}) - 1/(β (rσ e^{-iπ})^α)] / π,
/// ```
///
/// the first term being the exact transform of the `s^{-α}/β` behaviour at
/// the origin. The integral is taken in `v = ln u`.
pub(crate) fn havriliak_negami_spectral(
    alpha: f64,
    beta: f64,
    sigma: f64,
    t: f64,
    tol: f64,
) -> Result<f64> {
    let lead = (t / sigma).powf(alpha) * rgamma(alpha) / (beta * t);
    let rot = Complex64::from_polar(1.0, -PI * alpha);
    let d = |r: f64| -> f64 {
        let w = rot * (r * sigma).powf(alpha);
        let full = expm1_c(ln1p_c(w) * beta).inv();
        (full - (w * beta).inv()).im / PI
    };
    // d(r) = O((rσ)^α) near the origin: start where the neglected part is below 1e-30
    let v_lo = (t / sigma).ln() + 1e-30f64.ln() / (1.0 + alpha);
    let v_hi = HN_SPECTRAL_CUTOFF.ln();
    let out = gauss_kronrod(
        |v: f64| {
            let u = v.exp();
            u * (-u).exp() * d(u / t)
        },
        v_lo,
        v_hi,
        0.1 * tol * lead.abs() * t,
        0.1 * tol,
        400,
    );
    let value = lead + out.value / t;
    if !out.converged && out.error > tol * value.abs() * t {
        return Err(Error::NonConvergence {
            terms: out.evaluations,
            context: format!(
                "Havriliak-Negami spectral integral at t = {t} (error {:e})",
                out.error / t
            ),
        });
    }
    Ok(value)
}

/// `M̃(s)` with principal-branch powers, `Re(s) > 0`.
pub fn memory_laplace(p: &ModelParams, s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::DomainError(format!(
            "memory_laplace needs Re(s) > 0, got {s}"
        )));
    }
    let z = s * p.sigma;
    let den = match effective_kind(p) {
        ModelKind::Debye => z,
        ModelKind::ColeCole => z.powf(p.alpha),
        // (1 + w)^β - 1 evaluated as expm1(β ln1p(w))
        ModelKind::ColeDavidson => expm1_c(ln1p_c(z) * p.beta),
        ModelKind::HavriliakNegami => expm1_c(ln1p_c(z.powf(p.alpha)) * p.beta),
    };
    if den.norm() == 0.0 || !den.norm().is_finite() {
        return Err(Error::PoleError(format!(
            "memory transform denominator vanishes at s = {s}"
        )));
    }
    Ok(den.inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    // Talbot inversions at 60 digits, tests/oracles/reference_values.py
    const M_HN_05_05_T1: f64 = 1.1551365584355533;
    const M_HN_08_03_T2: f64 = 1.4721879778443826;
    const M_HN_09_03_T20: f64 = 2.3118841240422169;
    const M_CD_05_T1: f64 = 2.0502545416600122;
    const M_CD_03_T7: f64 = 3.3333580662379252;

    fn tr() -> SeriesTruncation {
        SeriesTruncation::default()
    }

    #[test]
    fn closed_forms() {
        let d = ModelParams::debye(1.0).unwrap();
        for t in [1e-6, 0.3, 1.0, 50.0] {
            assert_eq!(memory_time(&d, t, &tr()).unwrap(), 1.0);
        }
        let cc = ModelParams::new(ModelKind::ColeCole, 1.0, 1.0, 1.0, 2.0).unwrap();
        assert_eq!(memory_time(&cc, 3.0, &tr()).unwrap(), 0.5);
        let cc = ModelParams::cole_cole(0.5, 1.0).unwrap();
        let want = 4.0f64.powf(-0.5) / gamma(0.5);
        assert!((memory_time(&cc, 4.0, &tr()).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn havriliak_negami_matches_talbot_oracle() {
        // k-sum and spectral form separately, then the public dispatch
        let s = havriliak_negami_series(0.5, 0.5, 1.0, 1.0, &tr()).unwrap();
        assert!((s / M_HN_05_05_T1 - 1.0).abs() < 1e-11, "{s}");
        let q = havriliak_negami_spectral(0.5, 0.5, 1.0, 1.0, 1e-12).unwrap();
        assert!((q / M_HN_05_05_T1 - 1.0).abs() < 1e-12, "{q}");
        let p = ModelParams::havriliak_negami(0.5, 0.5, 1.0).unwrap();
        let v = memory_time(&p, 1.0, &tr()).unwrap();
        assert!((v / M_HN_05_05_T1 - 1.0).abs() < 1e-10, "{v}");
        let p = ModelParams::havriliak_negami(0.8, 0.3, 2.0).unwrap();
        let v = memory_time(&p, 2.0, &tr()).unwrap();
        assert!((v / M_HN_08_03_T2 - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn havriliak_negami_series_and_spectral_forms_agree() {
        for (a, b) in [(0.5, 0.5), (0.8, 0.3), (0.3, 0.9), (0.9, 0.3), (0.95, 0.95)] {
            for t in [0.02, 0.2, 0.7, 1.0] {
                let s = havriliak_negami_series(a, b, 1.0, t, &tr()).unwrap();
                let q = havriliak_negami_spectral(a, b, 1.0, t, 1e-12).unwrap();
                assert!((s - q).abs() < 1e-10 * s, "a {a} b {b} t {t}: {s} vs {q}");
            }
        }
    }

    #[test]
    fn havriliak_negami_large_times() {
        // tails approach t^{α-1}/(β σ^α Γ(α)) from the s → 0 behaviour
        let p = ModelParams::havriliak_negami(0.9, 0.3, 1.0).unwrap();
        let v = memory_time(&p, 20.0, &tr()).unwrap();
        assert!((v / M_HN_09_03_T20 - 1.0).abs() < 1e-10, "{v}");
        let p = ModelParams::havriliak_negami(0.6, 0.4, 1.0).unwrap();
        let t = 1e6f64;
        let lead = t.powf(-0.4) * rgamma(0.6) / 0.4;
        assert!((memory_time(&p, t, &tr()).unwrap() / lead - 1.0).abs() < 1e-2);
    }

    #[test]
    fn cole_davidson_matches_talbot_oracle() {
        let p = ModelParams::cole_davidson(0.5, 1.0).unwrap();
        let v = memory_time(&p, 1.0, &tr()).unwrap();
        assert!((v / M_CD_05_T1 - 1.0).abs() < 1e-12, "{v}");
        let p = ModelParams::cole_davidson(0.3, 1.0).unwrap();
        let v = memory_time(&p, 7.0, &tr()).unwrap();
        assert!((v / M_CD_03_T7 - 1.0).abs() < 1e-12, "{v}");
        // saturated branch is continuous with the series
        let below = memory_time(&p, 39.999, &tr()).unwrap();
        let above = memory_time(&p, 40.001, &tr()).unwrap();
        assert!((below - above).abs() < 1e-12 * above);
    }

    #[test]
    fn reductions_between_kernels() {
        for t in [0.01, 0.2, 1.0, 3.0, 8.0] {
            for alpha in [0.3, 0.6, 0.9] {
                let hn =
                    ModelParams::new(ModelKind::HavriliakNegami, alpha, 1.0, 1.0, 1.5).unwrap();
                let cc = ModelParams::cole_cole(alpha, 1.5).unwrap();
                assert_eq!(
                    memory_time(&hn, t, &tr()).unwrap(),
                    memory_time(&cc, t, &tr()).unwrap()
                );
            }
            for beta in [0.3, 0.6, 0.9] {
                let hn = ModelParams::new(ModelKind::HavriliakNegami, 1.0, beta, 1.0, 1.5).unwrap();
                let cd = ModelParams::cole_davidson(beta, 1.5).unwrap();
                assert_eq!(
                    memory_time(&hn, t, &tr()).unwrap(),
                    memory_time(&cd, t, &tr()).unwrap()
                );
            }
        }
    }

    #[test]
    fn havriliak_negami_series_near_cole_cole_limit() {
        // β close to 1 exercises the k-sum rather than the closed form
        let cc = ModelParams::cole_cole(0.6, 1.0).unwrap();
        let hn = ModelParams::havriliak_negami(0.6, 0.999_999, 1.0).unwrap();
        for t in [0.05, 0.5, 2.0] {
            let a = memory_time(&cc, t, &tr()).unwrap();
            let b = memory_time(&hn, t, &tr()).unwrap();
            assert!((a - b).abs() < 1e-5 * a, "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn kernels_positive_on_grid() {
        let params = [
            ModelParams::debye(0.7).unwrap(),
            ModelParams::cole_cole(0.4, 0.7).unwrap(),
            ModelParams::cole_davidson(0.4, 0.7).unwrap(),
            ModelParams::havriliak_negami(0.7, 0.4, 0.7).unwrap(),
        ];
        for p in &params {
            let mut t = 1e-4;
            while t < 20.0 {
                let v = memory_time(p, t, &tr()).unwrap();
                assert!(v > 0.0 && v.is_finite(), "{} t = {t}", p.kind);
                t *= 1.7;
            }
        }
    }

    #[test]
    fn small_times_are_refused() {
        let p = ModelParams::cole_cole(0.5, 1.0).unwrap();
        assert!(matches!(
            memory_time(&p, 0.0, &tr()),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(
            memory_time(&p, 1e-13, &tr()),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(
            memory_time(&p, -1.0, &tr()),
            Err(Error::DomainError(_))
        ));
        let bad = SeriesTruncation {
            tail_tol: 0.0,
            max_k: 4,
        };
        assert!(memory_time(&p, 1.0, &bad).is_err());
    }

    #[test]
    fn laplace_examples() {
        let d = ModelParams::debye(2.0).unwrap();
        assert_eq!(
            memory_laplace(&d, Complex64::new(1.0, 0.0)).unwrap(),
            Complex64::new(0.5, 0.0)
        );
        let hn = ModelParams::new(ModelKind::HavriliakNegami, 1.0, 1.0, 1.0, 1.0).unwrap();
        let v = memory_laplace(&hn, Complex64::new(3.0, 0.0)).unwrap();
        assert!((v - Complex64::new(1.0 / 3.0, 0.0)).norm() < 1e-16);
        let cd = ModelParams::cole_davidson(0.5, 1.0).unwrap();
        let v = memory_laplace(&cd, Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - 1.0 / (2f64.sqrt() - 1.0)).abs() < 1e-14 && v.im == 0.0);
        assert!(matches!(
            memory_laplace(&cd, Complex64::new(0.0, 1.0)),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn laplace_small_s_keeps_precision() {
        // (1+sσ)^β - 1 ≈ βsσ for tiny s
        let cd = ModelParams::cole_davidson(0.5, 1.0).unwrap();
        let s = Complex64::new(1e-12, 0.0);
        let v = memory_laplace(&cd, s).unwrap();
        assert!((v.re * 0.5e-12 - 1.0).abs() < 1e-11);
    }
}
