//! Numerical Laplace transforms used to check the closed forms: fixed-Talbot
//! inversion and a forward transform by real-axis quadrature.

use crate::error::{Error, Result};
use crate::quad::gauss_kronrod;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Fixed-Talbot settings. The contour parameter is `r = 2·nodes/(5t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TalbotConfig {
    pub nodes: usize,
    pub precision_target: f64,
}

impl Default for TalbotConfig {
    // e^{rt} = e^{0.4·nodes} amplifies rounding: beyond about 20 nodes the
    // rounding loss outgrows the truncation gain in double precision
    fn default() -> Self {
        Self {
            nodes: 20,
            precision_target: 1e-8,
        }
    }
}

impl TalbotConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nodes < 16 {
            return Err(Error::InvalidParameter(format!(
                "Talbot needs at least 16 nodes, got {}",
                self.nodes
            )));
        }
        if !(self.precision_target > 0.0) {
            return Err(Error::InvalidParameter(
                "precision_target must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Forward-transform quadrature settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Declared exponent p of an `t^p` singularity at the origin.
    pub singularity_exponent: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 200,
            singularity_exponent: None,
        }
    }
}

impl QuadratureConfig {
    pub fn with_singularity(self, p: f64) -> Self {
        Self {
            singularity_exponent: Some(p),
            ..self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "quadrature tolerances must be positive".into(),
            ));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidParameter(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if let Some(p) = self.singularity_exponent {
            if !(p > -1.0) {
                return Err(Error::NonIntegrable(format!(
                    "t^{p} is not integrable at the origin"
                )));
            }
            if p >= 1.0 || !p.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "singularity exponent must lie in (-1, 1), got {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Inverse transform with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Inversion {
    pub value: f64,
    pub error: f64,
}

// returns the Talbot sum and a rounding bound ε·Σ|terms|
fn talbot_sum<F: Fn(Complex64) -> Complex64>(f: &F, t: f64, m: usize) -> (f64, f64) {
    let mf = m as f64;
    let r = 2.0 * mf / (5.0 * t);
    let first = 0.5 * (f(Complex64::new(r, 0.0)) * (r * t).exp()).re;
    let (mut acc, mut mag) = (first, first.abs());
    for k in 1..m {
        let th = k as f64 * PI / mf;
        let cot = th.cos() / th.sin();
        let s = Complex64::new(r * th * cot, r * th);
        let sig = th + (th * cot - 1.0) * cot;
        let term = ((s * t).exp() * f(s) * Complex64::new(1.0, sig)).re;
        acc += term;
        mag += term.abs();
    }
    (acc * r / mf, 8.0 * f64::EPSILON * mag * r / mf)
}

/// f(t) from F(s). `F` must be analytic off the cut (-∞, 0] and is sampled
/// at points with negative real part.
pub fn invert_with_estimate<F: Fn(Complex64) -> Complex64>(
    f: F,
    t: f64,
    cfg: &TalbotConfig,
) -> Result<Inversion> {
    cfg.validate()?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::DomainError(format!(
            "inversion needs finite t > 0, got {t}"
        )));
    }
    let coarse_nodes = 3 * cfg.nodes / 4;
    let (full, rounding) = talbot_sum(&f, t, cfg.nodes);
    let (coarse, _) = talbot_sum(&f, t, coarse_nodes);
    if !full.is_finite() {
        return Err(Error::AccuracyLoss(format!(
            "Talbot sum is not finite at t = {t}"
        )));
    }
    // the coarser sum bounds truncation; rounding is added on top
    let error = (full - coarse).abs() + rounding;
    if error > 10.0 * cfg.precision_target * full.abs().max(1.0) {
        return Err(Error::AccuracyLoss(format!(
            "Talbot estimates at {} and {} nodes differ by {error:e} at t = {t}",
            cfg.nodes, coarse_nodes
        )));
    }
    Ok(Inversion { value: full, error })
}

pub fn invert<F: Fn(Complex64) -> Complex64>(f: F, t: f64, cfg: &TalbotConfig) -> Result<f64> {
    invert_with_estimate(f, t, cfg).map(|i| i.value)
}

/// `∫₀^∞ e^{-st} f(t) dt` for `Re(s) > 0`.
///
/// The range is split at `T = 1/Re(s)`. On `[0, T]` a declared singularity
/// `t^p` is removed with `u = t^{1+p}`; the tail is cut where `e^{-Re(s)t}`
/// has fallen by e^{-40}.
pub fn forward<F: Fn(f64) -> f64>(f: F, s: Complex64, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    if !(s.re > 0.0) || !s.im.is_finite() || !s.re.is_finite() {
        return Err(Error::DomainError(format!(
            "forward transform needs finite Re(s) > 0, got {s}"
        )));
    }
    let split = 1.0 / s.re;
    let integrand = |t: f64| (-s * t).exp() * f(t);
    let head = match cfg.singularity_exponent {
        Some(p) => {
            let q = 1.0 + p;
            gauss_kronrod(
                |u: f64| {
                    let t = u.powf(1.0 / q);
                    // t underflows only for u below ~1e-308·q, a negligible sliver
                    if t == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    integrand(t) * (t.powf(-p) / q)
                },
                0.0,
                split.powf(q),
                0.5 * cfg.abs_tol,
                cfg.rel_tol,
                cfg.max_subdivisions,
            )
        }
        None => gauss_kronrod(
            integrand,
            0.0,
            split,
            0.5 * cfg.abs_tol,
            cfg.rel_tol,
            cfg.max_subdivisions,
        ),
    };
    let tail_end = split + 40.0 / s.re;
    let tail = gauss_kronrod(
        integrand,
        split,
        tail_end,
        0.5 * cfg.abs_tol,
        cfg.rel_tol,
        cfg.max_subdivisions,
    );
    let value = head.value + tail.value;
    let error = head.error + tail.error;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonIntegrable(format!(
            "transform diverged at s = {s}"
        )));
    }
    if error > cfg.abs_tol.max(cfg.rel_tol * value.norm()) {
        return Err(Error::ToleranceNotMet { estimate: error });
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{memory_laplace, memory_time, SeriesTruncation};
    use crate::model::ModelParams;
    use crate::relaxation::{relax_fractional, relax_laplace, relax_laplace_principal};
    use crate::special::{gamma, rgamma};

    const ML1_HALF_MINUS_ONE: f64 = 0.427583576155807;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn talbot_textbook_pairs() {
        let cfg = TalbotConfig::default();
        let v = invert(|s| 1.0 / (s + 1.0), 1.0, &cfg).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-10);
        let v = invert(|s| s.powf(-0.5), 1.0, &cfg).unwrap();
        assert!((v - rgamma(0.5)).abs() < 1e-10);
        let v = invert(|s| s.powf(-0.5) / (s.powf(0.5) + 1.0), 1.0, &cfg).unwrap();
        assert!((v - ML1_HALF_MINUS_ONE).abs() < 1e-10);
    }

    #[test]
    fn talbot_matches_fractional_closed_form() {
        let p = ModelParams::havriliak_negami(0.5, 0.5, 1.0)
            .unwrap()
            .with_gamma(0.8)
            .unwrap();
        for t in [0.1, 1.0, 10.0] {
            let inv = invert_with_estimate(
                |s| relax_laplace_principal(&p, s),
                t,
                &TalbotConfig::default(),
            )
            .unwrap();
            let exact = relax_fractional(&p, t).unwrap();
            assert!(
                (inv.value - exact).abs() <= 1e-8 * exact.abs(),
                "t={t}: {} {exact}",
                inv.value
            );
            // tripling the nodes moves the result by less than the two estimates
            let cfg64 = TalbotConfig {
                nodes: 64,
                precision_target: 1e-4,
            };
            let fine = invert_with_estimate(|s| relax_laplace_principal(&p, s), t, &cfg64).unwrap();
            assert!(
                (fine.value - inv.value).abs() <= inv.error + fine.error,
                "t={t}"
            );
            assert!(inv.error < 1e-9);
        }
    }

    #[test]
    fn talbot_flags_disagreement() {
        // a pole in the right half-plane is outside the contour's reach
        let cfg = TalbotConfig::default();
        assert!(matches!(
            invert(|s| 1.0 / (s - 3.0), 5.0, &cfg),
            Err(Error::AccuracyLoss(_))
        ));
        assert!(invert(|s| 1.0 / s, 0.0, &cfg).is_err());
        assert!(TalbotConfig {
            nodes: 12,
            precision_target: 1e-8
        }
        .validate()
        .is_err());
    }

    #[test]
    fn forward_examples() {
        let cfg = QuadratureConfig::default();
        let v = forward(|_| 1.0, c(2.0), &cfg).unwrap();
        assert!((v.re - 0.5).abs() < 1e-12 && v.im.abs() < 1e-12);
        let v = forward(
            |t| t.powf(-0.5) * rgamma(0.5),
            c(1.0),
            &cfg.with_singularity(-0.5),
        )
        .unwrap();
        assert!((v.re - 1.0).abs() < 1e-9);
        let v = forward(
            |t| t.powf(-0.5),
            Complex64::new(1.0, 2.0),
            &cfg.with_singularity(-0.5),
        )
        .unwrap();
        let exact = gamma(0.5) * Complex64::new(1.0, 2.0).powf(-0.5);
        assert!((v - exact).norm() < 1e-8);
        assert!(matches!(
            forward(|t| 1.0 / t, c(1.0), &cfg.with_singularity(-1.0)),
            Err(Error::NonIntegrable(_))
        ));
    }

    #[test]
    fn forward_reproduces_kernel_transform() {
        let p = ModelParams::cole_davidson(0.5, 1.0).unwrap();
        let trunc = SeriesTruncation::default();
        let cfg = QuadratureConfig::default().with_singularity(-0.5);
        let v = forward(|t| memory_time(&p, t, &trunc).unwrap(), c(1.0), &cfg).unwrap();
        let exact = 1.0 / (2f64.sqrt() - 1.0);
        assert!((v.re - exact).abs() < 1e-7 * exact);
        assert!((memory_laplace(&p, c(1.0)).unwrap().re - exact).abs() < 1e-14);
    }

    #[test]
    fn forward_matches_relaxation_transform() {
        let p = ModelParams::havriliak_negami(0.5, 0.5, 1.0)
            .unwrap()
            .with_gamma(0.8)
            .unwrap();
        let cfg = QuadratureConfig::default().with_singularity(-0.2);
        for s in [c(2.0), Complex64::new(1.0, 1.0)] {
            let v = forward(|t| relax_fractional(&p, t).unwrap(), s, &cfg).unwrap();
            let exact = relax_laplace(&p, s).unwrap();
            assert!((v - exact).norm() < 1e-6 * exact.norm(), "{s}: {v} {exact}");
        }
    }

    type Pair = (fn(f64) -> f64, fn(Complex64) -> Complex64);

    #[test]
    fn round_trip() {
        // forward lands on the analytic transform, and inverting that transform lands back on f
        let pairs: [Pair; 3] = [
            (|t| (-t).exp(), |s| 1.0 / (s + 1.0)),
            (
                |t| (-t).exp() * t.cos(),
                |s| (s + 1.0) / ((s + 1.0) * (s + 1.0) + 1.0),
            ),
            (|t| t * (-2.0 * t).exp(), |s| 1.0 / ((s + 2.0) * (s + 2.0))),
        ];
        let qcfg = QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            ..QuadratureConfig::default()
        };
        for (i, (f, big_f)) in pairs.into_iter().enumerate() {
            for s in [c(1.0), Complex64::new(0.5, 3.0)] {
                let v = forward(f, s, &qcfg).unwrap();
                assert!((v - big_f(s)).norm() < 1e-9, "pair {i} s={s}");
            }
            for t in [0.5, 1.0, 2.0] {
                let back = invert(big_f, t, &TalbotConfig::default()).unwrap();
                assert!((back - f(t)).abs() <= 1e-5 * f(t).abs(), "pair {i} t={t}");
            }
        }
    }
}
