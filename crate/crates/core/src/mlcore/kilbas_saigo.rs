use super::EvalOptions;
use crate::error::{Error, Result};
use crate::special::{gamma, ln_gamma, DoubleDouble};

/// Orders of the Kilbas-Saigo function `E_{α,m,l}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KSArgs {
    pub alpha: f64,
    pub m: f64,
    pub l: f64,
}

impl KSArgs {
    pub fn new(alpha: f64, m: f64, l: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidOrder(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidOrder(format!("m must be positive, got {m}")));
        }
        if !l.is_finite() {
            return Err(Error::InvalidOrder(format!("l must be finite, got {l}")));
        }
        Ok(Self { alpha, m, l })
    }

    /// Orders of the solution of the relaxation equation with time-varying
    /// rate `t^β`: `u(t) = E_{α, 1+β/α, β/α}(-t^{α+β})`.
    pub fn stretched(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, 1.0 + beta / alpha, beta / alpha)
    }
}

/// Γ(x+1) / Γ(x+α+1) for the coefficient recursion.
fn gamma_ratio(x: f64, alpha: f64) -> f64 {
    let num = x + 1.0;
    let den = x + alpha + 1.0;
    if num > 0.0 && den > 0.0 && num < 170.0 && den < 170.0 {
        return gamma(num) / gamma(den);
    }
    if den <= 0.0 && den == den.floor() {
        return 0.0;
    }
    let (ln, sn) = ln_gamma(num);
    let (ld, sd) = ln_gamma(den);
    sn * sd * (ln - ld).exp()
}

/// `E_{α,m,l}(z) = Σ c_n z^n`, `c_0 = 1`,
/// `c_n = Π_{i<n} Γ(α(im+l)+1) / Γ(α(im+l+1)+1)`.
pub fn kilbas_saigo(args: &KSArgs, z: f64, opts: &EvalOptions) -> Result<f64> {
    let KSArgs { alpha, m, l } = KSArgs::new(args.alpha, args.m, args.l)?;
    opts.validate()?;
    let mut acc = DoubleDouble::ZERO.add_f64(1.0);
    let mut term = 1.0f64;
    let mut max_term = 1.0f64;
    let mut prev = f64::INFINITY;
    for n in 1..opts.max_terms {
        let i = n - 1;
        let x = alpha * (i as f64 * m + l);
        if x <= -1.0 && x == x.floor() {
            return Err(Error::PoleInCoefficient { index: i });
        }
        term *= gamma_ratio(x, alpha) * z;
        let mag = term.abs();
        if !mag.is_finite() {
            return Err(Error::NonConvergence {
                terms: n,
                context: "Kilbas-Saigo term overflow".into(),
            });
        }
        acc = acc.add_f64(term);
        max_term = max_term.max(mag);
        let total = acc.value().abs();
        if mag == 0.0 || (mag < prev && mag <= opts.rel_tol * total * (1.0 - mag / prev)) {
            if !opts.series_accepts(max_term, total) {
                return Err(Error::AccuracyLoss(format!(
                    "Kilbas-Saigo series at z = {z} cancels {max_term:e} down to {total:e}"
                )));
            }
            return Ok(acc.value());
        }
        prev = mag;
    }
    Err(Error::NonConvergence {
        terms: opts.max_terms,
        context: "Kilbas-Saigo series".into(),
    })
}
