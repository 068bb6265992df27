//! Mittag-Leffler family: one-, two- and three-parameter (Prabhakar)
//! functions and the Kilbas-Saigo function.
//!
//! Evaluation strategy for `E^c_{a,b}(x)`:
//!
//! * Taylor series with compensated (double-double) accumulation whenever
//!   the largest term stays within `rel_tol / (16 ε)` of the result, i.e.
//!   whenever cancellation cannot eat the requested accuracy.
//! * Real negative arguments beyond that radius:
//!   - `0 < a < 1`: the real-line spectral representation obtained by
//!     collapsing the Bromwich contour of `s^{ac-b} / (s^a + 1)^c` onto the
//!     branch cut, with the first algebraic asymptotic terms split off when
//!     `ac - b <= -1`;
//!   - `a = 1`: Kummer's transformation of the confluent hypergeometric
//!     form, which turns the alternating series into a one-signed one.
//! * Complex arguments where the series cancels (two-parameter only, and
//!   only for `|z|^{1/a} > 25`): the exponential-plus-algebraic asymptotic
//!   expansion. In between, `AccuracyLoss` reports that `rel_tol` cannot be
//!   met; a looser `rel_tol` admits the series.

mod kilbas_saigo;
mod series;
mod spectral;

use crate::error::{Error, Result};
use num_complex::Complex64;

pub use kilbas_saigo::{kilbas_saigo, KSArgs};

/// Orders (a, b, c) of `E^c_{a,b}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MLArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl MLArgs {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let args = Self { a, b, c };
        args.validate()?;
        Ok(args)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidOrder(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Accuracy controls shared by all series evaluations.
///
/// A result is accepted once its error estimate is below `rel_tol·|value|`
/// or below `abs_tol`; the default `abs_tol = 0` asks for relative accuracy
/// only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub abs_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 10_000,
            abs_tol: 0.0,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidParameter(
                "max_terms must be at least 1".into(),
            ));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        Ok(())
    }

    /// Largest tolerated ratio between the biggest series term and the sum.
    /// Each term carries the few-ulp error of the gamma routine.
    pub(crate) fn cancellation_budget(&self) -> f64 {
        (self.rel_tol / (16.0 * f64::EPSILON)).max(10.0)
    }

    /// Whether a series whose largest term is `max_term` delivers `value`
    /// to the requested accuracy.
    pub(crate) fn series_accepts(&self, max_term: f64, value: f64) -> bool {
        max_term <= self.cancellation_budget() * value
            || 16.0 * f64::EPSILON * max_term <= self.abs_tol
    }
}

/// Scalars the Mittag-Leffler functions accept: `f64` and `Complex64`.
pub trait MlScalar: Copy {
    fn prabhakar(args: &MLArgs, x: Self, opts: &EvalOptions) -> Result<Self>;
}

impl MlScalar for f64 {
    fn prabhakar(args: &MLArgs, x: f64, opts: &EvalOptions) -> Result<f64> {
        prabhakar_real(args, x, opts)
    }
}

impl MlScalar for Complex64 {
    fn prabhakar(args: &MLArgs, z: Complex64, opts: &EvalOptions) -> Result<Complex64> {
        prabhakar_complex(args, z, opts)
    }
}

/// One-parameter function `E_a(x) = Σ x^k / Γ(ak + 1)`.
pub fn ml1<X: MlScalar>(a: f64, x: X, opts: &EvalOptions) -> Result<X> {
    X::prabhakar(&MLArgs::new(a, 1.0, 1.0)?, x, opts)
}

/// Two-parameter function `E_{a,b}(x) = Σ x^k / Γ(ak + b)`.
pub fn ml2<X: MlScalar>(a: f64, b: f64, x: X, opts: &EvalOptions) -> Result<X> {
    X::prabhakar(&MLArgs::new(a, b, 1.0)?, x, opts)
}

/// Three-parameter (Prabhakar) function `E^c_{a,b}(x) = Σ (c)_k x^k / (Γ(ak + b) k!)`.
pub fn ml3<X: MlScalar>(args: &MLArgs, x: X, opts: &EvalOptions) -> Result<X> {
    args.validate()?;
    X::prabhakar(args, x, opts)
}

fn prabhakar_real(args: &MLArgs, x: f64, opts: &EvalOptions) -> Result<f64> {
    args.validate()?;
    opts.validate()?;
    if x.is_nan() {
        return Err(Error::DomainError("argument is NaN".into()));
    }
    if x == 0.0 {
        return Ok(crate::special::rgamma(args.b));
    }
    if x > 0.0 {
        // one-signed terms: the series is always well conditioned
        let s = series::sum(args, x, opts)?;
        return Ok(s.value);
    }
    if x == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    negative_split(args, -x, opts).map(spectral::Split::value)
}

/// `E^c_{a,b}(-y) - y^{-c}/Γ(b - ac)` for `y > 0`, free of the cancellation
/// a direct subtraction suffers once the leading algebraic term dominates.
pub(crate) fn prabhakar_excess(args: &MLArgs, y: f64, opts: &EvalOptions) -> Result<f64> {
    args.validate()?;
    opts.validate()?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::DomainError(format!(
            "excess needs a finite y > 0, got {y}"
        )));
    }
    let split = negative_split(args, y, opts)?;
    let lead = spectral::leading_term(args, y);
    if split.lead != 0.0 {
        Ok(split.rest + (split.lead - lead))
    } else {
        Ok(split.value() - lead)
    }
}

fn negative_split(args: &MLArgs, y: f64, opts: &EvalOptions) -> Result<spectral::Split> {
    let x = -y;
    let radius = y.powf(1.0 / args.a);
    if radius <= series::NEGATIVE_SERIES_RADIUS || args.a > 1.0 {
        if let Ok(s) = series::sum(args, x, opts) {
            if opts.series_accepts(s.max_term, s.value.abs()) {
                return Ok(spectral::Split::whole(s.value));
            }
        }
    }
    if args.a == 1.0 {
        spectral::kummer_negative(args.b, args.c, y, opts)
    } else if args.a < 1.0 {
        spectral::spectral_negative(args, y, opts)
    } else {
        Err(Error::AccuracyLoss(format!(
            "E^{}_{{{},{}}}({x}): series cancellation and no large-argument representation for a > 1",
            args.c, args.a, args.b
        )))
    }
}

fn prabhakar_complex(args: &MLArgs, z: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    args.validate()?;
    opts.validate()?;
    if z.im == 0.0 {
        return prabhakar_real(args, z.re, opts).map(|v| Complex64::new(v, 0.0));
    }
    let radius = z.norm().powf(1.0 / args.a);
    if radius <= series::COMPLEX_SERIES_RADIUS {
        if let Ok(s) = series::sum(args, z, opts) {
            if opts.series_accepts(s.max_term, s.value.norm()) {
                return Ok(s.value);
            }
        }
    }
    // the expansion drops contributions of order e^{-|z|^{1/a}}, so it is
    // only trusted once the series has become unusable for that reason
    if args.c == 1.0 && radius > series::NEGATIVE_SERIES_RADIUS {
        spectral::asymptotic_two_parameter(args.a, args.b, z, opts)
    } else {
        Err(Error::AccuracyLoss(format!(
            "E^{}_{{{},{}}}({z}): series cancellation exceeds rel_tol and no large-argument form applies",
            args.c, args.a, args.b
        )))
    }
}
