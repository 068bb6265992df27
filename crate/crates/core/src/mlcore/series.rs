//! Taylor series of `E^c_{a,b}` with term-ratio stopping.

use super::{EvalOptions, MLArgs};
use crate::error::{Error, Result};
use crate::special::{ln_gamma, rgamma, ComplexAccumulator, DoubleDouble};
use num_complex::Complex64;
use std::ops::Mul;

/// Beyond `|x|^{1/a}` of this size the alternating series is not attempted
/// on the negative real axis: its terms exceed the result by > e^25.
pub(super) const NEGATIVE_SERIES_RADIUS: f64 = 25.0;
/// Complex arguments may sit far from the cancellation-prone directions, so
/// the series is tried up to where its terms would overflow.
pub(super) const COMPLEX_SERIES_RADIUS: f64 = 700.0;

const RESCALE: f64 = 1e150;

pub(super) trait SeriesScalar: Copy + Mul<f64, Output = Self> + Mul<Output = Self> {
    type Acc: Default;
    fn one() -> Self;
    fn modulus(self) -> f64;
    fn push(acc: &mut Self::Acc, v: Self);
    fn total(acc: &Self::Acc) -> Self;
}

impl SeriesScalar for f64 {
    type Acc = DoubleDouble;
    fn one() -> Self {
        1.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn push(acc: &mut DoubleDouble, v: f64) {
        *acc = acc.add_f64(v);
    }
    fn total(acc: &DoubleDouble) -> f64 {
        acc.value()
    }
}

impl SeriesScalar for Complex64 {
    type Acc = ComplexAccumulator;
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn push(acc: &mut ComplexAccumulator, v: Complex64) {
        acc.add(v);
    }
    fn total(acc: &ComplexAccumulator) -> Complex64 {
        acc.value()
    }
}

pub(super) struct SeriesSum<T> {
    pub value: T,
    /// Largest |term| met while summing; measures cancellation.
    pub max_term: f64,
}

pub(super) fn sum<T: SeriesScalar>(
    args: &MLArgs,
    x: T,
    opts: &EvalOptions,
) -> Result<SeriesSum<T>> {
    let MLArgs { a, b, c } = *args;
    // coefficient (c)_k x^k / k! is carried as mantissa · e^{log_scale}
    let mut coef = T::one();
    let mut log_scale = 0.0f64;
    let mut acc = T::Acc::default();
    let mut max_term = 0.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..opts.max_terms {
        let g = a * k as f64 + b;
        let term = if log_scale == 0.0 && g < 170.0 {
            coef * rgamma(g)
        } else {
            let (lg, sign) = ln_gamma(g);
            coef * (sign * (log_scale - lg).exp())
        };
        T::push(&mut acc, term);
        let m = term.modulus();
        if !m.is_finite() {
            return Err(Error::NonConvergence {
                terms: k,
                context: "series term overflow".into(),
            });
        }
        max_term = max_term.max(m);
        let total = T::total(&acc).modulus();
        if k > 0 && m < prev {
            let ratio = m / prev;
            if m == 0.0 || m <= opts.rel_tol * total * (1.0 - ratio) {
                return Ok(SeriesSum {
                    value: T::total(&acc),
                    max_term,
                });
            }
        }
        prev = m;
        let kf = k as f64;
        coef = coef * x * ((c + kf) / (kf + 1.0));
        let cm = coef.modulus();
        if cm == 0.0 {
            return Ok(SeriesSum {
                value: T::total(&acc),
                max_term,
            });
        }
        if cm > RESCALE {
            coef = coef * (1.0 / RESCALE);
            log_scale += RESCALE.ln();
        }
    }
    Err(Error::NonConvergence {
        terms: opts.max_terms,
        context: format!("Taylor series of E^{c}_{{{a},{b}}}"),
    })
}
