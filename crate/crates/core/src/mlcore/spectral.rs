//! Large-argument representations of the Prabhakar function.

use super::{EvalOptions, MLArgs};
use crate::error::{Error, Result};
use crate::quad::{exp_sinh, tanh_sinh};
use crate::special::{rgamma, DoubleDouble};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest lower split point of the real-line integral; beyond it e^{-u}
/// has already removed ~22 digits.
const SPLIT_CAP: f64 = 50.0;

/// `E^c_{a,b}(-y)` for `y > 0` and `0 < a < 1`:
///
/// ```text
/// E^c_{a,b}(-y) = Σ_{j<J} C(-c, j) y^{-c-j} / Γ(b - a(c+j))
///               + (1/π) ∫_0^∞ e^{-u} u^{p} Im[ e^{-iπp} y^{-c} T_J(w) ] du
/// ```
///
/// with `p = ac - b`, `w = u^a e^{-iaπ} / y` and `T_J` the binomial series of
/// `(1 + w)^{-c}` with its first `J` terms removed. `J` is the smallest
/// count that makes the integrand integrable at the origin.
pub(super) fn spectral_negative(args: &MLArgs, y: f64, opts: &EvalOptions) -> Result<Split> {
    let MLArgs { a, b, c } = *args;
    let p = a * c - b;
    let mut split = 0usize;
    while p + a * split as f64 <= -1.0 + 1e-9 {
        split += 1;
    }
    let q = p + a * split as f64;
    let ln_y = y.ln();

    let lead = if split > 0 {
        leading_term(args, y)
    } else {
        0.0
    };
    let mut algebraic = 0.0;
    let mut binom = 1.0;
    let mut binoms = Vec::with_capacity(split);
    for j in 0..split {
        let jf = j as f64;
        if j > 0 {
            algebraic += binom * (-(c + jf) * ln_y).exp() * rgamma(b - a * (c + jf));
        }
        binoms.push(binom);
        binom *= (-c - jf) / (jf + 1.0);
    }

    let rot = Complex64::from_polar(1.0, -PI * a);
    let phase = Complex64::from_polar(1.0, -PI * q);
    let h = |u: f64| -> f64 {
        if u == 0.0 {
            // w = 0: T_J(0)/0^J = C(-c, J)
            return (phase * binom).im;
        }
        let w = rot * (u.powf(a) / y);
        let s = stripped_binomial(w, c, split, &binoms, binom);
        (-u).exp() * (phase * s).im
    };

    let u_peak = y.powf(1.0 / a);
    let u_split = u_peak.min(SPLIT_CAP);
    let rtol = (0.1 * opts.rel_tol).max(1e-15);
    let e1 = 1.0 + q;
    let head = tanh_sinh(
        |v: f64| h(v.powf(1.0 / e1)),
        0.0,
        u_split.powf(e1),
        rtol,
        1e-300,
    );
    let tail = exp_sinh(|u: f64| u.powf(q) * h(u), u_split, rtol, 1e-300);
    let integral = head.value / e1 + tail.value;
    let err = head.error / e1 + tail.error;
    let scale = (-(c + split as f64) * ln_y).exp() / PI;
    let remainder = integral * scale;
    let converged = head.converged && tail.converged;
    if !converged && err > 1e3 * opts.rel_tol * integral.abs() && err * scale > opts.abs_tol {
        return Err(Error::AccuracyLoss(format!(
            "spectral integral for E^{c}_{{{a},{b}}}(-{y}) did not converge (error {err:e})"
        )));
    }
    Ok(Split {
        lead,
        rest: algebraic + remainder,
    })
}

/// `E^c_{a,b}(-y)` as `lead + rest`, where `lead` is either zero or the
/// leading algebraic term `y^{-c} / Γ(b - ac)` computed separately.
#[derive(Clone, Copy, Debug)]
pub(super) struct Split {
    pub lead: f64,
    pub rest: f64,
}

impl Split {
    pub fn whole(value: f64) -> Self {
        Self {
            lead: 0.0,
            rest: value,
        }
    }

    pub fn value(self) -> f64 {
        self.lead + self.rest
    }
}

/// `y^{-c} / Γ(b - ac)`, the first term of the algebraic expansion.
pub(super) fn leading_term(args: &MLArgs, y: f64) -> f64 {
    (-args.c * y.ln()).exp() * rgamma(args.b - args.a * args.c)
}

/// `T_J(w) / w^J` where `T_J(w) = (1+w)^{-c} - Σ_{j<J} C(-c, j) w^j`.
fn stripped_binomial(
    w: Complex64,
    c: f64,
    split: usize,
    binoms: &[f64],
    first_kept: f64,
) -> Complex64 {
    if split == 0 {
        return (-c * (1.0 + w).ln()).exp();
    }
    if w.norm() < 0.5 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut coef = first_kept;
        let mut wp = Complex64::new(1.0, 0.0);
        let mut j = split as f64;
        for _ in 0..200 {
            let term = wp * coef;
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
            coef *= (-c - j) / (j + 1.0);
            wp *= w;
            j += 1.0;
        }
        return sum;
    }
    let mut head = Complex64::new(0.0, 0.0);
    let mut wp = Complex64::new(1.0, 0.0);
    for &bj in binoms {
        head += wp * bj;
        wp *= w;
    }
    ((-c * (1.0 + w).ln()).exp() - head) / wp
}

/// `E^c_{1,b}(-y) = e^{-y} ₁F₁(b - c; b; y) / Γ(b)` (Kummer's transformation).
///
/// After the first `⌈c - b⌉` terms the hypergeometric series is one-signed.
pub(super) fn kummer_negative(b: f64, c: f64, y: f64, opts: &EvalOptions) -> Result<Split> {
    if y > 700.0 {
        let args = MLArgs { a: 1.0, b, c };
        let lead = leading_term(&args, y);
        let rest = algebraic_asymptotic(1.0, b, c, y, lead.abs(), opts)?;
        return Ok(Split { lead, rest });
    }
    let d = b - c;
    let mut term = 1.0f64;
    let mut acc = DoubleDouble::ZERO.add_f64(1.0);
    let mut log_scale = 0.0;
    for k in 0..opts.max_terms {
        let kf = k as f64;
        term *= (d + kf) * y / ((b + kf) * (kf + 1.0));
        if term == 0.0 {
            break;
        }
        acc = acc.add_f64(term);
        let total = acc.value();
        if kf > y && term.abs() <= 0.1 * opts.rel_tol * total.abs() {
            return Ok(Split::whole(total * (log_scale - y).exp() * rgamma(b)));
        }
        if total.abs() > 1e200 {
            let f = 1e-200;
            term *= f;
            acc = DoubleDouble {
                hi: acc.hi * f,
                lo: acc.lo * f,
            };
            log_scale += 200.0 * std::f64::consts::LN_10;
        }
        if k + 1 == opts.max_terms {
            return Err(Error::NonConvergence {
                terms: opts.max_terms,
                context: format!("Kummer series for E^{c}_{{1,{b}}}(-{y})"),
            });
        }
    }
    Ok(Split::whole(
        acc.value() * (log_scale - y).exp() * rgamma(b),
    ))
}

/// Purely algebraic expansion `Σ_{j>=1} C(-c, j) y^{-c-j} / Γ(b - a(c+j))`
/// without its leading term, valid when the exponentially small
/// contributions are below round-off. `lead` sets the accuracy scale.
fn algebraic_asymptotic(
    a: f64,
    b: f64,
    c: f64,
    y: f64,
    lead: f64,
    opts: &EvalOptions,
) -> Result<f64> {
    let mut sum = 0.0;
    let mut binom = -c;
    let mut prev = f64::INFINITY;
    let ln_y = y.ln();
    for j in 1..200 {
        let jf = j as f64;
        let term = binom * (-(c + jf) * ln_y).exp() * rgamma(b - a * (c + jf));
        let m = term.abs();
        if m > prev && j > 2 {
            break;
        }
        sum += term;
        if m <= opts.rel_tol * sum.abs() && binom != 0.0 {
            return Ok(sum);
        }
        if m != 0.0 {
            prev = m;
        }
        binom *= (-c - jf) / (jf + 1.0);
        if binom == 0.0 {
            return Ok(sum);
        }
    }
    if prev <= 1e3 * opts.rel_tol * (sum + lead).abs() {
        Ok(sum)
    } else {
        Err(Error::AccuracyLoss(format!(
            "asymptotic expansion of E^{c}_{{{a},{b}}}(-{y}) truncated early"
        )))
    }
}

/// `E_{a,b}(z)` for large complex `|z|` and `0 < a < 2`.
pub(super) fn asymptotic_two_parameter(
    a: f64,
    b: f64,
    z: Complex64,
    opts: &EvalOptions,
) -> Result<Complex64> {
    if a >= 2.0 {
        return Err(Error::AccuracyLoss(format!(
            "no large-argument expansion for a = {a}"
        )));
    }
    let mut val = Complex64::new(0.0, 0.0);
    if z.arg().abs() <= (a * PI).min(PI) {
        let root = z.powf(1.0 / a);
        val += z.powf((1.0 - b) / a) * root.exp() / a;
    }
    let zinv = z.inv();
    let mut zp = zinv;
    let mut smallest = f64::INFINITY;
    let mut alg = Complex64::new(0.0, 0.0);
    for k in 1..200 {
        let term = zp * rgamma(b - a * k as f64);
        let m = term.norm();
        if m > smallest && k > 2 {
            break;
        }
        alg -= term;
        if m != 0.0 {
            smallest = smallest.min(m);
        }
        zp *= zinv;
        if m != 0.0 && m <= 0.1 * opts.rel_tol * (val - alg).norm() {
            smallest = m;
            break;
        }
    }
    if smallest == f64::INFINITY {
        // every algebraic coefficient vanishes
        smallest = 0.0;
    }
    let total = val + alg;
    if smallest > 10.0 * opts.rel_tol * total.norm() {
        return Err(Error::AccuracyLoss(format!(
            "asymptotic expansion of E_{{{a},{b}}}({z}) cannot reach the tolerance"
        )));
    }
    Ok(total)
}
