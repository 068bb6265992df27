//! Quadrature engines: double-exponential rules for integrands with
//! endpoint singularities, adaptive Gauss-Kronrod for everything else,
//! and fixed Gauss-Legendre rules for product-integration moments.

use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Sub};

/// Values a quadrature rule can accumulate.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadOutcome<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const DE_LEVELS: usize = 9;
const TANH_SINH_TMAX: f64 = 4.0;

/// ∫_a^b f by tanh-sinh. `f` receives the abscissa; nodes cluster
/// double-exponentially toward both endpoints, so bounded integrands with
/// algebraic endpoint behavior converge quickly.
pub fn tanh_sinh<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> QuadOutcome<T> {
    let width = b - a;
    let mut evals = 0usize;
    // contribution of the nodes at ±t
    let mut pair = |t: f64, f: &mut F| -> T {
        let ps = FRAC_PI_2 * t.sinh();
        let e = (2.0 * ps).exp();
        if !e.is_finite() {
            return T::default();
        }
        // distance of each node from its nearest endpoint
        let d = width / (1.0 + e);
        let ch = ps.cosh();
        let w = width * FRAC_PI_2 * t.cosh() / (2.0 * ch * ch);
        if w == 0.0 || d == 0.0 {
            return T::default();
        }
        let mut acc = T::default();
        // x = b - d  (t > 0) and x = a + d  (t < 0)
        let fr = f(b - d);
        let fl = f(a + d);
        evals += 2;
        if fr.is_finite_value() {
            acc = acc + fr * w;
        }
        if fl.is_finite_value() {
            acc = acc + fl * w;
        }
        acc
    };

    let mut h = 1.0;
    let mid = f(0.5 * (a + b));
    let mut sum = mid * (width * FRAC_PI_2 / 2.0);
    let mut k = 1;
    while (k as f64) * h <= TANH_SINH_TMAX {
        sum = sum + pair(k as f64 * h, &mut f);
        k += 1;
    }
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    for _ in 0..DE_LEVELS {
        h *= 0.5;
        let mut j = 1;
        while (j as f64) * h <= TANH_SINH_TMAX {
            sum = sum + pair(j as f64 * h, &mut f);
            j += 2;
        }
        let next = sum * h;
        error = (next - estimate).magnitude();
        estimate = next;
        if error <= rel_tol * estimate.magnitude() || error <= abs_tol {
            return QuadOutcome {
                value: estimate,
                error,
                evaluations: evals + 1,
                converged: true,
            };
        }
    }
    QuadOutcome {
        value: estimate,
        error,
        evaluations: evals + 1,
        converged: false,
    }
}

/// ∫_a^∞ f by the exp-sinh rule x = a + exp(π/2 sinh t). Suited to
/// integrands that decay at least exponentially.
pub fn exp_sinh<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> QuadOutcome<T> {
    let mut evals = 0usize;
    let mut node = |t: f64, f: &mut F| -> Option<T> {
        let ps = FRAC_PI_2 * t.sinh();
        let e = ps.exp();
        let x = a + e;
        if !x.is_finite() || x == a {
            return None;
        }
        let w = FRAC_PI_2 * t.cosh() * e;
        evals += 1;
        let v = f(x);
        if v.is_finite_value() {
            Some(v * w)
        } else {
            Some(T::default())
        }
    };
    // the upper branch stops once contributions are negligible
    let sweep = |h: f64,
                 start: usize,
                 step: usize,
                 f: &mut F,
                 node: &mut dyn FnMut(f64, &mut F) -> Option<T>|
     -> T {
        let mut acc = T::default();
        let mut j = start;
        let mut quiet = 0;
        loop {
            let t = j as f64 * h;
            if t > 4.5 {
                break;
            }
            match node(t, f) {
                Some(v) => {
                    let m = v.magnitude();
                    acc = acc + v;
                    if m <= 1e-18 * acc.magnitude().max(1e-300) || m == 0.0 {
                        quiet += 1;
                        if quiet >= 3 && t > 1.0 {
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
                None => break,
            }
            j += step;
        }
        // the lower branch approaches `a` doubly exponentially; integrable
        // endpoint singularities still need t well below -4
        let mut j = start;
        let mut quiet = 0;
        loop {
            let t = -(j as f64) * h;
            if t < -6.5 {
                break;
            }
            match node(t, f) {
                Some(v) => {
                    let m = v.magnitude();
                    acc = acc + v;
                    if m <= 1e-18 * acc.magnitude().max(1e-300) {
                        quiet += 1;
                        if quiet >= 3 && t < -1.0 {
                            break;
                        }
                    } else {
                        quiet = 0;
                    }
                }
                None => break,
            }
            j += step;
        }
        acc
    };

    let mut h = 1.0;
    let mut sum = node(0.0, &mut f).unwrap_or_default();
    sum = sum + sweep(h, 1, 1, &mut f, &mut node);
    let mut estimate = sum * h;
    let mut error = f64::INFINITY;
    for _ in 0..DE_LEVELS {
        h *= 0.5;
        sum = sum + sweep(h, 1, 2, &mut f, &mut node);
        let next = sum * h;
        error = (next - estimate).magnitude();
        estimate = next;
        if error <= rel_tol * estimate.magnitude() || error <= abs_tol {
            return QuadOutcome {
                value: estimate,
                error,
                evaluations: evals,
                converged: true,
            };
        }
    }
    QuadOutcome {
        value: estimate,
        error,
        evaluations: evals,
        converged: false,
    }
}

// 7-point Gauss / 15-point Kronrod abscissae and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = hw * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron = kron + s * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + s * WG[j / 2];
        }
    }
    let kron = kron * hw;
    let gauss = gauss * hw;
    (kron, (kron - gauss).magnitude())
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive G7K15 on [a, b]: the segment with the largest error
/// estimate is bisected until the total error meets the tolerance.
pub fn gauss_kronrod<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> QuadOutcome<T> {
    let (v, e) = gk15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        value: v,
        error: e,
    });
    let mut total = v;
    let mut total_err = e;
    let mut evals = 15;
    let mut splits = 0;
    while total_err > abs_tol.max(rel_tol * total.magnitude()) {
        if splits >= max_subdivisions {
            return QuadOutcome {
                value: total,
                error: total_err,
                evaluations: evals,
                converged: false,
            };
        }
        let seg = heap.pop().expect("heap holds at least one segment");
        let m = 0.5 * (seg.a + seg.b);
        let (v1, e1) = gk15(&mut f, seg.a, m);
        let (v2, e2) = gk15(&mut f, m, seg.b);
        evals += 30;
        splits += 1;
        total = total - seg.value + v1 + v2;
        total_err = total_err - seg.error + e1 + e2;
        heap.push(Segment {
            a: seg.a,
            b: m,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: m,
            b: seg.b,
            value: v2,
            error: e2,
        });
        // re-sum occasionally so cancellation in the running totals cannot drift
        if splits % 64 == 0 {
            total = heap.iter().fold(T::default(), |acc, s| acc + s.value);
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }
    QuadOutcome {
        value: total,
        error: total_err,
        evaluations: evals,
        converged: true,
    }
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Chebyshev-like initial guess, then Newton on P_n
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = 0.5 * (1.0 - x);
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[i] = 0.5 * w;
            weights[n - 1 - i] = 0.5 * w;
        }
        Self { nodes, weights }
    }

    /// ∫_a^b f with this rule.
    pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(&self, a: f64, b: f64, mut f: F) -> T {
        let w = b - a;
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::default(), |acc, (&x, &wt)| acc + f(a + w * x) * (wt * w))
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let r = tanh_sinh(|x: f64| x.powf(-0.5), 0.0, 1.0, 1e-13, 0.0);
        assert!((r.value - 2.0).abs() < 1e-10, "{}", r.value);
        let r = tanh_sinh(|x: f64| (1.0 - x * x).sqrt(), -1.0, 1.0, 1e-14, 0.0);
        assert!((r.value - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn exp_sinh_integrates_exponential_tail() {
        let r = exp_sinh(|x: f64| (-x).exp(), 0.0, 1e-14, 0.0);
        assert!((r.value - 1.0).abs() < 1e-14, "{}", r.value);
        // ∫_0^∞ e^{-x} x^{-1/2} = √π
        let r = exp_sinh(|x: f64| (-x).exp() / x.sqrt(), 0.0, 1e-13, 0.0);
        assert!(
            (r.value - std::f64::consts::PI.sqrt()).abs() < 1e-11,
            "{}",
            r.value
        );
    }

    #[test]
    fn gauss_kronrod_adapts_to_peaks() {
        let r = gauss_kronrod(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-12, 1e-12, 200);
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!(r.converged);
        assert!(((r.value - exact) / exact).abs() < 1e-11);
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let gl = GaussLegendre::new(6);
        let v = gl.integrate(0.0, 2.0, |x: f64| x.powi(11));
        assert!((v - 2f64.powi(12) / 12.0).abs() < 1e-10);
        let s: f64 = gl.weights.iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
    }
}
