//! Adaptive Gauss–Kronrod quadrature, semi-infinite maps and an accelerated
//! integrator for sine/cosine transforms of slowly decaying functions.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Tolerances for the adaptive integrators.
#[derive(Debug, Clone, Copy)]
pub struct Tol {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { abs: 1e-300, rel: 1e-10, max_intervals: 2000 }
    }
}

impl Tol {
    pub fn rel(rel: f64) -> Self {
        Tol { rel, ..Tol::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
    pub converged: bool,
}

/// One 15-point Kronrod panel with its Gauss-7 error estimate.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kron * half;
    let err = ((kron - gauss) * half).abs();
    (value, err)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive integration of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tol) -> QuadResult {
    integrate_with_breaks(f, &[a, b], tol)
}

/// Adaptive integration over consecutive panels `[p_0, p_1], [p_1, p_2], ...`.
///
/// The break points must be sorted; they are where the integrand has kinks.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: F, points: &[f64], tol: Tol) -> QuadResult {
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    for w in points.windows(2) {
        if !(w[1] > w[0]) {
            continue;
        }
        let (value, err) = gk15(&f, w[0], w[1]);
        total += value;
        total_err += err;
        heap.push(Panel { a: w[0], b: w[1], value, err });
    }
    if heap.is_empty() {
        return QuadResult { value: 0.0, abs_error: 0.0, intervals: 0, converged: true };
    }
    loop {
        let target = tol.abs.max(tol.rel * total.abs());
        if total_err <= target {
            return QuadResult { value: total, abs_error: total_err, intervals: heap.len(), converged: true };
        }
        if heap.len() >= tol.max_intervals {
            break;
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel cannot be split further in floating point.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, err: e2 });
    }
    // Recompute sums to shed accumulated round-off before reporting.
    let value = heap.iter().map(|p| p.value).sum();
    let abs_error = heap.iter().map(|p| p.err).sum::<f64>();
    let target = tol.abs.max(tol.rel * f64::abs(value));
    QuadResult { value, abs_error, intervals: heap.len(), converged: abs_error <= target }
}

/// Integral of `f` over `[a, ∞)` through the map `x = a + (1 - u)/u`.
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, tol: Tol) -> QuadResult {
    let g = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let x = a + (1.0 - u) / u;
        let v = f(x) / (u * u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, tol)
}

/// Which kernel multiplies the integrand in [`oscillatory_to_inf`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Sin,
    Cos,
}

const OSC_TERMS: usize = 48;
const OSC_SKIP: usize = 8;

/// Computes `∫_{y0}^∞ w(y) g(y) dy` with `w = sin` or `cos` and `g` smooth,
/// non-negative and eventually monotone.
///
/// The range is cut at the zeros of the kernel; the half-period integrals form
/// an alternating series whose partial sums are accelerated by repeated
/// averaging. `head_breaks` are kinks of `g` that lie before the first zero
/// used for acceleration.
pub fn oscillatory_to_inf<F: Fn(f64) -> f64>(g: F, kernel: Kernel, y0: f64, head_breaks: &[f64], tol: Tol) -> QuadResult {
    let w = |y: f64| match kernel {
        Kernel::Sin => y.sin(),
        Kernel::Cos => y.cos(),
    };
    let offset = match kernel {
        Kernel::Sin => 0.0,
        Kernel::Cos => 0.5 * PI,
    };
    let last_kink = head_breaks.iter().copied().fold(y0, f64::max);
    // First kernel zero strictly after every kink.
    let k0 = ((last_kink - offset) / PI).floor() + 1.0;
    let z0 = offset + k0 * PI;

    let mut pts: Vec<f64> = vec![y0];
    pts.extend(head_breaks.iter().copied().filter(|&b| b > y0 && b < z0));
    pts.push(z0);
    pts.sort_by(f64::total_cmp);
    let head = integrate_with_breaks(|y| w(y) * g(y), &pts, tol);

    let mut partial = Vec::with_capacity(OSC_TERMS);
    let mut acc = head.value;
    let mut err = head.abs_error;
    let mut converged = head.converged;
    let mut intervals = head.intervals;
    for k in 0..OSC_TERMS {
        let a = z0 + k as f64 * PI;
        let term = integrate(|y| w(y) * g(y), a, a + PI, Tol { abs: tol.abs, rel: tol.rel * 1e-2, max_intervals: 200 });
        acc += term.value;
        err += term.abs_error;
        converged &= term.converged;
        intervals += term.intervals;
        partial.push(acc);
    }
    let mut level: Vec<f64> = partial[OSC_SKIP..].to_vec();
    let mut prev_last = f64::NAN;
    while level.len() > 1 {
        prev_last = level[level.len() - 1];
        level = level.windows(2).map(|p| 0.5 * (p[0] + p[1])).collect();
    }
    let value = level[0];
    let accel_err = (value - prev_last).abs();
    QuadResult { value, abs_error: err + accel_err, intervals, converged }
}
