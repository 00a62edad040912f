//! Summand generators: tabulated inverse-tail sampling for power-type models,
//! a symmetric stable sampler, and martingale-difference sequences.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::numeric::CompensatedSum;
use crate::tailmodel::TailModel;

/// Table step in `y = -ln q`.
const TABLE_STEP: f64 = 1.0 / 64.0;
/// Largest `y` reachable from a 53-bit uniform is `53 ln 2 ≈ 36.7`.
const TABLE_Y_MAX: f64 = 40.0;

/// Generator of partial sums `Σ_{k≤n} ξ(k)`.
pub trait Summands: Sync {
    /// One realisation of the sum as `(sign, ln |sum|)`; `ln 0 = -∞`.
    fn log_sum(&self, n: u64, rng: &mut ChaCha8Rng) -> (f64, f64);
}

/// Real-valued summands with a plain compensated sum.
pub trait Draw: Sync {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64;
}

pub(crate) fn signed_log(v: f64) -> (f64, f64) {
    (if v < 0.0 { -1.0 } else { 1.0 }, v.abs().ln())
}

/// I.i.d. summands from any [`Draw`].
pub struct Iid<D>(pub D);

impl<D: Draw> Summands for Iid<D> {
    fn log_sum(&self, n: u64, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let mut s = CompensatedSum::new();
        for _ in 0..n {
            s.add(self.0.draw(rng));
        }
        signed_log(s.value())
    }
}

impl<F: Fn(&mut ChaCha8Rng) -> f64 + Sync> Draw for F {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        self(rng)
    }
}

/// Inverse-tail sampler for a [`TailModel`].
///
/// For power-type tails `ln |ξ|` is read from a cubic Hermite table in
/// `y = -ln q` and polished with one Newton step; superheavy tails and the
/// region next to an interior peak of the formula use the exact solver.
#[derive(Debug, Clone)]
pub struct ModelSampler {
    model: TailModel,
    u0: f64,
    y_atom: f64,
    y_fast: f64,
    u: Vec<f64>,
    du: Vec<f64>,
}

impl ModelSampler {
    pub fn new(model: &TailModel) -> Self {
        let u0 = model.x0().ln();
        let y_atom = -model.ln_tail_at_log(model.log_plateau_end());
        let mut s = ModelSampler { model: model.clone(), u0, y_atom, y_fast: f64::INFINITY, u: vec![], du: vec![] };
        if model.is_superheavy() {
            return s;
        }
        let up = model.log_plateau_end();
        let y_fast = if model.ln_formula_slope(up) < -0.05 { y_atom } else { (-model.ln_formula(up + 0.5)).max(y_atom) };
        if y_fast >= TABLE_Y_MAX {
            return s;
        }
        let n = ((TABLE_Y_MAX - y_fast) / TABLE_STEP).ceil() as usize + 1;
        let mut u = Vec::with_capacity(n);
        let mut du = Vec::with_capacity(n);
        for i in 0..n {
            let y = y_fast + i as f64 * TABLE_STEP;
            let ui = model.log_quantile((-y).exp());
            let slope = model.ln_formula_slope(ui);
            if !(ui.is_finite() && slope < 0.0) || u.last().is_some_and(|&p: &f64| ui < p) {
                return s;
            }
            u.push(ui);
            du.push(-1.0 / slope);
        }
        s.y_fast = y_fast;
        s.u = u;
        s.du = du;
        s
    }

    pub fn model(&self) -> &TailModel {
        &self.model
    }

    /// Whether draws go through the interpolation table.
    pub fn is_tabulated(&self) -> bool {
        !self.u.is_empty()
    }

    /// `ln x` with `T(x) = e^{-y}`.
    pub fn log_quantile_y(&self, y: f64) -> f64 {
        if y <= self.y_atom {
            return self.u0;
        }
        if y < self.y_fast || self.u.is_empty() {
            return self.model.log_quantile((-y).exp());
        }
        let s = (y - self.y_fast) / TABLE_STEP;
        let i = s as usize;
        if i + 1 >= self.u.len() {
            return self.model.log_quantile((-y).exp());
        }
        let t = s - i as f64;
        let (u0, u1) = (self.u[i], self.u[i + 1]);
        let (m0, m1) = (self.du[i] * TABLE_STEP, self.du[i + 1] * TABLE_STEP);
        let t2 = t * t;
        let t3 = t2 * t;
        let guess = (2.0 * t3 - 3.0 * t2 + 1.0) * u0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * u1 + (t3 - t2) * m1;
        guess - (self.model.ln_formula(guess) + y) / self.model.ln_formula_slope(guess)
    }

    /// One symmetric draw as `(sign, ln |ξ|)`.
    #[inline]
    pub fn draw_log(&self, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let bits: u64 = rng.random();
        // 53 bits for the uniform, one for the sign.
        let q = 1.0 - (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let sign = if bits & 1 == 1 { 1.0 } else { -1.0 };
        (sign, self.log_quantile_y(-q.ln()))
    }
}

impl Draw for ModelSampler {
    #[inline]
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let (s, l) = self.draw_log(rng);
        s * l.exp()
    }
}

impl Summands for ModelSampler {
    fn log_sum(&self, n: u64, rng: &mut ChaCha8Rng) -> (f64, f64) {
        if !self.model.is_superheavy() {
            let mut s = CompensatedSum::new();
            for _ in 0..n {
                s.add(self.draw(rng));
            }
            return signed_log(s.value());
        }
        let mut acc = LogSum::new();
        for _ in 0..n {
            let (s, l) = self.draw_log(rng);
            acc.add(s, l);
        }
        acc.value()
    }
}

/// Signed sum of terms `s e^l` kept as `e^M · Σ s e^{l-M}` with a running max `M`.
#[derive(Debug, Clone, Copy)]
pub struct LogSum {
    m: f64,
    sum: CompensatedSum,
}

impl Default for LogSum {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSum {
    pub fn new() -> Self {
        LogSum { m: f64::NEG_INFINITY, sum: CompensatedSum::new() }
    }

    pub fn add(&mut self, sign: f64, l: f64) {
        if l > self.m {
            let scale = (self.m - l).exp();
            let old = self.sum.value() * scale;
            self.sum = CompensatedSum::new();
            self.sum.add(old);
            self.m = l;
        }
        self.sum.add(sign * (l - self.m).exp());
    }

    /// `(sign, ln |sum|)`.
    pub fn value(&self) -> (f64, f64) {
        let v = self.sum.value();
        let (s, l) = signed_log(v);
        (s, l + self.m)
    }
}

/// Symmetric `α`-stable law with `E e^{itX} = e^{-|t|^α}` (Chambers–Mallows–Stuck).
#[derive(Debug, Clone, Copy)]
pub struct StableSampler {
    pub alpha: f64,
}

impl StableSampler {
    pub fn new(alpha: f64) -> crate::Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return crate::error::invalid(format!("stable index must lie in (0, 2], got {alpha}"));
        }
        Ok(StableSampler { alpha })
    }
}

impl Draw for StableSampler {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let a = self.alpha;
        let v = PI * (rng.random::<f64>() - 0.5);
        let w: f64 = Exp1.sample(rng);
        if a == 1.0 {
            return v.tan();
        }
        (a * v).sin() / v.cos().powf(1.0 / a) * (((1.0 - a) * v).cos() / w).powf((1.0 - a) / a)
    }
}

impl Summands for StableSampler {
    fn log_sum(&self, n: u64, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let mut s = CompensatedSum::new();
        for _ in 0..n {
            s.add(self.draw(rng));
        }
        signed_log(s.value())
    }
}

/// `ξ(k) = ε(k) g_{k-1}` with `g_{k-1} = 1 + d·1{ε(k-1) > 0}` and `g_0 = 1`.
///
/// `ε` is symmetric, so `E[ξ(k) | past] = g_{k-1} E ε(k) = 0`.
pub struct Martingale<D> {
    pub innovations: D,
    pub dependence: f64,
}

impl<D: Draw> Martingale<D> {
    pub fn new(innovations: D, dependence: f64) -> crate::Result<Self> {
        if !(0.0..=1.0).contains(&dependence) {
            return crate::error::invalid(format!("dependence must lie in [0, 1], got {dependence}"));
        }
        Ok(Martingale { innovations, dependence })
    }

    pub fn sequence(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        let mut g = 1.0;
        for _ in 0..n {
            let e = self.innovations.draw(rng);
            out.push(e * g);
            g = if e > 0.0 { 1.0 + self.dependence } else { 1.0 };
        }
        out
    }

    /// `sup_k |ξ(k)|_p / |ε|_p = ((1 + (1+d)^p)/2)^{1/p}`.
    pub fn moment_factor(&self, p: f64) -> f64 {
        (0.5 * (1.0 + (1.0 + self.dependence).powf(p))).powf(1.0 / p)
    }
}

impl<D: Draw> Summands for Martingale<D> {
    fn log_sum(&self, n: u64, rng: &mut ChaCha8Rng) -> (f64, f64) {
        let mut s = CompensatedSum::new();
        let mut g = 1.0;
        for _ in 0..n {
            let e = self.innovations.draw(rng);
            s.add(e * g);
            g = if e > 0.0 { 1.0 + self.dependence } else { 1.0 };
        }
        signed_log(s.value())
    }
}

/// `n` martingale differences built on i.i.d. draws from `model`.
pub fn martingale_differences(model: &TailModel, n: usize, seed: u64, dependence: f64) -> crate::Result<Vec<f64>> {
    use rand::SeedableRng;
    let m = Martingale::new(ModelSampler::new(model), dependence)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(m.sequence(n, &mut rng))
}
