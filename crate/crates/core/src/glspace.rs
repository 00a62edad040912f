//! Grand Lebesgue norms: moment profiles `ν(p)`, the norm `sup_p |ξ|_p / ν(p)`,
//! the moment-to-tail transform `T^{(ν)}` and the Orlicz norm of weight vectors.

use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::charfn::PsiFunction;
use crate::error::{invalid, Result};
use crate::numeric::fit::least_squares;
use crate::numeric::roots::{bisect_first_true, geomspace, golden_max};
use crate::tailmodel::{Regime, TailModel};

/// Number of points in every `p` grid.
pub const P_GRID: usize = 256;
/// Distance kept from the open ends of the support.
pub const P_MARGIN: f64 = 1e-6;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum NuKind {
    Natural(TailModel),
    FamilySup(Vec<TailModel>),
    Explicit,
}

/// Moment profile on `[p_lo, r)`, `+∞` from `r` on.
#[derive(Clone)]
pub struct NuFunction {
    p_lo: f64,
    r: f64,
    kind: NuKind,
    eval: Evaluator,
    grid: Vec<f64>,
    table: Vec<f64>,
}

impl std::fmt::Debug for NuFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NuFunction").field("p_lo", &self.p_lo).field("r", &self.r).finish_non_exhaustive()
    }
}

/// `p` grid geometric in `r − p`, from `p_lo + margin` up to `r − margin`.
pub fn p_grid(p_lo: f64, r: f64) -> Vec<f64> {
    let gaps = geomspace(r - p_lo - P_MARGIN, P_MARGIN, P_GRID);
    gaps.into_iter().map(|g| r - g).collect()
}

impl NuFunction {
    fn build(p_lo: f64, r: f64, kind: NuKind, eval: Evaluator) -> Result<Self> {
        if !(r > p_lo + 2.0 * P_MARGIN) {
            return invalid(format!("support [{p_lo}, {r}) is empty"));
        }
        let grid = p_grid(p_lo, r);
        let table: Vec<f64> = grid.iter().map(|&p| eval(p)).collect();
        if table.iter().all(|v| !v.is_finite()) {
            return invalid("every moment on the support is infinite");
        }
        if table.iter().any(|&v| !(v > 0.0)) {
            return invalid("ν must be positive on its support");
        }
        Ok(NuFunction { p_lo, r, kind, eval, grid, table })
    }

    /// User-supplied `ν` on `[p_lo, r)`.
    pub fn explicit(p_lo: f64, r: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        Self::build(p_lo, r, NuKind::Explicit, Arc::new(f))
    }

    pub fn p_lo(&self) -> f64 {
        self.p_lo
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn kind(&self) -> &NuKind {
        &self.kind
    }

    pub fn eval(&self, p: f64) -> f64 {
        if p >= self.r {
            f64::INFINITY
        } else {
            (self.eval)(p)
        }
    }

    /// The cached `p` grid and values.
    pub fn grid(&self) -> (&[f64], &[f64]) {
        (&self.grid, &self.table)
    }

    /// Pointwise multiple `c·ν`.
    pub fn scaled(&self, c: f64) -> NuFunction {
        let inner = self.eval.clone();
        NuFunction {
            p_lo: self.p_lo,
            r: self.r,
            kind: NuKind::Explicit,
            eval: Arc::new(move |p| c * inner(p)),
            grid: self.grid.clone(),
            table: self.table.iter().map(|v| c * v).collect(),
        }
    }

    /// `p ↦ f(p)·ν(p)`.
    pub fn multiplied(&self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> NuFunction {
        let inner = self.eval.clone();
        let f = Arc::new(f);
        let g = f.clone();
        NuFunction {
            p_lo: self.p_lo,
            r: self.r,
            kind: NuKind::Explicit,
            eval: Arc::new(move |p| g(p) * inner(p)),
            grid: self.grid.clone(),
            table: self.grid.iter().zip(&self.table).map(|(&p, v)| f(p) * v).collect(),
        }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        crate::output::write_curve(w, ("p", "nu"), self.grid.iter().copied().zip(self.table.iter().copied()))
    }
}

fn default_p_lo(model: &TailModel) -> f64 {
    match model.classify() {
        Regime::Heavy => 1.0,
        _ => 2.0,
    }
}

/// `ν(p) = |ξ|_p` on `[p_lo, r)`; `p_lo` is 1 for heavy tails and 2 otherwise.
pub fn natural_nu(model: &TailModel) -> Result<NuFunction> {
    natural_nu_with(model, default_p_lo(model))
}

pub fn natural_nu_with(model: &TailModel, p_lo: f64) -> Result<NuFunction> {
    if model.is_superheavy() {
        return invalid("a superheavy tail has no finite moments");
    }
    let r = model.r();
    if r <= p_lo {
        return invalid(format!("natural ν needs r > {p_lo}, got r = {r}"));
    }
    let m = model.clone();
    NuFunction::build(p_lo, r, NuKind::Natural(model.clone()), Arc::new(move |p| m.moment_norm(p).unwrap_or(f64::INFINITY)))
}

/// `ν(p) = sup_i |ξ_i|_p` over a family sharing the support `[p_lo, min r_i)`.
pub fn natural_nu_family(models: &[TailModel], p_lo: f64) -> Result<NuFunction> {
    if models.is_empty() {
        return invalid("family must contain at least one model");
    }
    if models.iter().any(|m| m.is_superheavy()) {
        return invalid("a superheavy tail has no finite moments");
    }
    let r = models.iter().map(|m| m.r()).fold(f64::INFINITY, f64::min);
    let ms = models.to_vec();
    NuFunction::build(
        p_lo,
        r,
        NuKind::FamilySup(models.to_vec()),
        Arc::new(move |p| ms.iter().map(|m| m.moment_norm(p).unwrap_or(f64::INFINITY)).fold(0.0, f64::max)),
    )
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GlNormResult {
    pub value: f64,
    pub argmax_p: f64,
    pub grid_points: usize,
    /// The sup was attained at an open end of the grid.
    pub at_endpoint: bool,
    /// First `p` where the moment was infinite, if any.
    pub infinite_at: Option<f64>,
}

/// `||ξ||_{G(ν)} = sup_p |ξ|_p / ν(p)` over the grid with local refinement.
pub fn gl_norm(moment_fn: &dyn Fn(f64) -> f64, nu: &NuFunction) -> GlNormResult {
    let (grid, table) = nu.grid();
    let mut best = f64::NEG_INFINITY;
    let mut best_i = 0;
    for (i, (&p, &v)) in grid.iter().zip(table).enumerate() {
        let m = moment_fn(p);
        if !m.is_finite() {
            return GlNormResult { value: f64::INFINITY, argmax_p: p, grid_points: grid.len(), at_endpoint: false, infinite_at: Some(p) };
        }
        let ratio = m / v;
        if ratio > best {
            best = ratio;
            best_i = i;
        }
    }
    let mut argmax = grid[best_i];
    let lo = grid[best_i.saturating_sub(1)];
    let hi = grid[(best_i + 1).min(grid.len() - 1)];
    if hi > lo {
        let (p, v) = golden_max(|p| moment_fn(p) / nu.eval(p), lo, hi, 1e-12);
        if v > best {
            best = v;
            argmax = p;
        }
    }
    GlNormResult {
        value: best,
        argmax_p: argmax,
        grid_points: grid.len(),
        at_endpoint: best_i == 0 || best_i == grid.len() - 1,
        infinite_at: None,
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TailFromNu {
    pub value: f64,
    pub p_star: f64,
    pub at_endpoint: bool,
}

/// `T^{(ν)}(x) = min(1, inf_p (ν(p)/x)^p)`.
pub fn tail_from_nu(nu: &NuFunction, x: f64) -> f64 {
    tail_from_nu_detailed(nu, x).value
}

pub fn tail_from_nu_detailed(nu: &NuFunction, x: f64) -> TailFromNu {
    let (grid, table) = nu.grid();
    let lx = x.ln();
    let mut best = f64::INFINITY;
    let mut best_i = 0;
    for (i, (&p, &v)) in grid.iter().zip(table).enumerate() {
        let l = p * (v.ln() - lx);
        if l < best {
            best = l;
            best_i = i;
        }
    }
    let mut p_star = grid[best_i];
    let lo = grid[best_i.saturating_sub(1)];
    let hi = grid[(best_i + 1).min(grid.len() - 1)];
    if hi > lo && best.is_finite() {
        let (p, v) = golden_max(|p| -p * (nu.eval(p).ln() - lx), lo, hi, 1e-12);
        if -v < best {
            best = -v;
            p_star = p;
        }
    }
    TailFromNu { value: best.min(0.0).exp(), p_star, at_endpoint: best_i == 0 || best_i == grid.len() - 1 }
}

/// Writes `(x, T^{(ν)}(x))` rows as CSV.
pub fn write_tail_from_nu_csv<W: Write>(w: W, nu: &NuFunction, xs: &[f64]) -> Result<()> {
    crate::output::write_curve(w, ("x", "tail_from_nu"), xs.iter().map(|&x| (x, tail_from_nu(nu, x))))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct OrliczNorm {
    pub value: f64,
    /// `Σ ψ(|a_k|/t) < 1` for every `t > 0`, so the infimum collapsed to 0.
    pub degenerate: bool,
}

/// `inf { t > 0 : Σ_k ψ(|a_k|/t) ≤ 1 }`.
pub fn orlicz_weight_norm(a: &[f64], psi: &PsiFunction) -> OrliczNorm {
    let amax = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if amax == 0.0 {
        return OrliczNorm { value: 0.0, degenerate: false };
    }
    let sum = |t: f64| a.iter().map(|&v| psi.eval(v.abs() / t)).sum::<f64>();
    let lo = amax * 1e-12;
    if sum(lo) <= 1.0 {
        return OrliczNorm { value: 0.0, degenerate: true };
    }
    let mut hi = amax;
    while sum(hi) > 1.0 {
        hi *= 2.0;
    }
    OrliczNorm { value: bisect_first_true(|t| sum(t) <= 1.0, lo, hi, 1e-14), degenerate: false }
}

/// Log-exponent comparison between the model tail and the tail implied by its
/// natural moment profile.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MomentTailReport {
    /// Fitted `e` in `T^{(ν)}(x) ≈ C x^{-r} (ln x)^e`.
    pub nu_tail_exponent: f64,
    /// Fitted `e` in `T(x) ≈ C x^{-r} (ln x)^e`.
    pub model_exponent: f64,
    /// `T^{(ν)} ≥ T` on the whole grid.
    pub dominates: bool,
    pub x_min: f64,
    pub x_max: f64,
}

pub fn moments_from_tail_check(model: &TailModel) -> Result<MomentTailReport> {
    moments_from_tail_check_on(model, 1e2, 1e6)
}

pub fn moments_from_tail_check_on(model: &TailModel, x_min: f64, x_max: f64) -> Result<MomentTailReport> {
    let nu = natural_nu(model)?;
    let r = model.r();
    let xs = geomspace(x_min, x_max, 41);
    let design: Vec<Vec<f64>> = xs.iter().map(|x| vec![1.0, x.ln().ln()]).collect();
    let mut y_nu = Vec::with_capacity(xs.len());
    let mut y_t = Vec::with_capacity(xs.len());
    let mut dominates = true;
    for &x in &xs {
        let tn = tail_from_nu(&nu, x);
        let t = model.tail_eval(x);
        dominates &= tn >= t * (1.0 - 1e-9);
        y_nu.push(tn.ln() + r * x.ln());
        y_t.push(t.ln() + r * x.ln());
    }
    let f_nu = least_squares(&design, &y_nu, None).ok_or_else(|| crate::Error::Validation("singular fit".into()))?;
    let f_t = least_squares(&design, &y_t, None).ok_or_else(|| crate::Error::Validation("singular fit".into()))?;
    Ok(MomentTailReport { nu_tail_exponent: f_nu.coef[1], model_exponent: f_t.coef[1], dominates, x_min, x_max })
}
