//! Uniform tail bounds `U(x) ≥ sup_n P(|S(n)| > x)` as evaluable curves.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::charfn::{classify_mi_md_with, MonotoneClass, PsiBar};
use crate::error::{invalid, Error, Result};
use crate::glspace::{orlicz_weight_norm, p_grid, tail_from_nu, tail_from_nu_detailed, NuFunction};
use crate::numeric::gamma;
use crate::numeric::quad::{integrate_to_inf, Tol};
use crate::numeric::roots::{geomspace, golden_max};
use crate::tailmodel::{Regime, TailModel, Variant};

/// Upper end of the grid on which constructive constants are fitted.
pub const CONSTANT_GRID_MAX: f64 = 1e6;
/// Points in the constant-fitting grid.
pub const CONSTANT_GRID_POINTS: usize = 200;

/// Which result produced a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Thm21,
    Thm22,
    Cor21,
    HeavyMd,
    HeavyMi,
    HeavyFallback,
    Intermediate,
    Moderate,
    ModerateMartingale,
    Interpolation,
    SuperheavyUpper,
    TailFromMoments,
    Weighted,
    FieldSingle,
    FieldSums,
    Custom,
}

/// Origin of the multiplicative constant attached to a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantProvenance {
    /// The curve has no free constant.
    None,
    Explicit,
    /// Sup over the fitting grid of a ψ-route bound divided by the shape.
    Computed,
    UserSupplied,
}

type Curve = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Evaluable upper bound `x ↦ U(x)` clamped to `[0, 1]`.
#[derive(Clone)]
pub struct BoundCurve {
    f: Curve,
    pub tag: Theorem,
    /// Validity floor.
    pub x_min: f64,
    /// Whether the floor itself is excluded.
    pub strict: bool,
    pub constant: Option<f64>,
    pub provenance: ConstantProvenance,
}

impl fmt::Debug for BoundCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundCurve")
            .field("tag", &self.tag)
            .field("x_min", &self.x_min)
            .field("constant", &self.constant)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl BoundCurve {
    pub fn new(tag: Theorem, x_min: f64, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        BoundCurve { f: Arc::new(f), tag, x_min, strict: false, constant: None, provenance: ConstantProvenance::None }
    }

    pub fn strict(mut self) -> Self {
        self.strict = true;
        self
    }

    pub fn with_constant(mut self, c: f64, provenance: ConstantProvenance) -> Self {
        self.constant = Some(c);
        self.provenance = provenance;
        self
    }

    pub fn is_valid_at(&self, x: f64) -> bool {
        if self.strict {
            x > self.x_min
        } else {
            x >= self.x_min
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.is_valid_at(x) {
            return Err(Error::OutsideValidity { what: tag_name(self.tag), floor: self.x_min, x });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Curve value without the validity check.
    pub fn eval_unchecked(&self, x: f64) -> f64 {
        (self.f)(x).clamp(0.0, 1.0)
    }

    /// `c ·` curve, same tag and floor.
    pub fn scaled(&self, c: f64) -> BoundCurve {
        let f = self.f.clone();
        BoundCurve { f: Arc::new(move |x| c * f(x)), ..self.clone() }
    }
}

fn tag_name(t: Theorem) -> &'static str {
    match t {
        Theorem::Thm21 => "integral bound",
        Theorem::Thm22 => "moment bound",
        Theorem::Cor21 => "power-log corollary",
        Theorem::HeavyMd | Theorem::HeavyMi | Theorem::HeavyFallback => "heavy-tail bound",
        Theorem::Intermediate => "intermediate bound",
        Theorem::Moderate | Theorem::ModerateMartingale => "moderate bound",
        Theorem::Interpolation => "interpolation bound",
        Theorem::SuperheavyUpper => "superheavy sandwich",
        Theorem::TailFromMoments => "tail-from-moments bound",
        Theorem::Weighted => "weighted-sum bound",
        Theorem::FieldSingle | Theorem::FieldSums => "field supremum bound",
        Theorem::Custom => "custom bound",
    }
}

/// `K(p) = (2/π) Γ(1+p) sin(πp/2)`.
pub fn k_fn(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 2.0) {
        return invalid(format!("K(p) needs p in (0, 2), got {p}"));
    }
    Ok(2.0 / PI * gamma(1.0 + p) * (0.5 * PI * p).sin())
}

/// `∫_0^∞ f(t) t^{-p-1} dt`, split at `t = 1` and mapped to half-lines in `ln t`.
pub fn mellin_integral(f: &dyn Fn(f64) -> f64, p: f64) -> f64 {
    let tol = Tol::rel(1e-12);
    let low = integrate_to_inf(|w| f((-w).exp()) * (p * w).exp(), 0.0, tol).value;
    let high = integrate_to_inf(|w| f(w.exp()) * (-p * w).exp(), 0.0, tol).value;
    low + high
}

/// `E|η|^p = K(p) ∫_0^∞ ψ(t) t^{-p-1} dt` for `0 < p < 2`.
pub fn abs_moment_from_psi(psi: &dyn Fn(f64) -> f64, p: f64) -> Result<f64> {
    Ok(k_fn(p)? * mellin_integral(psi, p))
}

/// `x ∫_0^{2/x} ψ̄(t) dt`, unclamped.
fn thm21_raw(pb: &PsiBar, x: f64) -> f64 {
    let a = 2.0 / x;
    let inner = integrate_to_inf(|w| pb.eval(a * (-w).exp()) * (-w).exp(), 0.0, Tol::rel(1e-10)).value;
    x * a * inner
}

/// `min(1, x ∫_0^{2/x} ψ̄(t) dt)`.
pub fn bound_thm21(pb: &PsiBar, x: f64) -> f64 {
    if !(x > 0.0) {
        return 1.0;
    }
    thm21_raw(pb, x).min(1.0)
}

pub fn thm21_curve(pb: &PsiBar) -> BoundCurve {
    let pb = pb.clone();
    BoundCurve::new(Theorem::Thm21, 0.0, move |x| bound_thm21(&pb, x)).strict()
}

/// Precomputed `ln K(p) + ln I(p)` with `I(p) = ∫_0^∞ min(ψ̄, 2) t^{-p-1} dt`.
#[derive(Clone)]
pub struct Thm22 {
    pb: PsiBar,
    r: f64,
    grid: Vec<f64>,
    log_terms: Vec<f64>,
}

impl Thm22 {
    pub fn new(pb: &PsiBar, r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 2.0) {
            return invalid(format!("moment bound needs r in (0, 2), got {r}"));
        }
        if !pb.saturation().is_finite() {
            return invalid("the envelope never reaches its ceiling 2; the moment integral needs ψ̄ clamped at 2");
        }
        let grid = p_grid(0.0, r);
        let mut log_terms = Vec::with_capacity(grid.len());
        for &p in &grid {
            log_terms.push(k_fn(p)?.ln() + Self::integral(pb, p).ln());
        }
        Ok(Thm22 { pb: pb.clone(), r, grid, log_terms })
    }

    /// `I(p)`.
    pub fn integral(pb: &PsiBar, p: f64) -> f64 {
        let ts = pb.saturation();
        let head = integrate_to_inf(|w| pb.eval(ts * (-w).exp()) * (p * w).exp(), 0.0, Tol::rel(1e-11)).value;
        ts.powf(-p) * (head + 2.0 / p)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Bound at a fixed order `p`.
    pub fn at_order(&self, x: f64, p: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Ok(1.0);
        }
        Ok((k_fn(p)? * Self::integral(&self.pb, p) * x.powf(-p)).min(1.0))
    }

    /// `min(1, inf_p K(p) x^{-p} I(p))` and the minimizing `p`.
    pub fn eval_detailed(&self, x: f64) -> (f64, f64) {
        if !(x > 1.0) {
            return (1.0, f64::NAN);
        }
        let lx = x.ln();
        let mut best = f64::INFINITY;
        let mut best_i = 0;
        for (i, (&p, &l)) in self.grid.iter().zip(&self.log_terms).enumerate() {
            let v = l - p * lx;
            if v < best {
                best = v;
                best_i = i;
            }
        }
        let mut p_star = self.grid[best_i];
        let lo = self.grid[best_i.saturating_sub(1)];
        let hi = self.grid[(best_i + 1).min(self.grid.len() - 1)];
        if hi > lo {
            let f = |p: f64| -(k_fn(p).map(|k| k.ln()).unwrap_or(f64::INFINITY) + Self::integral(&self.pb, p).ln() - p * lx);
            let (p, v) = golden_max(f, lo, hi, 1e-10);
            if -v < best {
                best = -v;
                p_star = p;
            }
        }
        (best.exp().min(1.0), p_star)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_detailed(x).0
    }
}

/// Moment bound: infimum over `p ∈ (0, r)`, or the value at a fixed `p`.
pub fn bound_thm22(pb: &PsiBar, r: f64, x: f64, p: Option<f64>) -> Result<f64> {
    if x <= 1.0 {
        return Ok(1.0);
    }
    if let Some(p) = p {
        if !pb.saturation().is_finite() {
            return invalid("the envelope never reaches its ceiling 2; the moment integral needs ψ̄ clamped at 2");
        }
        return Ok((k_fn(p)? * Thm22::integral(pb, p) * x.powf(-p)).min(1.0));
    }
    Ok(Thm22::new(pb, r)?.eval(x))
}

pub fn thm22_curve(pb: &PsiBar, r: f64) -> Result<BoundCurve> {
    let t = Thm22::new(pb, r)?;
    Ok(BoundCurve::new(Theorem::Thm22, 0.0, move |x| t.eval(x)).strict())
}

/// Bound for `ψ̄(t) ≤ |t|^r |ln t|^β`, valid for `x > exp(2(β+1)/r)`.
pub fn bound_cor21(beta: f64, r: f64, x: f64) -> Result<f64> {
    if !(beta >= 0.0) || !(r > 0.0 && r < 2.0) {
        return invalid("corollary needs β ≥ 0 and r in (0, 2)");
    }
    let floor = (2.0 * (beta + 1.0) / r).exp();
    if !(x > floor) {
        return Err(Error::OutsideValidity { what: "power-log corollary", floor, x });
    }
    let b1 = beta + 1.0;
    let lx = x.ln();
    let v = (b1 - b1 * b1.ln()).exp() * k_fn(r - b1 / lx)? * x.powf(-r) * lx.powf(b1);
    Ok(v.min(1.0))
}

pub fn cor21_curve(beta: f64, r: f64) -> Result<BoundCurve> {
    bound_cor21(beta, r, f64::MAX.sqrt())?;
    let floor = (2.0 * (beta + 1.0) / r).exp();
    Ok(BoundCurve::new(Theorem::Cor21, floor, move |x| bound_cor21(beta, r, x).unwrap_or(1.0))
        .strict()
        .with_constant(((beta + 1.0) * (1.0 - (beta + 1.0).ln())).exp(), ConstantProvenance::Explicit))
}

/// `sup_x target(x)/shape(x)` over the constant-fitting grid.
fn fit_constant(x_min: f64, target: &dyn Fn(f64) -> f64, shape: &dyn Fn(f64) -> f64) -> f64 {
    let lo = x_min.max(1.0 + 1e-9) * (1.0 + 1e-9);
    geomspace(lo, CONSTANT_GRID_MAX.max(10.0 * lo), CONSTANT_GRID_POINTS).into_iter().map(|x| target(x) / shape(x)).fold(0.0, f64::max)
}

/// Regime bound for heavy tails: `C T(x)` (MD), `C x^{-r}` (MI), or the
/// integral bound itself when the class is indeterminate.
pub fn heavy_curve(model: &TailModel, pb: &PsiBar) -> Result<BoundCurve> {
    if model.classify() != Regime::Heavy {
        return invalid("heavy-tail bound needs r < 2");
    }
    let class = classify_mi_md_with(model, pb.base()).class;
    let x_min = E.max(model.x0());
    let pbc = pb.clone();
    let target = move |x: f64| bound_thm21(&pbc, x);
    match class {
        MonotoneClass::Md => {
            let m = model.clone();
            let shape = move |x: f64| m.tail_eval(x);
            let c = fit_constant(x_min, &target, &shape);
            Ok(BoundCurve::new(Theorem::HeavyMd, x_min, move |x| c * shape(x)).with_constant(c, ConstantProvenance::Computed))
        }
        MonotoneClass::Mi => {
            let r = model.r();
            let shape = move |x: f64| x.powf(-r);
            let c = fit_constant(x_min, &target, &shape);
            Ok(BoundCurve::new(Theorem::HeavyMi, x_min, move |x| c * shape(x)).with_constant(c, ConstantProvenance::Computed))
        }
        MonotoneClass::Indeterminate => Ok(BoundCurve::new(Theorem::HeavyFallback, x_min, target)),
    }
}

/// Point evaluation of [`heavy_curve`].
pub fn bound_heavy(model: &TailModel, pb: &PsiBar, x: f64) -> Result<f64> {
    heavy_curve(model, pb)?.eval(x)
}

/// Shape `x^{-2} (ln x)^{γ+1} L(ln x)` for `γ ≥ −1`, `x^{-2}` below.
pub fn intermediate_shape(model: &TailModel) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let g = model.gamma();
    let l = model.slowly_varying().clone();
    move |x: f64| {
        let lx = x.ln();
        if g >= -1.0 {
            x.powi(-2) * lx.powf(g + 1.0) * l.eval(lx)
        } else {
            x.powi(-2)
        }
    }
}

pub fn intermediate_curve(model: &TailModel, pb: &PsiBar) -> Result<BoundCurve> {
    if model.classify() != Regime::Intermediate {
        return invalid("intermediate bound needs r = 2");
    }
    let x_min = E.max(model.x0());
    let pbc = pb.clone();
    let target = move |x: f64| bound_thm21(&pbc, x);
    let shape = intermediate_shape(model);
    let c = fit_constant(x_min, &target, &shape);
    Ok(BoundCurve::new(Theorem::Intermediate, x_min, move |x| c * shape(x)).with_constant(c, ConstantProvenance::Computed))
}

pub fn bound_intermediate(model: &TailModel, pb: &PsiBar, x: f64) -> Result<f64> {
    intermediate_curve(model, pb)?.eval(x)
}

/// Constant family in the Rosenthal inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RosenthalMode {
    General,
    Symmetric,
    Martingale,
}

/// General-case Rosenthal constant.
pub const C_ROSENTHAL: f64 = 1.77638;
/// Symmetric-case Rosenthal constant.
pub const C_ROSENTHAL_SYMMETRIC: f64 = 1.53573;

/// `R(p)`: `C p/(e ln p)` for i.i.d. sums, `p √2` for martingales.
pub fn rosenthal(p: f64, mode: RosenthalMode) -> Result<f64> {
    match mode {
        RosenthalMode::General | RosenthalMode::Symmetric => {
            if !(p >= 2.0) {
                return invalid(format!("Rosenthal constant needs p ≥ 2 in the i.i.d. modes, got {p}"));
            }
            let c = if mode == RosenthalMode::General { C_ROSENTHAL } else { C_ROSENTHAL_SYMMETRIC };
            Ok(c * p / (E * p.ln()))
        }
        RosenthalMode::Martingale => {
            if !(p >= 1.0) {
                return invalid(format!("martingale Rosenthal constant needs p ≥ 1, got {p}"));
            }
            Ok(p * 2f64.sqrt())
        }
    }
}

/// `T^{(R·ν)}`, the tail implied by the Rosenthal-inflated moment profile.
pub fn moderate_curve(nu: &NuFunction, mode: RosenthalMode) -> Result<BoundCurve> {
    if nu.p_lo() < 2.0 {
        return invalid("moderate bound needs a ν supported in [2, r)");
    }
    let rnu = nu.multiplied(move |p| rosenthal(p, mode).unwrap_or(f64::INFINITY));
    let tag = if mode == RosenthalMode::Martingale { Theorem::ModerateMartingale } else { Theorem::Moderate };
    Ok(BoundCurve::new(tag, 0.0, move |x| tail_from_nu(&rnu, x)).strict())
}

pub fn bound_moderate(nu: &NuFunction, x: f64, mode: RosenthalMode) -> Result<f64> {
    moderate_curve(nu, mode)?.eval(x)
}

/// Shape `x^{-r} (ln x)^{γ+1} (ln ln x) L(ln x)`.
pub fn interpolation_shape(model: &TailModel) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let r = model.r();
    let g = model.gamma();
    let l = model.slowly_varying().clone();
    move |x: f64| {
        let lx = x.ln();
        x.powf(-r) * lx.powf(g + 1.0) * lx.ln() * l.eval(lx)
    }
}

/// Interpolation-type bound with a supplied constant or one fitted so the
/// curve dominates the moderate bound on the grid.
pub fn interpolation_curve(model: &TailModel, constant: Option<f64>) -> Result<BoundCurve> {
    if model.classify() != Regime::Moderate {
        return invalid("interpolation bound needs r > 2");
    }
    let floor = E.powf(E);
    let shape = interpolation_shape(model);
    let (c, prov) = match constant {
        Some(c) => (c, ConstantProvenance::UserSupplied),
        None => {
            let nu = crate::glspace::natural_nu(model)?;
            let m = moderate_curve(&nu, RosenthalMode::General)?;
            (fit_constant(floor, &|x| m.eval_unchecked(x), &shape), ConstantProvenance::Computed)
        }
    };
    Ok(BoundCurve::new(Theorem::Interpolation, floor, move |x| c * shape(x)).strict().with_constant(c, prov))
}

pub fn bound_interpolation(model: &TailModel, x: f64, constant: Option<f64>) -> Result<f64> {
    interpolation_curve(model, constant)?.eval(x)
}

/// `(T(x), T(x/C))`.
pub fn bound_superheavy(model: &TailModel, c: f64, x: f64) -> Result<(f64, f64)> {
    if !model.is_superheavy() {
        return invalid("superheavy sandwich needs a superheavy model");
    }
    if !(c >= 1.0) {
        return invalid(format!("sandwich constant must be at least 1, got {c}"));
    }
    if !(x / c > model.x0()) {
        return Err(Error::OutsideValidity { what: "superheavy sandwich", floor: c * model.x0(), x });
    }
    Ok((model.tail_eval(x), model.tail_eval(x / c)))
}

pub fn superheavy_curve(model: &TailModel, c: f64) -> Result<BoundCurve> {
    bound_superheavy(model, c, c * model.x0() * 2.0)?;
    let m = model.clone();
    Ok(BoundCurve::new(Theorem::SuperheavyUpper, c * model.x0(), move |x| m.tail_eval(x / c))
        .strict()
        .with_constant(c, ConstantProvenance::UserSupplied))
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TailFromMoments {
    pub value: f64,
    pub p_star: f64,
    /// `e^C x^{-r} E|η|^{r − C/ln x}` when a constant `C` was supplied.
    pub fixed_shift: Option<f64>,
}

/// `min(1, inf_p x^{-p} |η|_p^p)` over `p ∈ (p_lo, r)`.
pub fn tail_from_moments(
    moment_fn: impl Fn(f64) -> f64 + Send + Sync + 'static,
    p_lo: f64,
    r: f64,
    x: f64,
    c: Option<f64>,
) -> Result<TailFromMoments> {
    if x <= 1.0 {
        return Ok(TailFromMoments { value: 1.0, p_star: f64::NAN, fixed_shift: None });
    }
    let mf = Arc::new(moment_fn);
    let m2 = mf.clone();
    let nu = NuFunction::explicit(p_lo, r, move |p| m2(p))?;
    let d = tail_from_nu_detailed(&nu, x);
    let fixed_shift = c.map(|c| {
        let p = r - c / x.ln();
        if p <= p_lo {
            1.0
        } else {
            (c - r * x.ln() + p * mf(p).ln()).exp().min(1.0)
        }
    });
    Ok(TailFromMoments { value: d.value, p_star: d.p_star, fixed_shift })
}

pub fn tail_from_moments_curve(moment_fn: impl Fn(f64) -> f64 + Send + Sync + 'static, p_lo: f64, r: f64) -> Result<BoundCurve> {
    let nu = NuFunction::explicit(p_lo, r, moment_fn)?;
    Ok(BoundCurve::new(Theorem::TailFromMoments, 0.0, move |x| tail_from_nu(&nu, x)).strict())
}

/// Weighted-sum bound, gated on `||a||_ψ ≤ 1`; valid for `x > e`.
pub fn weighted_curve(pb: &PsiBar, weights: &[f64]) -> Result<BoundCurve> {
    let norm = orlicz_weight_norm(weights, pb.base());
    if norm.value > 1.0 + 1e-12 {
        return invalid(format!("weight vector has Orlicz norm {} > 1", norm.value));
    }
    let pbc = pb.clone();
    Ok(BoundCurve::new(Theorem::Weighted, E, move |x| bound_thm21(&pbc, x)).strict())
}

pub fn bound_weighted(pb: &PsiBar, weights: &[f64], x: f64) -> Result<f64> {
    weighted_curve(pb, weights)?.eval(x)
}

/// Shape function `x^{-r} (ln x)^γ ...` of the model's own tail formula,
/// without the cutoff clamp; used by shape fits.
pub fn model_shape(model: &TailModel) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let m = model.clone();
    move |x: f64| m.ln_formula(x.ln()).exp()
}

/// Whether a variant keeps the heavy-tail bound shapes meaningful.
pub fn has_power_shape(model: &TailModel) -> bool {
    !matches!(model.variant(), Variant::Superheavy(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::PsiFunction;
    use crate::glspace::natural_nu;
    use crate::tailmodel::TailSpec;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn k_values() {
        assert!(rel(k_fn(1.0).unwrap(), 2.0 / PI) < 1e-14);
        assert!(rel(k_fn(0.5).unwrap(), 0.398_942_280_401_432_7) < 1e-12);
        assert!(k_fn(2.0 - 1e-12).unwrap() < 1e-10);
        assert!(k_fn(2.0).is_err() && k_fn(0.0).is_err());
    }

    #[test]
    fn stable_moment_anchor() {
        let m = abs_moment_from_psi(&|t: f64| -(-t).exp_m1(), 0.5).unwrap();
        assert!(rel(m, 2f64.sqrt()) < 1e-9);
    }

    #[test]
    fn integral_bound_examples() {
        let pb = PsiBar::new(PsiFunction::power(1.0).unwrap());
        assert!(rel(bound_thm21(&pb, 4.0), 0.5) < 1e-8);
        assert_eq!(bound_thm21(&pb, 1.0), 1.0);
    }

    #[test]
    fn moment_bound_examples() {
        let pb = PsiBar::new(PsiFunction::power(1.5).unwrap());
        let i1 = Thm22::integral(&pb, 1.0);
        assert!(rel(i1, 3.0 * 2f64.powf(1.0 / 3.0)) < 1e-6, "{i1}");
        let fixed = bound_thm22(&pb, 1.5, 100.0, Some(1.0)).unwrap();
        assert!(rel(fixed, 2.0 / PI * 3.0 * 2f64.powf(1.0 / 3.0) / 100.0) < 1e-6);
        assert!(bound_thm22(&pb, 1.5, 100.0, None).unwrap() <= fixed);
        assert_eq!(bound_thm22(&pb, 1.5, 0.5, None).unwrap(), 1.0);
    }

    #[test]
    fn corollary_examples() {
        let v = bound_cor21(0.0, 1.0, E.powi(4)).unwrap();
        assert!(rel(v, E * k_fn(0.75).unwrap() * E.powi(-4) * 4.0) < 1e-13);
        assert!((v - 0.1077).abs() < 1e-4);
        assert!(bound_cor21(0.0, 1.0, E.powi(2)).is_err());
        let x = 1e150f64;
        let v = bound_cor21(0.0, 1.0, x).unwrap();
        assert!(rel(v * x / x.ln(), E * 2.0 / PI) < 1e-2);
    }

    #[test]
    fn rosenthal_values() {
        let lp = 4f64.ln();
        assert!(rel(rosenthal(4.0, RosenthalMode::General).unwrap(), 1.77638 * 4.0 / (E * lp)) < 1e-15);
        assert!((rosenthal(4.0, RosenthalMode::General).unwrap() - 1.8857).abs() < 2e-4);
        assert!(rel(rosenthal(3.0, RosenthalMode::Martingale).unwrap(), 3.0 * 2f64.sqrt()) < 1e-15);
        assert!((rosenthal(4.0, RosenthalMode::Symmetric).unwrap() - 1.6302).abs() < 2e-4);
        assert!(rosenthal(1.5, RosenthalMode::General).is_err());
    }

    #[test]
    fn superheavy_sandwich() {
        let m = TailSpec::superheavy(1.0).build().unwrap();
        let (lo, hi) = bound_superheavy(&m, 2.0, E.powi(4)).unwrap();
        assert!(rel(lo, 0.25) < 1e-14);
        assert!(rel(hi, 1.0 / (4.0 - 2f64.ln())) < 1e-14);
        let (a, b) = bound_superheavy(&m, 1.0, E.powi(4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tail_from_pareto_moments() {
        let t = tail_from_moments(|p: f64| (2.0 / (2.0 - p)).powf(1.0 / p), 0.5, 2.0, 10.0, Some(1.0)).unwrap();
        let want = 0.02 * E * 10f64.ln();
        assert!(rel(t.value, want) < 1e-8, "{}", t.value);
        assert!((t.p_star - (2.0 - 1.0 / 10f64.ln())).abs() < 1e-5);
        assert!((t.value - 0.12525).abs() < 1e-3);
    }

    #[test]
    fn interpolation_plug_in() {
        let m = TailSpec::plain(3.0, 0.0).build().unwrap();
        let v = bound_interpolation(&m, E.powi(4), Some(1.0)).unwrap();
        assert!(rel(v, E.powf(-12.0) * 4.0 * 4f64.ln()) < 1e-13);
        assert!(bound_interpolation(&m, E.powf(E), Some(1.0)).is_err());
    }

    #[test]
    fn moderate_curve_dominates_tail() {
        let m = TailSpec::plain(3.0, 0.0).build().unwrap();
        let nu = natural_nu(&m).unwrap();
        let c = moderate_curve(&nu, RosenthalMode::General).unwrap();
        for x in geomspace(3.0, 1e6, 50) {
            assert!(c.eval(x).unwrap() >= m.tail_eval(x));
        }
    }

    #[test]
    fn weighted_gate() {
        let pb = PsiBar::new(PsiFunction::power(1.5).unwrap());
        assert!(bound_weighted(&pb, &[2.0], 10.0).is_err());
        assert!(bound_weighted(&pb, &[0.5, 0.5], E).is_err());
        let v = bound_weighted(&pb, &[0.5, 0.5], 10.0).unwrap();
        assert_eq!(v, bound_thm21(&pb, 10.0));
    }
}
