//! The addition `ψ(t) = 1 − Re E e^{itξ}` of a symmetric law, its envelope
//! `ψ̄(t) = sup_{λ∈(0,1)} ψ(λt)/ψ(λ)`, small-`t` asymptotics and the MI/MD probe.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numeric::gamma;
use crate::numeric::interp::{CubicSpline, Pchip};
use crate::numeric::quad::{integrate_with_breaks, oscillatory_to_inf, Kernel, Tol};
use crate::numeric::roots::{bisect_first_true, geomspace, golden_max, linspace};
use crate::tailmodel::{Regime, TailModel, Variant};

const LOW_T: f64 = 1e-12;
const POINTS_PER_DECADE: f64 = 40.0;
const HIGH_T: f64 = 8.0;

/// Where `ψ` comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PsiSource {
    /// `1 − exp(−|t|^r)`.
    ClosedFormStable {
        r: f64,
    },
    /// `min(|t|^r, 2)`.
    Power {
        r: f64,
    },
    FromTail {
        model: TailModel,
    },
    /// Positive samples `(t, ψ(t))`, interpolated monotonically in log-log.
    Table {
        t: Vec<f64>,
        psi: Vec<f64>,
    },
    /// Symmetric law with `P(|ξ| = x_i) = p_i`.
    Discrete {
        atoms: Vec<f64>,
        probs: Vec<f64>,
    },
}

/// Outcome of matching the sine-transform constant against `E(1 − cos tξ)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Calibration {
    /// Constant in front of `t ∫ sin(tx) T(x) dx` that reproduced the direct value.
    pub factor: f64,
    pub reference_t: [f64; 3],
    pub max_rel_residual: f64,
}

#[derive(Debug, Clone)]
struct TailCache {
    low: CubicSpline,
    high: CubicSpline,
    t_split: f64,
    low_slope: f64,
}

/// Evaluable addition function.
#[derive(Debug, Clone)]
pub struct PsiFunction {
    source: PsiSource,
    cache: Option<TailCache>,
    table: Option<Pchip>,
    calibration: Option<Calibration>,
}

fn c_from_source(source: &PsiSource) -> Result<PsiFunction> {
    Ok(PsiFunction { source: source.clone(), cache: None, table: None, calibration: None })
}

impl PsiFunction {
    pub fn stable(r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 2.0) {
            return invalid(format!("stable index must lie in (0, 2], got {r}"));
        }
        c_from_source(&PsiSource::ClosedFormStable { r })
    }

    pub fn power(r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return invalid(format!("power exponent must be positive, got {r}"));
        }
        c_from_source(&PsiSource::Power { r })
    }

    pub fn table(t: Vec<f64>, psi: Vec<f64>) -> Result<Self> {
        if t.len() < 2 || t.len() != psi.len() {
            return invalid("psi table needs at least two matching samples");
        }
        if t[0] <= 0.0 || t.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("psi table abscissae must be positive and increasing");
        }
        if psi.iter().any(|&v| !(v > 0.0 && v <= 2.0)) {
            return invalid("psi table values must lie in (0, 2]");
        }
        let pchip = Pchip::new(t.iter().map(|v| v.ln()).collect(), psi.iter().map(|v| v.ln()).collect());
        Ok(PsiFunction { source: PsiSource::Table { t, psi }, cache: None, table: Some(pchip), calibration: None })
    }

    pub fn discrete(atoms: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != probs.len() {
            return invalid("discrete law needs matching atoms and probabilities");
        }
        if probs.iter().any(|&p| !(p >= 0.0)) || (probs.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return invalid("discrete probabilities must be nonnegative and sum to 1");
        }
        c_from_source(&PsiSource::Discrete { atoms, probs })
    }

    /// Builds the cached addition of a symmetric law with tail `model`.
    pub fn from_tail(model: &TailModel) -> Result<Self> {
        let x_f = model.log_plateau_end().exp();
        let t_split = (0.5 / x_f).min(1.0);

        let decades = (t_split / LOW_T).log10();
        // Both grids overrun the split so that natural end conditions stay away from it.
        let n_low = (decades * POINTS_PER_DECADE).ceil() as usize + 1;
        let mut low_t = geomspace(LOW_T, t_split, n_low);
        let ratio = low_t[1] / low_t[0];
        for k in 1..=12 {
            low_t.push(t_split * ratio.powi(k));
        }
        let high_lo = t_split * 0.5;
        let n_high = ((HIGH_T - high_lo) * x_f / 0.04).ceil() as usize + 1;
        let high_t = linspace(high_lo, HIGH_T, n_high.max(16));

        let mut low_vals = Vec::with_capacity(low_t.len());
        for &t in &low_t {
            low_vals.push(sine_transform(model, t)?);
        }
        let mut high_vals = Vec::with_capacity(high_t.len());
        for &t in &high_t {
            high_vals.push(sine_transform(model, t)?);
        }

        let reference_t = [0.01 / x_f, 0.1 / x_f, 0.5 / x_f];
        let mut ratio_sum = 0.0;
        let mut pairs = Vec::new();
        for &t in &reference_t {
            let s = sine_transform(model, t)?;
            let d = direct_addition(model, t)?;
            ratio_sum += d / s;
            pairs.push((s, d));
        }
        let mean_ratio = ratio_sum / 3.0;
        let factor = if (mean_ratio - 1.0).abs() <= (mean_ratio - 2.0).abs() { 1.0 } else { 2.0 };
        let max_rel_residual = pairs.iter().map(|(s, d)| ((factor * s - d) / d).abs()).fold(0.0, f64::max);
        if max_rel_residual > 1e-4 {
            return Err(Error::Quadrature(format!(
                "sine transform and direct addition disagree by {max_rel_residual:e} at the reference points"
            )));
        }

        let low_ln: Vec<f64> = low_vals.iter().map(|v| (factor * v).ln()).collect();
        let low_slope = (low_ln[1] - low_ln[0]) / (low_t[1].ln() - low_t[0].ln());
        let low = CubicSpline::new(low_t.iter().map(|t| t.ln()).collect(), low_ln);
        let high = CubicSpline::new(high_t, high_vals.iter().map(|v| factor * v).collect());
        Ok(PsiFunction {
            source: PsiSource::FromTail { model: model.clone() },
            cache: Some(TailCache { low, high, t_split, low_slope }),
            table: None,
            calibration: Some(Calibration { factor, reference_t, max_rel_residual }),
        })
    }

    pub fn source(&self) -> &PsiSource {
        &self.source
    }

    pub fn calibration(&self) -> Option<Calibration> {
        self.calibration
    }

    /// `ψ(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.abs();
        if t == 0.0 {
            return 0.0;
        }
        match &self.source {
            PsiSource::ClosedFormStable { r } => -(-t.powf(*r)).exp_m1(),
            PsiSource::Power { r } => t.powf(*r).min(2.0),
            PsiSource::Table { t: ts, psi } => {
                let p = self.table.as_ref().expect("table source carries its interpolant");
                let lt = t.ln();
                if t <= ts[0] {
                    let slope = (psi[1].ln() - psi[0].ln()) / (ts[1].ln() - ts[0].ln());
                    (psi[0].ln() + slope * (lt - ts[0].ln())).exp()
                } else if t >= ts[ts.len() - 1] {
                    psi[psi.len() - 1]
                } else {
                    p.eval(lt).exp().min(2.0)
                }
            }
            PsiSource::Discrete { atoms, probs } => atoms.iter().zip(probs).map(|(x, p)| p * 2.0 * (0.5 * t * x).sin().powi(2)).sum(),
            PsiSource::FromTail { model } => {
                let c = self.cache.as_ref().expect("tail source carries its cache");
                let factor = self.calibration.map_or(1.0, |k| k.factor);
                if t < LOW_T {
                    (c.low.eval(LOW_T.ln()) + c.low_slope * (t.ln() - LOW_T.ln())).exp()
                } else if t <= c.t_split {
                    c.low.eval(t.ln()).exp()
                } else if t <= HIGH_T {
                    c.high.eval(t).clamp(0.0, 2.0)
                } else {
                    (factor * sine_transform(model, t).unwrap_or(f64::NAN)).clamp(0.0, 2.0)
                }
            }
        }
    }

    /// Natural distance `d(t, s) = √ψ(t − s)`.
    pub fn distance(&self, t: f64, s: f64) -> f64 {
        self.eval(t - s).sqrt()
    }

    /// Index `ρ` with `ψ(λt)/ψ(λ) → t^ρ` as `λ → 0`, when known.
    pub fn index_at_zero(&self) -> f64 {
        match &self.source {
            PsiSource::ClosedFormStable { r } | PsiSource::Power { r } => *r,
            PsiSource::Discrete { .. } => 2.0,
            PsiSource::Table { t, psi } => (psi[1].ln() - psi[0].ln()) / (t[1].ln() - t[0].ln()),
            PsiSource::FromTail { model } => match model.classify() {
                Regime::Heavy => model.r(),
                Regime::Intermediate | Regime::Moderate => 2.0,
                Regime::Superheavy => 0.0,
            },
        }
    }

    /// Writes `(t, ψ(t))` rows as CSV.
    pub fn write_csv<W: Write>(&self, w: W, ts: &[f64]) -> Result<()> {
        crate::output::write_curve(w, ("t", "psi"), ts.iter().map(|&t| (t, self.eval(t))))
    }
}

/// Free-function form of [`PsiFunction::eval`].
pub fn psi_eval(psi: &PsiFunction, t: f64) -> f64 {
    psi.eval(t)
}

/// `t ∫_0^∞ sin(tx) T(x) dx`, evaluated as `(1 − cos t x0)` plus the plateau
/// contribution plus `∫ sin(y) T(y/t) dy` beyond the plateau.
pub fn sine_transform(model: &TailModel, t: f64) -> Result<f64> {
    let t = t.abs();
    if t == 0.0 {
        return Ok(0.0);
    }
    let x0 = model.x0();
    let xp = model.log_plateau_end().exp();
    let t0 = model.tail_at_cutoff();
    let head = 2.0 * (0.5 * t * x0).sin().powi(2);
    let plateau = t0 * 2.0 * (0.5 * t * (x0 + xp)).sin() * (0.5 * t * (xp - x0)).sin();
    let y0 = t * xp;
    let lt = t.ln();
    let g = |y: f64| model.ln_tail_at_log(y.ln() - lt).exp();
    let breaks = if y0 < PI { geomspace(y0, PI, ((PI / y0).log10() * 4.0).ceil() as usize + 2) } else { vec![] };
    let res = oscillatory_to_inf(g, Kernel::Sin, y0, &breaks, Tol::rel(1e-11));
    let value = head + plateau + res.value;
    if !res.converged && res.abs_error > 1e-8 * value.abs() {
        return Err(Error::Quadrature(format!("sine transform at t = {t:e}: value {value:e}, error estimate {:e}", res.abs_error)));
    }
    Ok(value)
}

/// `E(1 − cos tξ)` computed directly against the law of `|ξ|`: the atom at
/// `x0` plus the density beyond the plateau.
pub fn direct_addition(model: &TailModel, t: f64) -> Result<f64> {
    let t = t.abs();
    if t == 0.0 {
        return Ok(0.0);
    }
    let x0 = model.x0();
    let sp = model.log_plateau_end();
    let xp = sp.exp();
    let atom = model.atom_mass() * 2.0 * (0.5 * t * x0).sin().powi(2);
    // Density in s = ln x: x f(x) = T(x) · (−d ln T / ds).
    let dens_s = |s: f64| {
        let lt = model.ln_tail_at_log(s);
        lt.exp() * (-model.ln_formula_slope(s)).max(0.0)
    };
    let c = (PI / t).max(xp);
    let sc = c.ln();
    let mut near = 0.0;
    if sc > sp {
        let n = ((sc - sp).ceil() as usize).max(1) + 1;
        let pts = linspace(sp, sc, n);
        near = integrate_with_breaks(|s| 2.0 * (0.5 * t * s.exp()).sin().powi(2) * dens_s(s), &pts, Tol::rel(1e-12)).value;
    }
    let y1 = t * c;
    let lt = t.ln();
    let far_cos = oscillatory_to_inf(
        |y: f64| {
            let s = y.ln() - lt;
            dens_s(s) / y
        },
        Kernel::Cos,
        y1,
        &[],
        Tol::rel(1e-11),
    );
    let far = model.tail_eval(c) - far_cos.value;
    Ok(atom + near + far)
}

/// `C₃(r) = Γ(1−r) cos(πr/2)`.
pub fn c3(r: f64) -> Result<f64> {
    if r == 1.0 {
        return Err(Error::Undefined("C3 is undefined at r = 1; use psi_eval".into()));
    }
    if !(r > 0.0 && r < 2.0) {
        return invalid(format!("C3 needs r in (0, 2), got {r}"));
    }
    Ok(gamma(1.0 - r) * (0.5 * PI * r).cos())
}

/// `H(x) = ∫_0^x u² dF_{|ξ|}(u)`, the truncated second moment.
pub fn truncated_second_moment(model: &TailModel, x: f64) -> f64 {
    let x0 = model.x0();
    if x < x0 {
        return 0.0;
    }
    let sp = model.log_plateau_end();
    let mut h = model.atom_mass() * x0 * x0;
    let sx = x.ln();
    if sx > sp {
        let n = ((sx - sp).ceil() as usize).max(1) + 1;
        let pts = linspace(sp, sx, n);
        h += integrate_with_breaks(
            |s| (2.0 * s + model.ln_tail_at_log(s)).exp() * (-model.ln_formula_slope(s)).max(0.0),
            &pts,
            Tol::rel(1e-12),
        )
        .value;
    }
    h
}

/// Small-`t` asymptotic form of `ψ` for the model's regime.
pub fn psi_asymptotic(model: &TailModel, t: f64) -> Result<f64> {
    let t = t.abs();
    if !(t > 0.0 && t < (-1.0f64).exp()) {
        return invalid(format!("asymptotic form needs t in (0, 1/e), got {t}"));
    }
    let lt = -t.ln();
    let k = model.scale();
    let l = model.slowly_varying();
    match model.classify() {
        Regime::Heavy => {
            let r = model.r();
            let shape = match model.variant() {
                Variant::Loglog(kappa) => lt.powf(model.gamma()) * lt.ln().powf(kappa) * l.eval(lt.ln()),
                _ => lt.powf(model.gamma()) * l.eval(lt),
            };
            Ok(k * c3(r)? * t.powf(r) * shape)
        }
        Regime::Intermediate => Ok(0.5 * t * t * truncated_second_moment(model, 1.0 / t)),
        Regime::Moderate => Ok(0.5 * t * t * model.abs_moment(2.0)?),
        Regime::Superheavy => {
            let kappa = match model.variant() {
                Variant::Superheavy(k) => k,
                _ => unreachable!(),
            };
            Ok(k * lt.powf(-kappa) * l.eval(lt))
        }
    }
}

/// `λ` grid: geometric towards 0 and towards 1.
pub fn lambda_grid(points: usize) -> Vec<f64> {
    let half = points / 2;
    let mut g = geomspace(1e-8, 0.5, half);
    let mut up: Vec<f64> = geomspace(1e-8, 0.5, points - half).into_iter().map(|d| 1.0 - d).collect();
    up.reverse();
    g.extend(up);
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

/// Envelope `ψ̄` of an addition function.
#[derive(Debug, Clone)]
pub struct PsiBar {
    base: PsiFunction,
    lambdas: Vec<f64>,
    /// Non-decreasing table of `ln ψ̄` against `ln t` used by the bound integrals.
    table: Pchip,
    t_min: f64,
    t_sat: f64,
    low_slope: f64,
}

impl PsiBar {
    pub fn new(base: PsiFunction) -> Self {
        Self::with_resolution(base, 512)
    }

    pub fn with_resolution(base: PsiFunction, lambda_points: usize) -> Self {
        let lambdas = lambda_grid(lambda_points);
        let mut pb =
            PsiBar { base, lambdas, table: Pchip::new(vec![0.0, 1.0], vec![0.0, 0.0]), t_min: 1e-10, t_sat: f64::INFINITY, low_slope: 0.0 };
        let mut ts = Vec::new();
        let mut vals: Vec<f64> = Vec::new();
        let step = 10f64.powf(1.0 / POINTS_PER_DECADE);
        let mut t = pb.t_min;
        let mut run = 0.0f64;
        while t < 1e4 {
            let v = run.max(pb.eval_direct(t));
            if v >= 2.0 && !ts.is_empty() {
                // Land the last node exactly on the first t with ψ̄ = 2.
                t = bisect_first_true(|s| pb.eval_direct(s) >= 2.0, t / step, t, 1e-13);
                run = 2.0;
                ts.push(t.ln());
                vals.push(run.ln());
                break;
            }
            run = v;
            ts.push(t.ln());
            vals.push(run.ln());
            if run >= 2.0 {
                break;
            }
            t *= step;
        }
        pb.t_sat = if run >= 2.0 { t } else { f64::INFINITY };
        pb.low_slope = (vals[1] - vals[0]) / (ts[1] - ts[0]);
        // Lift the table by its worst shortfall at the cell midpoints so the
        // interpolant stays above the running max between nodes.
        let trial = Pchip::new(ts.clone(), vals.clone());
        let lift = (0..ts.len() - 1)
            .map(|i| {
                let mid = 0.5 * (ts[i] + ts[i + 1]);
                vals[i].max(pb.eval_direct(mid.exp()).ln()) - trial.eval(mid)
            })
            .fold(0.0f64, f64::max);
        let vals: Vec<f64> = vals.iter().map(|v| v + lift).collect();
        pb.table = Pchip::new(ts, vals);
        pb
    }

    pub fn base(&self) -> &PsiFunction {
        &self.base
    }

    /// `min(2, max(ψ(t), sup_λ ψ(λt)/ψ(λ), lim_{λ→0} ψ(λt)/ψ(λ)))`.
    pub fn eval_direct(&self, t: f64) -> f64 {
        let t = t.abs();
        if t == 0.0 {
            return 0.0;
        }
        let ratio = |l: f64| {
            let d = self.base.eval(l);
            if d > 0.0 {
                self.base.eval(l * t) / d
            } else {
                0.0
            }
        };
        let mut best_i = 0;
        let mut best = f64::NEG_INFINITY;
        for (i, &l) in self.lambdas.iter().enumerate() {
            let v = ratio(l);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let lo = self.lambdas[best_i.saturating_sub(1)];
        let hi = self.lambdas[(best_i + 1).min(self.lambdas.len() - 1)];
        if hi > lo {
            let (_, v) = golden_max(ratio, lo, hi, 1e-12);
            best = best.max(v);
        }
        // Limits at both open ends of the λ interval.
        let at_one = ratio(1.0);
        let limit = t.powf(self.base.index_at_zero()).max(at_one);
        best.max(limit).max(self.base.eval(t)).min(2.0)
    }

    /// Non-decreasing tabulated `ψ̄`, used inside the bound integrals.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.abs();
        if t == 0.0 {
            return 0.0;
        }
        if t >= self.t_sat {
            return 2.0;
        }
        let lt = t.ln();
        if t < self.t_min {
            return (self.table.eval(self.t_min.ln()) + self.low_slope * (lt - self.t_min.ln())).exp();
        }
        if lt > self.table.x_max() {
            return self.eval_direct(t);
        }
        self.table.eval(lt).exp().min(2.0)
    }

    /// Smallest tabulated `t` at which `ψ̄` reaches its ceiling 2.
    pub fn saturation(&self) -> f64 {
        self.t_sat
    }

    /// Local log-log slope of the table below its first point.
    pub fn low_slope(&self) -> f64 {
        self.low_slope
    }

    pub fn table_min(&self) -> f64 {
        self.t_min
    }

    pub fn write_csv<W: Write>(&self, w: W, ts: &[f64]) -> Result<()> {
        crate::output::write_curve(w, ("t", "psi_bar"), ts.iter().map(|&t| (t, self.eval_direct(t))))
    }
}

/// Free-function form of [`PsiBar::eval_direct`].
pub fn psi_bar_eval(pb: &PsiBar, t: f64) -> f64 {
    pb.eval_direct(t)
}

/// Monotone-ratio class of a heavy-tailed law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonotoneClass {
    /// The envelope collapses to `ψ` itself (supremum as `λ → 1`).
    Md,
    /// The envelope is `t^r` (supremum as `λ → 0`).
    Mi,
    Indeterminate,
}

/// Result of the numeric monotonicity probe of `λ ↦ ψ(λt)/ψ(λ)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MonotoneProbe {
    pub t: f64,
    /// `Md` when the ratio increases in `λ`, `Mi` when it decreases.
    pub direction: MonotoneClass,
    /// Largest grid `Δ` with the ratio monotone on `(0, Δ]`.
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub class: MonotoneClass,
    pub probe: MonotoneProbe,
}

/// Probes monotonicity of `λ ↦ ψ(λt)/ψ(λ)` on a geometric grid in `(0, 1)`.
///
/// The direction is read off the `λ → 0` end; `delta` is where it first breaks.
pub fn monotone_probe(psi: &PsiFunction, t: f64) -> MonotoneProbe {
    let lambdas = geomspace(1e-8, 1.0 - 1e-8, 400);
    let theta: Vec<f64> = lambdas.iter().map(|&l| psi.eval(l * t) / psi.eval(l)).collect();
    let tol = 1e-9;
    let start = theta[20] - theta[0];
    let direction = if start > tol * theta[0] {
        MonotoneClass::Md
    } else if start < -tol * theta[0] {
        MonotoneClass::Mi
    } else {
        MonotoneClass::Indeterminate
    };
    let sign = match direction {
        MonotoneClass::Md => 1.0,
        MonotoneClass::Mi => -1.0,
        MonotoneClass::Indeterminate => 0.0,
    };
    let mut delta = lambdas[0];
    for i in 1..theta.len() {
        let step = sign * (theta[i] - theta[i - 1]);
        if sign == 0.0 || step < -tol * theta[i].abs() {
            break;
        }
        delta = lambdas[i];
    }
    MonotoneProbe { t, direction, delta }
}

/// MI/MD class of a heavy model: rule-based where the log exponents decide,
/// otherwise from the numeric probe.
pub fn classify_mi_md(model: &TailModel) -> Result<MonotoneReport> {
    if model.classify() != Regime::Heavy {
        return invalid("MI/MD classification applies to heavy tails only (r < 2)");
    }
    let psi = PsiFunction::from_tail(model)?;
    Ok(classify_mi_md_with(model, &psi))
}

/// As [`classify_mi_md`] with a precomputed addition function.
pub fn classify_mi_md_with(model: &TailModel, psi: &PsiFunction) -> MonotoneReport {
    let probe = monotone_probe(psi, 0.5);
    let g = model.gamma();
    let class = if g > 0.0 {
        MonotoneClass::Md
    } else if g < 0.0 {
        MonotoneClass::Mi
    } else {
        match model.variant() {
            Variant::Loglog(k) if k > 0.0 => MonotoneClass::Md,
            Variant::Loglog(k) if k < 0.0 => MonotoneClass::Mi,
            _ => MonotoneClass::Indeterminate,
        }
    };
    MonotoneReport { class, probe }
}

/// Regular-tail probe: the largest `C₁` with `T(2/a) ≥ C₁ a^{-1} ∫_{-a}^{a} ψ`
/// on a grid of `a` values.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegularTailProbe {
    pub c1: f64,
    pub a_min: f64,
    pub a_max: f64,
}

pub fn regular_tail_probe(model: &TailModel, psi: &PsiFunction, a_min: f64, a_max: f64) -> RegularTailProbe {
    let mut c1 = f64::INFINITY;
    for a in geomspace(a_min, a_max, 41) {
        let pts = geomspace(a * 1e-9, a, 20);
        let avg = 2.0 * integrate_with_breaks(|t| psi.eval(t), &pts, Tol::rel(1e-10)).value / a;
        c1 = c1.min(model.tail_eval(2.0 / a) / avg);
    }
    RegularTailProbe { c1, a_min, a_max }
}
