//! Applications: inverting a bound curve and non-asymptotic confidence
//! intervals for Monte-Carlo means and location parameters.

pub mod cli;

use serde::{Deserialize, Serialize};

use crate::bounds::{heavy_curve, intermediate_curve, moderate_curve, BoundCurve, RosenthalMode, Theorem};
use crate::charfn::{PsiBar, PsiFunction};
use crate::error::{invalid, Error, Result};
use crate::glspace::{natural_nu, NuFunction};
use crate::norming::{b_moderate, solve_b};
use crate::numeric::roots::bisect_first_true;
use crate::tailmodel::{Regime, TailModel};

/// Smallest `X` with `U(X) ≤ δ`; on a continuous curve `U(X) = δ`.
pub fn solve_x(curve: &BoundCurve, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return invalid(format!("δ must lie in (0, 1), got {delta}"));
    }
    let mut lo = curve.x_min.max(1e-300);
    if curve.strict || curve.x_min <= 0.0 {
        lo *= 1.0 + 1e-12;
    }
    if curve.eval_unchecked(lo) <= delta {
        return invalid(format!(
            "δ = {delta} is not below the curve value {} at the validity floor {}",
            curve.eval_unchecked(lo),
            curve.x_min
        ));
    }
    let mut hi = lo.max(1.0) * 2.0;
    while curve.eval_unchecked(hi) > delta {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::NoSolution(format!("the curve stays above δ = {delta} up to x = 1e300; widen the x range")));
        }
    }
    Ok(bisect_first_true(|x| curve.eval_unchecked(x) <= delta, lo, hi, 1e-15))
}

/// Noise description behind a confidence interval.
#[derive(Clone)]
pub enum NoiseModel {
    Tail(TailModel),
    /// Moment profile of a moderate-tailed noise.
    Nu(NuFunction),
}

/// Confidence interval `estimate ± X(δ) b(n)/n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CiReport {
    pub estimate: f64,
    pub half_width: f64,
    pub delta: f64,
    pub n: u64,
    pub b_n: f64,
    pub x_delta: f64,
    pub tag: Theorem,
    pub truth: Option<f64>,
    pub hit: Option<bool>,
}

/// Precomputed bound curve and norming rule for repeated intervals.
#[derive(Clone)]
pub struct CiEngine {
    curve: BoundCurve,
    regime: Regime,
    psi: Option<PsiFunction>,
    delta: f64,
    x_delta: f64,
}

impl CiEngine {
    /// `regime` overrides the model's own classification; `martingale`
    /// switches the moderate bound to the martingale Rosenthal factor.
    pub fn new(noise: &NoiseModel, delta: f64, regime: Option<Regime>, martingale: bool) -> Result<Self> {
        let mode = if martingale { RosenthalMode::Martingale } else { RosenthalMode::General };
        let (curve, regime, psi) = match noise {
            NoiseModel::Nu(nu) => {
                if let Some(r) = regime {
                    if r != Regime::Moderate {
                        return invalid("a moment profile only supports the moderate regime");
                    }
                }
                (moderate_curve(nu, mode)?, Regime::Moderate, None)
            }
            NoiseModel::Tail(model) => {
                let regime = regime.unwrap_or(model.classify());
                if model.is_superheavy() || model.r() <= 1.0 {
                    return invalid("the mean problem needs r > 1");
                }
                match regime {
                    Regime::Heavy => {
                        let psi = PsiFunction::from_tail(model)?;
                        let pb = PsiBar::new(psi.clone());
                        (heavy_curve(model, &pb)?, regime, Some(psi))
                    }
                    Regime::Intermediate => {
                        let psi = PsiFunction::from_tail(model)?;
                        let pb = PsiBar::new(psi.clone());
                        (intermediate_curve(model, &pb)?, regime, Some(psi))
                    }
                    Regime::Moderate => (moderate_curve(&natural_nu(model)?, mode)?, regime, None),
                    Regime::Superheavy => return invalid("the mean problem needs r > 1"),
                }
            }
        };
        let x_delta = solve_x(&curve, delta)?;
        Ok(CiEngine { curve, regime, psi, delta, x_delta })
    }

    pub fn curve(&self) -> &BoundCurve {
        &self.curve
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn x_delta(&self) -> f64 {
        self.x_delta
    }

    /// `b(n)`: `√n` for moderate noise, the natural norming otherwise.
    pub fn b_n(&self, n: u64) -> Result<f64> {
        match &self.psi {
            Some(psi) => solve_b(psi, n),
            None => Ok(b_moderate(n)),
        }
    }

    /// `X(δ) b(n)/n`.
    pub fn half_width(&self, n: u64) -> Result<f64> {
        Ok(self.x_delta * self.b_n(n)? / n as f64)
    }

    pub fn report(&self, samples: &[f64], truth: Option<f64>) -> Result<CiReport> {
        if samples.is_empty() {
            return invalid("at least one sample is required");
        }
        let n = samples.len() as u64;
        let estimate = crate::numeric::CompensatedSum::from_iter(samples.iter().copied()).value() / n as f64;
        let b_n = self.b_n(n)?;
        let half_width = self.x_delta * b_n / n as f64;
        let hit = truth.map(|t| (estimate - t).abs() <= half_width);
        Ok(CiReport { estimate, half_width, delta: self.delta, n, b_n, x_delta: self.x_delta, tag: self.curve.tag, truth, hit })
    }
}

/// Monte-Carlo interval for `E τ` from samples `τ(k)` whose centered law has the given noise.
pub fn ci_mean(samples: &[f64], noise: &NoiseModel, delta: f64, regime: Option<Regime>, truth: Option<f64>) -> Result<CiReport> {
    CiEngine::new(noise, delta, regime, false)?.report(samples, truth)
}

/// Interval for a location `θ` from observations `θ + ξ(k)`.
pub fn location_estimate(observations: &[f64], model: &TailModel, delta: f64, truth: Option<f64>) -> Result<CiReport> {
    CiEngine::new(&NoiseModel::Tail(model.clone()), delta, None, false)?.report(observations, truth)
}
