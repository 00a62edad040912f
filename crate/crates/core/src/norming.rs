//! Natural norming sequences: the exact root of `ψ(1/b) = 1/n`, its
//! asymptotic form, `√n`, and the exponential superheavy norming `B_n`.

use serde::{Deserialize, Serialize};

use crate::charfn::PsiFunction;
use crate::error::{invalid, Error, Result};
use crate::numeric::roots::{bisect_first_true, geomspace};
use crate::tailmodel::{Regime, SlowlyVarying, TailModel, Variant};

/// How a norming value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ExactRoot,
    Asymptotic,
    SqrtN,
    Superheavy,
}

/// Root of the norming equation together with its existence flag.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NormingRoot {
    /// `max(1, root)`.
    pub b: f64,
    /// Raw root of `ψ(1/b) = 1/n`, or 1 when none exists with `b ≥ 1`.
    pub root: f64,
    /// `n` lies below the threshold at which a root `b ≥ 1` exists.
    pub below_existence: bool,
}

/// `b(n)` with `ψ(1/b(n)) = 1/n`; `b(1) = 1`.
pub fn solve_b(psi: &PsiFunction, n: u64) -> Result<f64> {
    Ok(solve_b_detailed(psi, n)?.b)
}

pub fn solve_b_detailed(psi: &PsiFunction, n: u64) -> Result<NormingRoot> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if n == 1 {
        return Ok(NormingRoot { b: 1.0, root: 1.0, below_existence: false });
    }
    let target = 1.0 / n as f64;
    if psi.eval(1.0) <= target {
        return Ok(NormingRoot { b: 1.0, root: 1.0, below_existence: true });
    }
    let mut hi = 2.0;
    while psi.eval(1.0 / hi) > target {
        hi *= 16.0;
        if hi > 1e300 {
            return Err(Error::NoSolution(format!("ψ(1/b) stays above 1/{n} for all b up to 1e300")));
        }
    }
    let probe = geomspace(1.0 / hi, 1.0, 64);
    let vals: Vec<f64> = probe.iter().map(|&t| psi.eval(t)).collect();
    if let Some(w) = vals.windows(2).position(|w| w[1] < w[0] * (1.0 - 1e-9)) {
        return Err(Error::Validation(format!(
            "ψ is not increasing near 0: ψ({:e}) = {:e} > ψ({:e}) = {:e}",
            probe[w],
            vals[w],
            probe[w + 1],
            vals[w + 1]
        )));
    }
    let b = bisect_first_true(|b| psi.eval(1.0 / b) <= target, 1.0, hi, 1e-13);
    Ok(NormingRoot { b, root: b, below_existence: false })
}

/// `n^{1/r} (ln n)^{γ/r} L^{1/r}(ln n)`, with the consistency flag set when
/// `L` is constant or a log power.
pub fn b_asymptotic(model: &TailModel, n: u64) -> Result<(f64, bool)> {
    if !matches!(model.classify(), Regime::Heavy | Regime::Intermediate) {
        return invalid("asymptotic norming needs a heavy or intermediate tail");
    }
    if n == 0 {
        return invalid("n must be at least 1");
    }
    let r = model.r();
    let nf = n as f64;
    let ln_n = nf.ln();
    let log_part = if model.gamma() == 0.0 { 0.0 } else { model.gamma() / r * ln_n.ln() };
    let l_part = match model.variant() {
        Variant::Loglog(kappa) => {
            let ll = ln_n.ln().max(1.0);
            (kappa * ll.ln() + model.slowly_varying().ln_eval(ll)) / r
        }
        _ => model.slowly_varying().ln_eval(ln_n) / r,
    };
    let b = (ln_n / r + log_part + l_part).exp();
    Ok((b, model.slowly_varying().is_parametric()))
}

/// `√n`.
pub fn b_moderate(n: u64) -> f64 {
    (n as f64).sqrt()
}

/// Increasing weight `w` with `w(1) = 1` for the superheavy norming.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weight {
    /// `1 + ln n`.
    OnePlusLog,
    /// `n^a`, `a > 0`.
    Power { a: f64 },
}

impl Weight {
    pub fn eval(&self, n: f64) -> f64 {
        match self {
            Weight::OnePlusLog => 1.0 + n.ln(),
            Weight::Power { a } => n.powf(*a),
        }
    }
}

/// `ln B_n = (K n)^{1/κ} L^{1/κ}((K n)^{1/κ}) w(n)`.
pub fn b_superheavy_log(k: f64, kappa: f64, l: &SlowlyVarying, w: &dyn Fn(f64) -> f64, n: u64) -> Result<f64> {
    if !(k > 0.0 && kappa > 0.0) {
        return invalid("superheavy norming needs K > 0 and κ > 0");
    }
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if (w(1.0) - 1.0).abs() > 1e-12 {
        return invalid(format!("weight must satisfy w(1) = 1, got {}", w(1.0)));
    }
    let mut probe: Vec<f64> = (1..=64).map(|v| v as f64).collect();
    probe.extend(geomspace(65.0, (n as f64).max(65.0), 64));
    if let Some(p) = probe.windows(2).find(|p| p[1] > p[0] && !(w(p[1]) > w(p[0]))) {
        return invalid(format!("weight must be increasing, but w({}) ≥ w({})", p[0], p[1]));
    }
    let nf = n as f64;
    let base = (k * nf).powf(1.0 / kappa);
    Ok(base * (l.ln_eval(base) / kappa).exp() * w(nf))
}

/// `B_n`; overflows to `+∞` for large `n`, use [`b_superheavy_log`] there.
pub fn b_superheavy(k: f64, kappa: f64, l: &SlowlyVarying, w: &dyn Fn(f64) -> f64, n: u64) -> Result<f64> {
    Ok(b_superheavy_log(k, kappa, l, w, n)?.exp())
}

/// Norming values over a set of `n`, stored both directly and as logs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormingSequence {
    pub ns: Vec<u64>,
    pub values: Vec<f64>,
    pub log_values: Vec<f64>,
    pub provenance: Provenance,
    pub descriptor: String,
    /// Per-`n` flag: no root `b ≥ 1` exists (exact) or the consistency
    /// condition is not known to hold (asymptotic).
    pub flags: Vec<bool>,
    pub weights: Option<Vec<f64>>,
}

impl NormingSequence {
    fn from_logs(ns: Vec<u64>, log_values: Vec<f64>, provenance: Provenance, descriptor: String, flags: Vec<bool>) -> Self {
        let values = log_values.iter().map(|v| v.exp()).collect();
        NormingSequence { ns, values, log_values, provenance, descriptor, flags, weights: None }
    }

    pub fn exact(psi: &PsiFunction, ns: &[u64]) -> Result<Self> {
        let mut logs = Vec::with_capacity(ns.len());
        let mut flags = Vec::with_capacity(ns.len());
        for &n in ns {
            let root = solve_b_detailed(psi, n)?;
            logs.push(root.b.ln());
            flags.push(root.below_existence);
        }
        let desc = serde_json::to_string(psi.source()).unwrap_or_default();
        Ok(Self::from_logs(ns.to_vec(), logs, Provenance::ExactRoot, desc, flags))
    }

    pub fn asymptotic(model: &TailModel, ns: &[u64]) -> Result<Self> {
        let mut logs = Vec::with_capacity(ns.len());
        let mut flags = Vec::with_capacity(ns.len());
        for &n in ns {
            let (b, ok) = b_asymptotic(model, n)?;
            logs.push(b.ln());
            flags.push(!ok);
        }
        let desc = serde_json::to_string(model).unwrap_or_default();
        Ok(Self::from_logs(ns.to_vec(), logs, Provenance::Asymptotic, desc, flags))
    }

    pub fn sqrt_n(ns: &[u64]) -> Self {
        let logs = ns.iter().map(|&n| 0.5 * (n as f64).ln()).collect();
        Self::from_logs(ns.to_vec(), logs, Provenance::SqrtN, "sqrt_n".into(), vec![false; ns.len()])
    }

    /// Superheavy norming for a superheavy model; `log_values` holds `ln B_n`.
    pub fn superheavy(model: &TailModel, w: Weight, ns: &[u64]) -> Result<Self> {
        let kappa = match model.variant() {
            Variant::Superheavy(k) => k,
            _ => return invalid("superheavy norming needs a superheavy model"),
        };
        let wf = |n: f64| w.eval(n);
        let mut logs = Vec::with_capacity(ns.len());
        for &n in ns {
            logs.push(b_superheavy_log(model.scale(), kappa, model.slowly_varying(), &wf, n)?);
        }
        let desc = serde_json::to_string(model).unwrap_or_default();
        let mut seq = Self::from_logs(ns.to_vec(), logs, Provenance::Superheavy, desc, vec![false; ns.len()]);
        seq.weights = Some(ns.iter().map(|&n| w.eval(n as f64)).collect());
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tailmodel::TailSpec;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn exact_roots() {
        let s = PsiFunction::stable(1.0).unwrap();
        assert!(rel(solve_b(&s, 100).unwrap(), 1.0 / -(0.99f64.ln())) < 1e-10);
        let p = PsiFunction::power(2.0).unwrap();
        assert!(rel(solve_b(&p, 10_000).unwrap(), 100.0) < 1e-10);
        assert_eq!(solve_b(&s, 1).unwrap(), 1.0);
    }

    #[test]
    fn missing_root_is_flagged() {
        let s = PsiFunction::stable(1.0).unwrap();
        // ψ(1) ≈ 0.632 < 1/1 only fails for n = 1; with a small ψ the root sits below 1.
        let tiny = PsiFunction::table(vec![1e-3, 1.0, 10.0], vec![1e-6, 0.1, 0.2]).unwrap();
        let r = solve_b_detailed(&tiny, 5).unwrap();
        assert!(r.below_existence && r.b == 1.0);
        assert!(!solve_b_detailed(&s, 2).unwrap().below_existence);
    }

    #[test]
    fn asymptotic_values() {
        let m = TailSpec::plain(1.5, 3.0).build().unwrap();
        let (b, ok) = b_asymptotic(&m, 20).unwrap();
        let want = 20f64.powf(1.0 / 1.5) * 20f64.ln().powf(2.0);
        assert!(rel(b, want) < 1e-12 && ok);
        let c = TailSpec::plain(1.0, 0.0).build().unwrap();
        assert!(rel(b_asymptotic(&c, 1_000_000).unwrap().0, 1e6) < 1e-12);
        let l = TailSpec::plain(1.5, 0.0).slowly_varying(SlowlyVarying::LogPower { delta: 1.0 }).build().unwrap();
        assert!(b_asymptotic(&l, 100).unwrap().1);
    }

    #[test]
    fn superheavy_values() {
        let w = |n: f64| 1.0 + n.ln();
        let one = SlowlyVarying::one();
        assert!(rel(b_superheavy(1.0, 1.0, &one, &w, 1).unwrap(), std::f64::consts::E) < 1e-14);
        assert!(rel(b_superheavy_log(1.0, 1.0, &one, &w, 2).unwrap(), 2.0 * (1.0 + 2f64.ln())) < 1e-14);
        assert!(rel(b_superheavy(1.0, 2.0, &one, &w, 4).unwrap(), (2.0 * (1.0 + 4f64.ln())).exp()) < 1e-13);
        let bad = |n: f64| 1.0 / n;
        assert!(b_superheavy_log(1.0, 1.0, &one, &bad, 3).is_err());
        let flat = |n: f64| if n < 10.0 { 1.0 + n.ln() } else { 1.0 + 10f64.ln() };
        assert!(b_superheavy_log(1.0, 1.0, &one, &flat, 100).is_err());
    }

    #[test]
    fn moderate() {
        assert_eq!(b_moderate(1), 1.0);
        assert_eq!(b_moderate(4), 2.0);
        assert_eq!(b_moderate(1_000_000), 1000.0);
    }
}
