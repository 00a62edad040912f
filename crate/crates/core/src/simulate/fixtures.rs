//! Discrete fixture with atoms at `exp(e^k)` and its compound-Poisson wrapper.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeric::roots::geomspace;
use crate::simulate::sampler::Draw;

/// Terms of `Σ_k exp(βrk − r e^k)` below this fraction of the sum are dropped.
const REMAINDER: f64 = 1e-17;

/// `P(ζ = exp(e^k)) = C₅ exp(βrk − r e^k)`, `k = 1, 2, …`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapFixture {
    pub r: f64,
    pub beta: f64,
    /// `ln C₅`.
    pub ln_c5: f64,
    /// `(k, ln x_k = e^k)` for the atoms kept by the sampler.
    pub atoms: Vec<(u32, f64)>,
    pub probs: Vec<f64>,
    cdf: Vec<f64>,
}

fn ln_weight(r: f64, beta: f64, k: u32) -> f64 {
    beta * r * k as f64 - r * (k as f64).exp()
}

impl GapFixture {
    /// Fixture with atoms `k ≤ k_max`; the dropped mass is below `1e-15`.
    pub fn new(r: f64, beta: f64, k_max: u32) -> Result<Self> {
        if !(r > 2.0 && r.is_finite()) {
            return invalid(format!("gap fixture needs r > 2, got {r}"));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return invalid(format!("gap fixture needs β > 0, got {beta}"));
        }
        if k_max == 0 {
            return invalid("k_max must be at least 1");
        }
        let ln_total = log_series(|k| ln_weight(r, beta, k), 1);
        let ln_c5 = -ln_total;
        let mut atoms = Vec::new();
        let mut probs = Vec::new();
        for k in 1..=k_max {
            let p = (ln_c5 + ln_weight(r, beta, k)).exp();
            atoms.push((k, (k as f64).exp()));
            probs.push(p);
        }
        let kept: f64 = probs.iter().sum();
        if 1.0 - kept > 1e-15 {
            return invalid(format!("k_max = {k_max} leaves mass {:e} unrepresented", 1.0 - kept));
        }
        let mut cdf = Vec::with_capacity(probs.len());
        let mut acc = 0.0;
        for p in &probs {
            acc += p;
            cdf.push(acc);
        }
        Ok(GapFixture { r, beta, ln_c5, atoms, probs, cdf })
    }

    /// Smallest `k_max` whose dropped mass is below `1e-15`.
    pub fn with_default_cutoff(r: f64, beta: f64) -> Result<Self> {
        let mut last = None;
        for k in 1..=6 {
            match Self::new(r, beta, k) {
                Ok(f) => return Ok(f),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap())
    }

    /// `E ζ`.
    pub fn mean(&self) -> f64 {
        self.atoms.iter().zip(&self.probs).map(|(&(_, l), p)| p * l.exp()).sum()
    }

    /// `|ζ|_p = (Σ_k P_k x_k^p)^{1/p}` for `p < r`, summed over all `k`.
    pub fn moment_norm(&self, p: f64) -> f64 {
        if p >= self.r {
            return f64::INFINITY;
        }
        let (r, b) = (self.r, self.beta);
        ((self.ln_c5 + log_series(|k| ln_weight(r, b, k) + p * (k as f64).exp(), 1)) / p).exp()
    }

    /// `P(ζ ≥ x_k)` at the `k`-th atom, summed over all atoms `j ≥ k`.
    pub fn tail_at_atom(&self, k: u32) -> f64 {
        let (r, b) = (self.r, self.beta);
        (self.ln_c5 + log_series(|j| ln_weight(r, b, j), k)).exp()
    }

    /// `ln P(ζ ≥ x_k) + r e^k`, the log of `T(x_k) x_k^r`.
    pub fn ln_scaled_tail_at_atom(&self, k: u32) -> f64 {
        let (r, b) = (self.r, self.beta);
        self.ln_c5 + log_series(|j| ln_weight(r, b, j), k) + r * (k as f64).exp()
    }

    /// Moment band: extremes of `|ζ|_p (r−p)^β` over `p ∈ [r−1, r−0.01]`.
    pub fn moment_band(&self, points: usize) -> MomentBand {
        let gaps = geomspace(1.0, 0.01, points);
        let ratios: Vec<f64> = gaps.iter().map(|&g| self.moment_norm(self.r - g) * g.powf(self.beta)).collect();
        let c = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let cc = ratios.iter().copied().fold(0.0, f64::max);
        MomentBand { lower: c, upper: cc, ratio: cc / c }
    }

    /// Largest `c₆` with `T(x_k) x_k^r ≥ c₆ (ln x_k)^β` at every atom `k ≤ k_fit`.
    pub fn fit_c6(&self, k_fit: u32) -> f64 {
        (1..=k_fit).map(|k| (self.ln_scaled_tail_at_atom(k) - self.beta * (k as f64)).exp()).fold(f64::INFINITY, f64::min)
    }

    fn draw_atom(&self, rng: &mut ChaCha8Rng) -> usize {
        let u: f64 = rng.random();
        self.cdf.iter().position(|&c| u < c).unwrap_or(self.cdf.len() - 1)
    }

    pub fn sampler(&self) -> GapSampler {
        GapSampler { fixture: self.clone(), shift: 0.0 }
    }

    /// Sampler of `ζ° = ζ − Eζ`.
    pub fn centered_sampler(&self) -> GapSampler {
        GapSampler { fixture: self.clone(), shift: self.mean() }
    }

    /// `θ = Σ_{m=1}^{τ} ζ°(m)` with `τ ~ Poisson(1)`.
    pub fn compound_sampler(&self) -> CompoundPoisson<GapSampler> {
        CompoundPoisson::new(self.centered_sampler(), 1.0).expect("unit rate is valid")
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MomentBand {
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
}

/// `ln Σ_{k ≥ k0} e^{f(k)}` for a sequence that eventually decays super-geometrically.
fn log_series(f: impl Fn(u32) -> f64, k0: u32) -> f64 {
    let mut terms = Vec::new();
    let mut best = f64::NEG_INFINITY;
    let mut k = k0;
    loop {
        let t = f(k);
        best = best.max(t);
        terms.push(t);
        if (t < best + REMAINDER.ln() && k > k0 + 2 && t < terms[terms.len() - 2]) || k > 10_000 {
            break;
        }
        k += 1;
    }
    best + terms.iter().map(|t| (t - best).exp()).sum::<f64>().ln()
}

#[derive(Debug, Clone)]
pub struct GapSampler {
    fixture: GapFixture,
    shift: f64,
}

impl Draw for GapSampler {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let i = self.fixture.draw_atom(rng);
        self.fixture.atoms[i].1.exp() - self.shift
    }
}

/// Compound Poisson sum of i.i.d. draws.
#[derive(Debug, Clone)]
pub struct CompoundPoisson<D> {
    inner: D,
    poisson: Poisson<f64>,
}

impl<D: Draw> CompoundPoisson<D> {
    pub fn new(inner: D, rate: f64) -> Result<Self> {
        let poisson = Poisson::new(rate).map_err(|e| crate::Error::Validation(format!("Poisson rate: {e}")))?;
        Ok(CompoundPoisson { inner, poisson })
    }
}

impl<D: Draw> Draw for CompoundPoisson<D> {
    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let tau = self.poisson.sample(rng) as u64;
        (0..tau).map(|_| self.inner.draw(rng)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn probabilities_sum_to_one() {
        let f = GapFixture::with_default_cutoff(3.0, 1.0).unwrap();
        assert!((f.probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(GapFixture::new(2.0, 1.0, 4).is_err());
        assert!(GapFixture::new(3.0, 0.0, 4).is_err());
    }

    #[test]
    fn moment_by_direct_sum() {
        let f = GapFixture::with_default_cutoff(3.0, 1.0).unwrap();
        let p = 2.5;
        let direct: f64 =
            (1..60u32).map(|k| (f.ln_c5 + 3.0 * k as f64 - 3.0 * (k as f64).exp() + p * (k as f64).exp()).exp()).sum::<f64>().powf(1.0 / p);
        assert!(((f.moment_norm(p) - direct) / direct).abs() < 1e-12);
    }

    #[test]
    fn centered_and_compound_have_zero_mean() {
        let f = GapFixture::with_default_cutoff(2.5, 2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let c = f.centered_sampler();
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| c.draw(&mut rng)).collect();
        let m = xs.iter().sum::<f64>() / n as f64;
        let sd = (xs.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n as f64).sqrt();
        assert!(m.abs() < 4.0 * sd / (n as f64).sqrt());
        let th = f.compound_sampler();
        let ys: Vec<f64> = (0..n).map(|_| th.draw(&mut rng)).collect();
        let m = ys.iter().sum::<f64>() / n as f64;
        let sd = (ys.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n as f64).sqrt();
        assert!(m.abs() < 4.0 * sd / (n as f64).sqrt());
    }
}
