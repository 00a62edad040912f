//! Finite random fields: natural distances from moment profiles, covering
//! numbers, entropy integrals and uniform tail bounds for field suprema.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundCurve, ConstantProvenance, Theorem};
use crate::error::{invalid, Error, Result};
use crate::glspace::{gl_norm, NuFunction};
use crate::numeric::fit::least_squares;
use crate::numeric::quad::{integrate_to_inf, Tol};
use crate::numeric::roots::geomspace;
use crate::simulate::{calibrate_constant, EmpiricalTail};
use crate::tailmodel::SlowlyVarying;

/// Largest space for which covering numbers are solved exactly.
pub const EXACT_COVER_MAX: usize = 24;
/// Triangle-inequality slack.
pub const METRIC_TOL: f64 = 1e-9;

/// Finite index set with a semi-distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpace {
    pub coords: Vec<Vec<f64>>,
    pub dist: Vec<Vec<f64>>,
}

impl GridSpace {
    pub fn new(coords: Vec<Vec<f64>>, dist: Vec<Vec<f64>>) -> Result<Self> {
        let n = dist.len();
        if n == 0 {
            return invalid("a space needs at least one point");
        }
        if coords.len() != n || dist.iter().any(|row| row.len() != n) {
            return invalid("distance matrix must be square and match the point list");
        }
        for i in 0..n {
            if dist[i][i] != 0.0 {
                return invalid(format!("d({i}, {i}) must be 0"));
            }
            for j in 0..n {
                let d = dist[i][j];
                if !(d >= 0.0 && d.is_finite()) || d != dist[j][i] {
                    return invalid(format!("d({i}, {j}) must be finite, non-negative and symmetric"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > dist[i][j] + dist[j][k] + METRIC_TOL {
                        return invalid(format!("triangle inequality fails for ({i}, {j}, {k})"));
                    }
                }
            }
        }
        Ok(GridSpace { coords, dist })
    }

    /// Points with the distance induced by a function of coordinate pairs.
    pub fn from_metric(coords: Vec<Vec<f64>>, d: impl Fn(&[f64], &[f64]) -> f64 + Sync) -> Result<Self> {
        let n = coords.len();
        let dist: Vec<Vec<f64>> =
            (0..n).into_par_iter().map(|i| (0..n).map(|j| if i == j { 0.0 } else { d(&coords[i], &coords[j]) }).collect()).collect();
        let mut sym = dist.clone();
        for i in 0..n {
            for j in 0..i {
                sym[i][j] = dist[j][i];
            }
        }
        GridSpace::new(coords, sym)
    }

    /// Points on the line with `|u − v|`.
    pub fn on_line(points: &[f64]) -> Result<Self> {
        GridSpace::from_metric(points.iter().map(|&v| vec![v]).collect(), |a, b| (a[0] - b[0]).abs())
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().flatten().copied().fold(0.0, f64::max)
    }
}

/// `d(v₁, v₂) = ||η(v₁) − η(v₂)||_{G(θ)}` from the moment profile of each difference.
pub fn natural_distance(
    coords: Vec<Vec<f64>>,
    diff_moment: impl Fn(usize, usize, f64) -> f64 + Sync,
    theta: &NuFunction,
) -> Result<GridSpace> {
    let n = coords.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<(usize, usize, f64)> =
        pairs.par_iter().map(|&(i, j)| (i, j, gl_norm(&|p| diff_moment(i, j, p), theta).value)).collect();
    let mut dist = vec![vec![0.0; n]; n];
    for (i, j, d) in values {
        if !d.is_finite() {
            return Err(Error::Undefined(format!("distance between points {i} and {j} is infinite")));
        }
        dist[i][j] = d;
        dist[j][i] = d;
    }
    GridSpace::new(coords, dist)
}

/// Natural distance with moments of differences estimated from samples
/// `samples[v][k]` (replicate `k` of the field at point `v`).
pub fn natural_distance_from_samples(coords: Vec<Vec<f64>>, samples: &[Vec<f64>], theta: &NuFunction) -> Result<GridSpace> {
    if samples.len() != coords.len() {
        return invalid("one sample vector per point is required");
    }
    let reps = samples.first().map_or(0, |s| s.len());
    if reps == 0 || samples.iter().any(|s| s.len() != reps) {
        return invalid("every point needs the same non-zero number of replicates");
    }
    natural_distance(
        coords,
        |i, j, p| {
            let m: f64 = samples[i].iter().zip(&samples[j]).map(|(a, b)| (a - b).abs().powf(p)).sum::<f64>() / reps as f64;
            m.powf(1.0 / p)
        },
        theta,
    )
}

/// `p ↦ K^{1/p} profile(p)`, the moment profile of a point whose tail carries the factor `K(v)`.
pub fn rescale_profile(profile: impl Fn(f64) -> f64, k: f64) -> impl Fn(f64) -> f64 {
    move |p| k.powf(1.0 / p) * profile(p)
}

/// Balls `B(c, ε)` as bit masks over the points.
fn ball_masks(space: &GridSpace, eps: f64) -> Vec<u64> {
    let n = space.len();
    (0..n).map(|c| (0..n).filter(|&v| space.dist[c][v] <= eps).fold(0u64, |m, v| m | (1 << v))).collect()
}

/// Greedy set cover with centers in `V`: repeatedly take the ball covering
/// the most uncovered points. An upper bound on the minimal count.
pub fn greedy_cover(space: &GridSpace, eps: f64) -> usize {
    let n = space.len();
    let mut covered = vec![false; n];
    let mut left = n;
    let mut count = 0;
    while left > 0 {
        let (best, _) = (0..n)
            .map(|c| (c, (0..n).filter(|&v| !covered[v] && space.dist[c][v] <= eps).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty space");
        for v in 0..n {
            if !covered[v] && space.dist[best][v] <= eps {
                covered[v] = true;
                left -= 1;
            }
        }
        count += 1;
    }
    count
}

/// Minimal number of closed `ε`-balls centred in `V`, by branch and bound.
pub fn exact_cover(space: &GridSpace, eps: f64) -> Result<usize> {
    let n = space.len();
    if n > EXACT_COVER_MAX {
        return invalid(format!("exact covering is limited to {EXACT_COVER_MAX} points, got {n}"));
    }
    let balls = ball_masks(space, eps);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = greedy_cover(space, eps);
    let biggest = balls.iter().map(|b| b.count_ones()).max().unwrap_or(1) as usize;
    fn search(covered: u64, used: usize, full: u64, balls: &[u64], biggest: usize, best: &mut usize) {
        if covered == full {
            *best = (*best).min(used);
            return;
        }
        let left = (full & !covered).count_ones() as usize;
        if used + left.div_ceil(biggest) >= *best {
            return;
        }
        let v = (full & !covered).trailing_zeros() as usize;
        for &b in balls {
            if b & (1 << v) != 0 {
                search(covered | b, used + 1, full, balls, biggest, best);
            }
        }
    }
    search(0, 0, full, &balls, biggest, &mut best);
    Ok(best)
}

/// Covering counts on a decreasing `ε` grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoveringProfile {
    pub eps: Vec<f64>,
    pub n: Vec<usize>,
    /// `H = ln N`.
    pub h: Vec<f64>,
    /// Counts are minimal (exact search) rather than greedy upper bounds.
    pub exact: bool,
}

impl CoveringProfile {
    pub fn new(eps: Vec<f64>, n: Vec<usize>, exact: bool) -> Result<Self> {
        if eps.len() != n.len() || eps.is_empty() {
            return invalid("profile needs matching, non-empty ε and N lists");
        }
        if eps.windows(2).any(|w| !(w[1] < w[0])) || eps.iter().any(|&e| !(e > 0.0)) {
            return invalid("ε grid must be positive and strictly decreasing");
        }
        if n.contains(&0) || n.windows(2).any(|w| w[1] < w[0]) {
            return invalid("N must be at least 1 and non-increasing in ε");
        }
        let h = n.iter().map(|&v| (v as f64).ln()).collect();
        Ok(CoveringProfile { eps, n, h, exact })
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let rows: Vec<Vec<f64>> = (0..self.eps.len()).map(|i| vec![self.eps[i], self.n[i] as f64, self.h[i]]).collect();
        crate::output::write_table(w, &["eps", "N", "H"], &rows)
    }
}

/// `N(V, d, ε)` over a grid; exact for spaces up to [`EXACT_COVER_MAX`] points, greedy beyond.
pub fn covering_numbers(space: &GridSpace, eps_grid: &[f64]) -> Result<CoveringProfile> {
    let mut eps = eps_grid.to_vec();
    eps.sort_by(|a, b| b.total_cmp(a));
    eps.dedup();
    let exact = space.len() <= EXACT_COVER_MAX;
    let n: Vec<usize> =
        eps.par_iter().map(|&e| if exact { exact_cover(space, e).expect("size checked") } else { greedy_cover(space, e) }).collect();
    CoveringProfile::new(eps, n, exact)
}

/// Which entropy integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyVariant {
    /// Log exponent `γ/r`; continuity of the field.
    Continuity,
    /// Log exponent `(γ+1)/r`; limit theorem for normed sums.
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Finiteness {
    Finite,
    Divergent,
    /// Too few resolved scales to fit the small-`ε` exponent.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EntropyIntegral {
    /// `+∞` when divergent, NaN when indeterminate.
    pub value: f64,
    pub finiteness: Finiteness,
    /// Fitted power of `ε` in the integrand as `ε → 0`.
    pub power: f64,
    /// Fitted power of `ln(1/ε)` in the integrand.
    pub log_power: f64,
    /// Part of the value comes from extrapolation below the smallest resolved `ε`.
    pub extrapolated: bool,
}

/// Covering numbers given either as a computed profile or as a function.
pub enum CoveringSource<'a> {
    Profile(&'a CoveringProfile),
    Analytic(&'a dyn Fn(f64) -> f64),
}

/// Exponent tolerance of the finiteness test.
const EXPONENT_TOL: f64 = 1e-6;

fn log_exponent(variant: EntropyVariant, r: f64, gamma: f64) -> f64 {
    match variant {
        EntropyVariant::Continuity => gamma / r,
        EntropyVariant::Limit => (gamma + 1.0) / r,
    }
}

fn integrand(n: f64, r: f64, e: f64, l: &SlowlyVarying) -> f64 {
    let h = n.ln().max(0.0);
    let hp = if e == 0.0 { 1.0 } else { h.powf(e) };
    n.powf(1.0 / r) * hp * l.eval(h).powf(1.0 / r)
}

fn decide(power: f64, log_power: f64) -> Finiteness {
    if power > -1.0 + EXPONENT_TOL {
        Finiteness::Finite
    } else if power < -1.0 - EXPONENT_TOL {
        Finiteness::Divergent
    } else if log_power < -1.0 {
        Finiteness::Finite
    } else {
        Finiteness::Divergent
    }
}

/// `∫₀¹ N^{1/r} H^e L^{1/r}(H) dε` with `e = γ/r` or `(γ+1)/r`.
pub fn entropy_integral(
    source: CoveringSource<'_>,
    r: f64,
    gamma: f64,
    l: &SlowlyVarying,
    variant: EntropyVariant,
) -> Result<EntropyIntegral> {
    if !(r > 0.0) {
        return invalid(format!("r must be positive, got {r}"));
    }
    let e = log_exponent(variant, r, gamma);
    match source {
        CoveringSource::Analytic(nf) => {
            let f = |eps: f64| integrand(nf(eps).max(1.0), r, e, l);
            // Fit ln f = c + a ln ε + b ln ln(1/ε) far below 1, on a window
            // that shrinks until the integrand is representable.
            let mut w_hi = 200.0f64;
            while w_hi > 2.0 && !f((-w_hi).exp()).is_finite() {
                w_hi *= 0.8;
            }
            let ws: Vec<f64> = geomspace(0.1 * w_hi, w_hi, 12);
            let design: Vec<Vec<f64>> = ws.iter().map(|&w| vec![1.0, -w, w.ln()]).collect();
            let ys: Vec<f64> = ws.iter().map(|&w| f((-w).exp()).ln()).collect();
            let (power, log_power) = if ys.iter().all(|y| y.is_finite()) {
                let fit = least_squares(&design, &ys, None).ok_or_else(|| Error::Validation("singular exponent fit".into()))?;
                (fit.coef[1], fit.coef[2])
            } else if ys.iter().all(|&y| y == f64::NEG_INFINITY) {
                (f64::INFINITY, 0.0)
            } else {
                return Ok(EntropyIntegral {
                    value: f64::NAN,
                    finiteness: Finiteness::Indeterminate,
                    power: f64::NAN,
                    log_power: f64::NAN,
                    extrapolated: false,
                });
            };
            let finiteness = decide(power, log_power);
            let value = if finiteness == Finiteness::Finite {
                integrate_to_inf(|w| f((-w).exp()) * (-w).exp(), 0.0, Tol::rel(1e-12)).value
            } else {
                f64::INFINITY
            };
            Ok(EntropyIntegral { value, finiteness, power, log_power, extrapolated: false })
        }
        CoveringSource::Profile(p) => profile_integral(p, r, e, l, true),
    }
}

/// Profile integral; the step function takes on each gap the count at its
/// smaller `ε` end. Below the smallest `ε`, `N ≈ A ε^{-s}` fitted on the three
/// smallest scales unless `extrapolate` is off, in which case the integral
/// stops at the smallest resolved `ε`.
pub fn profile_integral(p: &CoveringProfile, r: f64, e: f64, l: &SlowlyVarying, extrapolate: bool) -> Result<EntropyIntegral> {
    let f = |n: f64| integrand(n, r, e, l);
    let k = p.eps.len();
    let mut value = 0.0;
    let mut hi = 1.0f64;
    for i in 0..k {
        let lo = p.eps[i].min(1.0);
        if lo < hi {
            value += (hi - lo) * f(p.n[i] as f64);
            hi = lo;
        }
    }
    if !extrapolate {
        return Ok(EntropyIntegral { value, finiteness: Finiteness::Finite, power: f64::NAN, log_power: f64::NAN, extrapolated: false });
    }
    let indeterminate = EntropyIntegral {
        value: f64::NAN,
        finiteness: Finiteness::Indeterminate,
        power: f64::NAN,
        log_power: f64::NAN,
        extrapolated: true,
    };
    if k < 3 {
        return Ok(indeterminate);
    }
    let tail: Vec<usize> = (k - 3..k).collect();
    let xs: Vec<f64> = tail.iter().map(|&i| p.eps[i].ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|&i| (p.n[i] as f64).ln()).collect();
    let Some((a, slope)) = crate::numeric::fit::line(&xs, &ys) else {
        return Ok(indeterminate);
    };
    let s = (-slope).max(0.0);
    let power = -s / r;
    let log_power = if s > 0.0 { e } else { 0.0 };
    let finiteness = decide(power, log_power);
    let eps_min = p.eps[k - 1].min(hi);
    let value = if finiteness == Finiteness::Finite {
        // N(ε) = max(N_min, e^a ε^{-s}) below the last resolved scale.
        let n_min = p.n[k - 1] as f64;
        let nf = |eps: f64| n_min.max((a - s * eps.ln()).exp());
        value + integrate_to_inf(|w| f(nf(eps_min * (-w).exp())) * eps_min * (-w).exp(), 0.0, Tol::rel(1e-10)).value
    } else {
        f64::INFINITY
    };
    Ok(EntropyIntegral { value, finiteness, power, log_power, extrapolated: true })
}

/// Field supremum or normed-sum supremum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldVariant {
    /// Shape `x^{-r} (ln x)^γ L(ln x)`.
    Single,
    /// Shape `x^{-r} (ln x)^{γ+1} L(ln x)`.
    Sums,
}

/// Log-power of the shape for each variant.
pub fn field_log_exponent(gamma: f64, variant: FieldVariant) -> f64 {
    match variant {
        FieldVariant::Single => gamma,
        FieldVariant::Sums => gamma + 1.0,
    }
}

/// Shape of the uniform tail bound for a field supremum, `x > e`.
pub fn field_shape(r: f64, gamma: f64, l: &SlowlyVarying, variant: FieldVariant) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let g = field_log_exponent(gamma, variant);
    let l = l.clone();
    move |x: f64| {
        let lx = x.ln();
        x.powf(-r) * lx.powf(g) * l.eval(lx)
    }
}

pub fn field_curve(
    r: f64,
    gamma: f64,
    l: &SlowlyVarying,
    variant: FieldVariant,
    constant: f64,
    provenance: ConstantProvenance,
) -> Result<BoundCurve> {
    if !(r > 0.0) || !(constant > 0.0) {
        return invalid("field bound needs r > 0 and a positive constant");
    }
    let shape = field_shape(r, gamma, l, variant);
    let tag = match variant {
        FieldVariant::Single => Theorem::FieldSingle,
        FieldVariant::Sums => Theorem::FieldSums,
    };
    Ok(BoundCurve::new(tag, std::f64::consts::E, move |x| constant * shape(x)).strict().with_constant(constant, provenance))
}

/// `C x^{-r} (ln x)^{γ or γ+1} L(ln x)`, clamped to 1, for `x > e`.
pub fn uniform_tail_bound(r: f64, gamma: f64, l: &SlowlyVarying, variant: FieldVariant, constant: f64, x: f64) -> Result<f64> {
    field_curve(r, gamma, l, variant, constant, ConstantProvenance::UserSupplied)?.eval(x)
}

/// Smallest `C` with `Û(x) ≤ C·shape(x)` on the part of the grid above `e`.
pub fn calibrate_field_constant(emp: &EmpiricalTail, r: f64, gamma: f64, l: &SlowlyVarying, variant: FieldVariant) -> Result<f64> {
    calibrate_constant(emp, std::f64::consts::E, field_shape(r, gamma, l, variant))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniformCi {
    pub x_delta: f64,
    pub half_width: f64,
    pub estimates: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// Whether every point's truth lies inside its interval.
    pub covered: Option<bool>,
}

/// Simultaneous interval band for field means from `samples[v][k]`, `k < n`.
pub fn uniform_ci(samples: &[Vec<f64>], curve: &BoundCurve, delta: f64, b_n: f64, truth: Option<&[f64]>) -> Result<UniformCi> {
    if !(delta > 0.0 && delta < 1.0) {
        return invalid(format!("δ must lie in (0, 1), got {delta}"));
    }
    let n = samples.first().map_or(0, |s| s.len());
    if n == 0 || samples.iter().any(|s| s.len() != n) {
        return invalid("every point needs the same non-zero number of observations");
    }
    let x_delta = crate::app::solve_x(curve, delta)?;
    let half_width = x_delta * b_n / n as f64;
    let estimates: Vec<f64> = samples.iter().map(|s| s.iter().sum::<f64>() / n as f64).collect();
    let lower = estimates.iter().map(|m| m - half_width).collect();
    let upper = estimates.iter().map(|m| m + half_width).collect();
    let covered = match truth {
        Some(t) => {
            if t.len() != estimates.len() {
                return invalid("one true value per point is required");
            }
            Some(estimates.iter().zip(t).all(|(m, t)| (m - t).abs() <= half_width))
        }
        None => None,
    };
    Ok(UniformCi { x_delta, half_width, estimates, lower, upper, covered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glspace::natural_nu;
    use crate::tailmodel::TailSpec;

    #[test]
    fn linear_field_distance_is_coordinate_gap() {
        let m = TailSpec::pareto(3.0).build().unwrap();
        let nu = natural_nu(&m).unwrap();
        let pts = [0.0, 0.2, 0.7, 1.0];
        let s =
            natural_distance(pts.iter().map(|&v| vec![v]).collect(), |i, j, p| (pts[i] - pts[j]).abs() * m.moment_norm(p).unwrap(), &nu)
                .unwrap();
        for i in 0..4 {
            assert_eq!(s.dist[i][i], 0.0);
            for j in 0..4 {
                assert!((s.dist[i][j] - (pts[i] - pts[j]).abs()).abs() < 1e-12);
                assert_eq!(s.dist[i][j], s.dist[j][i]);
            }
        }
    }

    #[test]
    fn three_point_covers() {
        let s = GridSpace::on_line(&[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(exact_cover(&s, 0.5).unwrap(), 1);
        assert_eq!(exact_cover(&s, 0.3).unwrap(), 3);
        assert_eq!(exact_cover(&s, 5.0).unwrap(), 1);
        let p = covering_numbers(&s, &[0.3, 0.5, 5.0]).unwrap();
        assert_eq!(p.n, vec![1, 1, 3]);
        assert!(p.exact);
    }

    #[test]
    fn greedy_never_beats_exact() {
        let pts = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        let s = GridSpace::on_line(&pts).unwrap();
        assert!(greedy_cover(&s, 1.0) >= exact_cover(&s, 1.0).unwrap());
        assert_eq!(exact_cover(&s, 1.0).unwrap(), 2);
    }

    #[test]
    fn analytic_entropy_values() {
        let one = SlowlyVarying::one();
        let n1 = |e: f64| 1.0 / e;
        let r = entropy_integral(CoveringSource::Analytic(&n1), 3.0, 0.0, &one, EntropyVariant::Continuity).unwrap();
        assert_eq!(r.finiteness, Finiteness::Finite);
        assert!((r.value - 1.5).abs() < 1e-8, "{}", r.value);
        let n2 = |e: f64| e.powi(-2);
        let d = entropy_integral(CoveringSource::Analytic(&n2), 1.5, 0.0, &one, EntropyVariant::Continuity).unwrap();
        assert_eq!(d.finiteness, Finiteness::Divergent);
        assert!((d.power + 4.0 / 3.0).abs() < 1e-6);
        let c = |_: f64| 1.0;
        let s = entropy_integral(CoveringSource::Analytic(&c), 2.0, 0.0, &one, EntropyVariant::Continuity).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn limit_variant_dominates_when_entropy_is_large() {
        let one = SlowlyVarying::one();
        let prof = CoveringProfile::new(vec![0.5, 0.25, 0.125, 0.0625], vec![3, 6, 12, 24], true).unwrap();
        let a = entropy_integral(CoveringSource::Profile(&prof), 3.0, 0.0, &one, EntropyVariant::Continuity).unwrap();
        let b = entropy_integral(CoveringSource::Profile(&prof), 3.0, 0.0, &one, EntropyVariant::Limit).unwrap();
        assert_eq!(a.finiteness, Finiteness::Finite);
        assert!(b.value >= a.value);
        assert!((a.power + 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn field_shapes_differ_by_one_log_power() {
        let one = SlowlyVarying::one();
        let x = 1e4f64;
        let a = uniform_tail_bound(1.5, 0.0, &one, FieldVariant::Single, 1.0, x).unwrap();
        let b = uniform_tail_bound(1.5, 0.0, &one, FieldVariant::Sums, 1.0, x).unwrap();
        assert!(((b / a) - x.ln()).abs() < 1e-9);
        assert!(uniform_tail_bound(1.5, 0.0, &one, FieldVariant::Single, 1.0, std::f64::consts::E).is_err());
    }

    #[test]
    fn rejects_broken_metrics() {
        assert!(GridSpace::new(vec![vec![0.0]; 3], vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]]).is_err());
        assert!(GridSpace::new(vec![vec![0.0]; 2], vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(GridSpace::new(vec![vec![0.0]; 2], vec![vec![0.0, 0.0], vec![0.0, 0.0]]).is_ok());
    }
}
