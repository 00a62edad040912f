//! Bracketing root finders and one-dimensional extremum search.

/// Iteration cap shared by every bisection in the crate.
pub const MAX_BISECTIONS: usize = 200;

/// Smallest `x` in `[lo, hi]` for which the monotone predicate holds.
///
/// `pred(lo)` is assumed false and `pred(hi)` true. When both ends are
/// positive and far apart the midpoint is taken geometrically so that
/// brackets spanning many decades shrink quickly.
pub fn bisect_first_true<P: FnMut(f64) -> bool>(mut pred: P, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= rel_tol * hi.abs().max(lo.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        let mid = if lo > 0.0 && hi / lo > 4.0 { lo.sqrt() * hi.sqrt() } else { 0.5 * (lo + hi) };
        if !(mid > lo && mid < hi) {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Root of a continuous function with `f(lo)` and `f(hi)` of opposite signs.
pub fn bisect_root<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, rel_tol: f64) -> f64 {
    let f_lo = f(lo);
    let rising = f_lo < 0.0;
    bisect_first_true(|x| (f(x) >= 0.0) == rising, lo, hi, rel_tol)
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
///
/// Returns `(argmax, max)`.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..MAX_BISECTIONS {
        if (b - a).abs() <= tol * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Maximizes `f` over a sorted grid, then refines inside the two cells
/// adjacent to the grid argmax. Returns `(argmax, max)`.
pub fn grid_then_golden_max<F: FnMut(f64) -> f64>(mut f: F, grid: &[f64], tol: f64) -> (f64, f64) {
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, &x) in grid.iter().enumerate() {
        let v = f(x);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = grid[best_i.saturating_sub(1)];
    let hi = grid[(best_i + 1).min(grid.len() - 1)];
    if hi > lo {
        let (x, v) = golden_max(&mut f, lo, hi, tol);
        if v > best {
            return (x, v);
        }
    }
    (grid[best_i], best)
}

/// `n` points geometrically spaced from `a` to `b` inclusive (both positive).
pub fn geomspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n).map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// `n` points evenly spaced from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}
