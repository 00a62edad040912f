//! Small weighted least-squares fits used to read exponents off computed curves.

#[derive(Debug, Clone)]
pub struct LinearFit {
    pub coef: Vec<f64>,
    /// Standard errors. With explicit weights (inverse variances) these come
    /// straight from the covariance matrix; without weights they are scaled
    /// by the residual variance.
    pub se: Vec<f64>,
}

/// Fits `y ≈ design · coef`. Each row of `design` is one observation.
pub fn least_squares(design: &[Vec<f64>], y: &[f64], weights: Option<&[f64]>) -> Option<LinearFit> {
    let n = y.len();
    let k = design.first()?.len();
    if n < k || design.len() != n {
        return None;
    }
    let w = |i: usize| weights.map_or(1.0, |w| w[i]);
    let mut a = vec![vec![0.0; k]; k];
    let mut b = vec![0.0; k];
    for i in 0..n {
        for p in 0..k {
            b[p] += w(i) * design[i][p] * y[i];
            for q in 0..k {
                a[p][q] += w(i) * design[i][p] * design[i][q];
            }
        }
    }
    let inv = invert(&a)?;
    let coef: Vec<f64> = (0..k).map(|p| (0..k).map(|q| inv[p][q] * b[q]).sum()).collect();
    let scale = if weights.is_some() {
        1.0
    } else if n > k {
        let rss: f64 = (0..n)
            .map(|i| {
                let fit: f64 = (0..k).map(|p| design[i][p] * coef[p]).sum();
                (y[i] - fit).powi(2)
            })
            .sum();
        rss / (n - k) as f64
    } else {
        0.0
    };
    let se = (0..k).map(|p| (inv[p][p] * scale).max(0.0).sqrt()).collect();
    Some(LinearFit { coef, se })
}

/// Ordinary line fit `y ≈ a + b x`; returns `(a, b)`.
pub fn line(x: &[f64], y: &[f64]) -> Option<(f64, f64)> {
    let design: Vec<Vec<f64>> = x.iter().map(|&v| vec![1.0, v]).collect();
    least_squares(&design, y, None).map(|f| (f.coef[0], f.coef[1]))
}

fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let k = a.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[pivot][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for row in 0..k {
            if row != col {
                let factor = m[row][col];
                if factor != 0.0 {
                    for j in 0..2 * k {
                        m[row][j] -= factor * m[col][j];
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[k..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_two_regressors() {
        let xs: Vec<f64> = (1..50).map(|i| i as f64).collect();
        let design: Vec<Vec<f64>> = xs.iter().map(|&x| vec![1.0, x.ln(), x.ln().ln().max(0.0)]).collect();
        let y: Vec<f64> = design.iter().map(|r| 0.5 - 3.0 * r[1] + 1.25 * r[2]).collect();
        let f = least_squares(&design, &y, None).unwrap();
        assert!((f.coef[1] + 3.0).abs() < 1e-9);
        assert!((f.coef[2] - 1.25).abs() < 1e-9);
    }
}
