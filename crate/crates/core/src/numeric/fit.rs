//! Least-squares fits of the model `log y ≈ a·log x + b·log|log x| + c`.
//!
//! Fitting `a` and `b` jointly is badly conditioned over a few decades, because
//! `log|log x|` is nearly affine in `log x` there. When exact predictions are
//! available, each parameter is fitted with the other one pinned to its predicted
//! value, which keeps both estimates well conditioned.

use serde::Serialize;

use crate::error::NumericError;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FitResult {
    /// Fitted `a`.
    pub slope: f64,
    /// Fitted `b`.
    pub log_power: f64,
    /// RMS residual of the fit that produced `slope`.
    pub residual: f64,
    /// `(x, y)` pairs, strictly increasing in `x`.
    pub samples: Vec<(f64, f64)>,
    /// Whether the parameters were fitted with the other one pinned to a prediction.
    pub pinned: bool,
}

/// Predicted `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prediction {
    pub slope: f64,
    pub log_power: f64,
}

/// Ordinary least squares on an arbitrary design matrix (columns), via modified
/// Gram–Schmidt. Returns the coefficients and the RMS residual.
pub fn least_squares(columns: &[Vec<f64>], y: &[f64]) -> Result<(Vec<f64>, f64), NumericError> {
    let n = y.len();
    let k = columns.len();
    if n < k {
        return Err(NumericError::IllConditioned(format!("{n} samples for {k} parameters")));
    }
    let mut q: Vec<Vec<f64>> = columns.to_vec();
    let mut r = vec![vec![0.0; k]; k];
    for j in 0..k {
        for i in 0..j {
            let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
            r[i][j] = d;
            let qi = q[i].clone();
            for (x, qi) in q[j].iter_mut().zip(&qi) {
                *x -= d * qi;
            }
        }
        let norm = q[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = columns[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1e-12 * scale.max(1e-300) {
            return Err(NumericError::IllConditioned("design matrix is rank deficient".into()));
        }
        r[j][j] = norm;
        for x in q[j].iter_mut() {
            *x /= norm;
        }
    }
    let qty: Vec<f64> = q.iter().map(|qj| qj.iter().zip(y).map(|(a, b)| a * b).sum()).collect();
    let mut coef = vec![0.0; k];
    for j in (0..k).rev() {
        let s: f64 = ((j + 1)..k).map(|i| r[j][i] * coef[i]).sum();
        coef[j] = (qty[j] - s) / r[j][j];
    }
    let rss: f64 = (0..n)
        .map(|i| {
            let fit: f64 = (0..k).map(|j| columns[j][i] * coef[j]).sum();
            (y[i] - fit).powi(2)
        })
        .sum();
    Ok((coef, (rss / n as f64).sqrt()))
}

/// Fits the two-term model to samples `(x, y)` with `x > 0`, `y > 0`, `x ≠ 1`.
pub fn fit_log_model(samples: &[(f64, f64)], prediction: Option<Prediction>) -> Result<FitResult, NumericError> {
    if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(NumericError::Precondition("samples must be strictly increasing".into()));
    }
    if let Some(&(x, y)) = samples.iter().find(|(x, y)| !(*y > 0.0) || !(*x > 0.0) || *x == 1.0) {
        return Err(NumericError::IllConditioned(format!("sample ({x}, {y}) has no logarithm")));
    }
    let lx: Vec<f64> = samples.iter().map(|(x, _)| x.ln()).collect();
    let llx: Vec<f64> = lx.iter().map(|l| l.abs().ln()).collect();
    let ly: Vec<f64> = samples.iter().map(|(_, y)| y.ln()).collect();
    let ones = vec![1.0; samples.len()];
    let (slope, log_power, residual) = match prediction {
        None => {
            let (c, res) = least_squares(&[lx.clone(), llx.clone(), ones], &ly)?;
            (c[0], c[1], res)
        }
        Some(p) => {
            let y1: Vec<f64> = ly.iter().zip(&llx).map(|(y, z)| y - p.log_power * z).collect();
            let (c1, res) = least_squares(&[lx.clone(), ones.clone()], &y1)?;
            let y2: Vec<f64> = ly.iter().zip(&lx).map(|(y, x)| y - p.slope * x).collect();
            let (c2, _) = least_squares(&[llx.clone(), ones], &y2)?;
            (c1[0], c2[0], res)
        }
    };
    Ok(FitResult {
        slope,
        log_power,
        residual,
        samples: samples.to_vec(),
        pinned: prediction.is_some(),
    })
}

/// Plain power-law fit `log y ≈ a·log x + c`; returns `(a, rms)`.
pub fn power_fit(samples: &[(f64, f64)]) -> Result<(f64, f64), NumericError> {
    let lx: Vec<f64> = samples.iter().map(|(x, _)| x.ln()).collect();
    let ly: Vec<f64> = samples.iter().map(|(_, y)| y.ln()).collect();
    let (c, res) = least_squares(&[lx, vec![1.0; samples.len()]], &ly)?;
    Ok((c[0], res))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_models() {
        let xs: Vec<f64> = (7..=15).map(|k| 2f64.powi(k)).collect();
        let s: Vec<(f64, f64)> = xs.iter().map(|&x| (x, 3.0 * x.powf(-0.5) * x.ln())).collect();
        let f = fit_log_model(&s, None).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-8 && (f.log_power - 1.0).abs() < 1e-7);
        assert!(f.residual < 1e-10);
        let f = fit_log_model(&s, Some(Prediction { slope: -0.5, log_power: 1.0 })).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-10 && (f.log_power - 1.0).abs() < 1e-10);
        let (a, _) = power_fit(&xs.iter().map(|&x| (x, x.powf(-0.75))).collect::<Vec<_>>()).unwrap();
        assert!((a + 0.75).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(fit_log_model(&[(2.0, 1.0), (1.5, 1.0), (4.0, 1.0)], None).is_err());
        assert!(matches!(
            fit_log_model(&[(2.0, 1.0), (3.0, 0.0), (4.0, 1.0)], None),
            Err(NumericError::IllConditioned(_))
        ));
    }
}
