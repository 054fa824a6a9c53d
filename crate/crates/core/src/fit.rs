//! Log-log least-squares fits of growth exponents.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("degenerate series: every value is zero")]
    Degenerate,
    #[error("need at least 3 usable points, got {0}")]
    TooFewPoints(usize),
}

/// Ordinary least squares of `ln y` against `ln x`, skipping non-positive entries.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<FitResult, FitError> {
    if points.iter().all(|&(_, y)| y == 0.0) {
        return Err(FitError::Degenerate);
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = logs.len();
    if n < 3 {
        return Err(FitError::TooFewPoints(n));
    }
    let nf = n as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::TooFewPoints(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = logs.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(FitResult { slope, intercept, r_squared, points_used: n })
}

/// Dyadic-window running maxima: for sample points `X` spaced `samples_per_octave`
/// per doubling, descending from the largest abscissa down to `x_min`,
/// `M(X) = max { |y| : X/2 < x <= X }`. `series` must be sorted by `x`.
pub fn dyadic_running_max(series: &[(f64, f64)], samples_per_octave: u32, x_min: f64) -> Vec<(f64, f64)> {
    let Some(&(x_max, _)) = series.last() else {
        return Vec::new();
    };
    let spo = samples_per_octave.max(1) as f64;
    let mut out = Vec::new();
    let mut j = 0u32;
    loop {
        let x = x_max * 2f64.powf(-(j as f64) / spo);
        if x < x_min {
            break;
        }
        let lo = series.partition_point(|p| p.0 <= x / 2.0);
        let hi = series.partition_point(|p| p.0 <= x);
        if hi > lo {
            let m = series[lo..hi].iter().map(|p| p.1.abs()).fold(0.0, f64::max);
            out.push((x, m));
        }
        j += 1;
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..20).map(|k| (k as f64, 3.0 * (k as f64).powf(1.75))).collect();
        let fit = fit_loglog(&pts).unwrap();
        assert!((fit.slope - 1.75).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.points_used, 19);
    }

    #[test]
    fn degenerate_and_short_inputs() {
        assert_eq!(fit_loglog(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]), Err(FitError::Degenerate));
        assert_eq!(fit_loglog(&[(1.0, 1.0), (2.0, 2.0)]), Err(FitError::TooFewPoints(2)));
    }

    #[test]
    fn running_max_windows() {
        let series: Vec<(f64, f64)> = (1..=64).map(|k| (k as f64, if k == 40 { -100.0 } else { 1.0 })).collect();
        let m = dyadic_running_max(&series, 1, 8.0);
        assert_eq!(m, vec![(8.0, 1.0), (16.0, 1.0), (32.0, 1.0), (64.0, 100.0)]);
    }
}
