//! Empirical growth exponent of the sharp ball sum `Σ_{|x| <= R} P(x)`.

use serde::Serialize;
use thiserror::Error;

use crate::fit::{dyadic_running_max, fit_loglog, FitError, FitResult};
use crate::lattice::{ball_sums_prefix, LatticeError};
use crate::poly::{sphere_average, PolyError};
use crate::scalar::rational_to_f64;
use crate::QPoly;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("P has sphere average {0}, but the headline sum needs a mean-zero polynomial (pass mean subtraction to remove the volume term)")]
    NotMeanZero(String),
    #[error("r_max = {0} is below the minimum of 16")]
    RadiusTooSmall(u64),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeadlineOptions {
    pub r_max: u64,
    /// Dyadic windows sampled per doubling of `R`.
    pub window: u32,
    /// Subtract `π ∫_{|x| <= R} P` before fitting; required when `P` is not mean-zero.
    pub mean_subtract: bool,
}

impl Default for HeadlineOptions {
    fn default() -> Self {
        Self { r_max: 128, window: 8, mean_subtract: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HeadlineFit {
    pub nu: u32,
    pub fit: FitResult,
    /// `(R, Σ_{|x| <= R} P(x))` at every `R = √n`, `n <= r_max²`.
    #[serde(skip)]
    pub series: Vec<(f64, f64)>,
    /// Dyadic running maxima fed to the regression.
    pub maxima: Vec<(f64, f64)>,
}

/// Smallest `R` used in the regression.
pub const FIT_X_MIN: f64 = 16.0;

/// Fits `log max|S| ~ slope · log R` over dyadic windows of an `(R, S(R))` series.
pub fn fit_series(series: &[(f64, f64)], window: u32) -> Result<(FitResult, Vec<(f64, f64)>), FitError> {
    let maxima = dyadic_running_max(series, window, FIT_X_MIN);
    let fit = fit_loglog(&maxima)?;
    Ok((fit, maxima))
}

pub fn fit_headline(p: &QPoly, opts: &HeadlineOptions) -> Result<HeadlineFit, ExperimentError> {
    if opts.r_max < 16 {
        return Err(ExperimentError::RadiusTooSmall(opts.r_max));
    }
    let nu = p.ensure_homogeneous()?;
    let avg = sphere_average(p)?;
    let volume_coeff = if num_traits::Zero::is_zero(&avg) {
        0.0
    } else if opts.mean_subtract {
        4.0 * std::f64::consts::PI * rational_to_f64(&avg) / (nu + 3) as f64
    } else {
        return Err(ExperimentError::NotMeanZero(avg.to_string()));
    };
    let prefix = ball_sums_prefix(p, opts.r_max * opts.r_max)?;
    let series: Vec<(f64, f64)> = prefix
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, s)| {
            let r = (n as f64).sqrt();
            (r, rational_to_f64(s) - volume_coeff * r.powi(nu as i32 + 3))
        })
        .collect();
    let (fit, maxima) = fit_series(&series, opts.window)?;
    Ok(HeadlineFit { nu, fit, series, maxima })
}
