//! Empirical checks of coefficient bounds for cuspidal theta series.

use serde::Serialize;

use super::{two_adic_part, CoefficientSeries, LatticeError};
use crate::fit::{dyadic_running_max, fit_loglog, FitResult};
use crate::scalar::rational_to_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    /// `|a_n| / n^{k/2 - 1/4}`.
    Sarnak,
    /// `|a_n| / (n^{k/2 - 5/16} (n, 2^∞)^{5/8})`.
    BlomerHarcos,
}

impl BoundMode {
    pub fn exponent(self, k: f64) -> f64 {
        match self {
            BoundMode::Sarnak => k / 2.0 - 0.25,
            BoundMode::BlomerHarcos => k / 2.0 - 5.0 / 16.0,
        }
    }

    fn normaliser(self, n: u64, k: f64) -> f64 {
        let base = (n as f64).powf(self.exponent(k));
        match self {
            BoundMode::Sarnak => base,
            BoundMode::BlomerHarcos => base * (two_adic_part(n) as f64).powf(0.625),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientBoundReport {
    pub mode: BoundMode,
    pub weight: f64,
    pub exponent: f64,
    pub n_max: u64,
    pub max_ratio: f64,
    /// Where the maximum ratio is attained; `None` when the series vanishes.
    pub argmax: Option<u64>,
    /// Log-log fit of the dyadic running max of `|a_n|` against `n`; `None` for a zero series.
    pub growth: Option<FitResult>,
}

/// Samples per octave for the dyadic running max, and the smallest `n` fitted.
const SAMPLES_PER_OCTAVE: u32 = 8;
const FIT_FROM: f64 = 16.0;

pub fn coefficient_bound_report(
    series: &CoefficientSeries,
    mode: BoundMode,
) -> Result<CoefficientBoundReport, LatticeError> {
    if series.nu == 0 {
        return Err(LatticeError::NotCuspidal("degree 0 gives an Eisenstein-type series".into()));
    }
    if !series.poly.is_harmonic() {
        return Err(LatticeError::NotCuspidal("polynomial is not harmonic".into()));
    }
    let k = rational_to_f64(&series.weight());
    let values = series.to_f64();
    let mut max_ratio = 0.0;
    let mut argmax = None;
    for (i, a) in values.iter().enumerate() {
        let n = i as u64 + 1;
        let ratio = a.abs() / mode.normaliser(n, k);
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = Some(n);
        }
    }
    let growth = if argmax.is_none() {
        None
    } else {
        let points: Vec<(f64, f64)> = values.iter().enumerate().map(|(i, a)| ((i + 1) as f64, *a)).collect();
        fit_loglog(&dyadic_running_max(&points, SAMPLES_PER_OCTAVE, FIT_FROM)).ok()
    };
    Ok(CoefficientBoundReport {
        mode,
        weight: k,
        exponent: mode.exponent(k),
        n_max: series.n_max,
        max_ratio,
        argmax,
        growth,
    })
}
