//! Cutoff-weighted lattice sums: the long (smoothed) sum and the boundary-shell short sum.

use serde::Serialize;

use super::{coeff_series, CoefficientSeries, LatticeError};
use crate::scalar::{rational_to_f64, real_from_f64, Real};
use crate::summation::CompensatedSum;
use crate::QPoly;

/// The cutoff `f`: identity on `[0, R]`, linear ramp `R(R+H-x)/H` down to zero on `[R, R+H]`.
pub fn cutoff_f<F: Real>(x: F, r: F, h: F) -> F {
    if x <= r {
        x
    } else if x <= r + h {
        r * (r + h - x) / h
    } else {
        F::zero()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumReport {
    pub r: f64,
    pub h: f64,
    pub value: f64,
    /// Number of shells `n` included in the sum.
    pub term_count: u64,
}

fn check_radius<F: Real>(r: F, h: F) -> Result<(), LatticeError> {
    if !(r >= F::one()) || !(h > F::zero()) || h > F::one() {
        return Err(LatticeError::InvalidArgument(format!(
            "need R >= 1 and 0 < H <= 1, got R = {:?}, H = {:?}",
            r, h
        )));
    }
    Ok(())
}

/// Largest `n` with `sqrt(n) <= x`, robust to rounding in `x * x`.
fn last_shell_within<F: Real>(x: F) -> u64 {
    let mut n = (x * x).floor().to_u64().expect("finite radius");
    while F::from_u64(n + 1).expect("shell").sqrt() <= x {
        n += 1;
    }
    while n > 0 && F::from_u64(n).expect("shell").sqrt() > x {
        n -= 1;
    }
    n
}

fn outer_shell<F: Real>(r: F, h: F) -> u64 {
    last_shell_within(r + h)
}

/// Smallest `n` with `sqrt(n) >= r`.
fn inner_shell<F: Real>(r: F) -> u64 {
    let n = last_shell_within(r);
    if F::from_u64(n).expect("shell").sqrt() == r { n } else { n + 1 }
}

fn weighted_shells<F: Real>(series: &CoefficientSeries, lo: u64, hi: u64, r: F, h: F) -> F {
    let values = series.values();
    let mut acc = CompensatedSum::new();
    for n in lo.max(1)..=hi {
        let a: F = real_from_f64(rational_to_f64(&values[n as usize - 1]));
        let rad = F::from_u64(n).expect("shell index").sqrt();
        acc.add(a * cutoff_f(rad, r, h) / rad);
    }
    acc.value()
}

impl CoefficientSeries {
    /// `sum_{R^2 <= n <= (R+H)^2} a_n f(sqrt n)/sqrt n`.
    pub fn short_sum<F: Real>(&self, r: F, h: F) -> Result<SumReport, LatticeError> {
        check_radius(r, h)?;
        let hi = outer_shell(r, h);
        self.require(hi)?;
        let lo = inner_shell(r);
        let value = if lo > hi { F::zero() } else { weighted_shells(self, lo, hi, r, h) };
        Ok(report(r, h, value, hi.saturating_sub(lo.max(1)) + (lo.max(1) <= hi) as u64))
    }

    /// `sum_x P(x) f(|x|)/|x|` over all of `Z^3`; the origin contributes `P(0)`
    /// (the continuous extension of `f(r)/r -> 1`), which is zero unless `P` is constant.
    pub fn long_sum_physical<F: Real>(&self, r: F, h: F) -> Result<SumReport, LatticeError> {
        check_radius(r, h)?;
        let hi = outer_shell(r, h);
        self.require(hi)?;
        let origin: F = real_from_f64(rational_to_f64(&self.origin));
        let value = weighted_shells(self, 1, hi, r, h) + origin;
        Ok(report(r, h, value, hi))
    }

    fn require(&self, n: u64) -> Result<(), LatticeError> {
        if n > self.n_max {
            return Err(LatticeError::InvalidArgument(format!(
                "series holds a_n up to {} but {} is needed",
                self.n_max, n
            )));
        }
        Ok(())
    }
}

fn report<F: Real>(r: F, h: F, value: F, term_count: u64) -> SumReport {
    SumReport {
        r: r.to_f64().unwrap_or(f64::NAN),
        h: h.to_f64().unwrap_or(f64::NAN),
        value: value.to_f64().unwrap_or(f64::NAN),
        term_count,
    }
}

pub fn short_sum<F: Real>(p: &QPoly, r: F, h: F) -> Result<SumReport, LatticeError> {
    check_radius(r, h)?;
    coeff_series(p, outer_shell(r, h))?.short_sum(r, h)
}

pub fn long_sum_physical<F: Real>(p: &QPoly, r: F, h: F) -> Result<SumReport, LatticeError> {
    check_radius(r, h)?;
    coeff_series(p, outer_shell(r, h))?.long_sum_physical(r, h)
}
