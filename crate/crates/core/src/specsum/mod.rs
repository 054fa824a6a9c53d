//! Direct evaluation of the oscillatory sums behind the long-sum estimates.

mod radial;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::fit::{fit_loglog, FitResult};
use crate::lattice::{isqrt, LatticeError};
use crate::summation::{CompensatedComplex, CompensatedSum};
use crate::QPoly;

pub use radial::{
    differentiate, eval_radial_terms, eval_radial_terms_at, freq_long_sum, g_hat, gp_fourier_terms,
    max_coefficient, min_denominator_power, Frequency, RadialTerm, TrigFactor,
};

/// `e(t) = exp(2πit)`, with `t` reduced modulo 1 first.
pub fn e(t: f64) -> Complex64 {
    let frac = t - t.round();
    let (s, c) = (std::f64::consts::TAU * frac).sin_cos();
    Complex64::new(c, s)
}

/// `V_{N,Q,h}(R) = Σ_{|ξ|² <= N} Q(ξ) e(R|ξ| + h·ξ)`.
pub fn exp_sum_lattice(q: &QPoly, n: u64, h: [f64; 3], r: f64) -> Result<Complex64, LatticeError> {
    if n < 1 || r < 1.0 {
        return Err(LatticeError::InvalidArgument("need N >= 1 and R >= 1".into()));
    }
    q.ensure_homogeneous()?;
    let qf = q.to_f64();
    let bound = isqrt(n) as i64;
    // Reduce h modulo integers so the phase stays small.
    let h = h.map(|c| c - c.floor());
    let slab = |x: i64| {
        let mut acc = CompensatedComplex::new();
        let rest_x = n as i64 - x * x;
        let ry = isqrt(rest_x as u64) as i64;
        for y in -ry..=ry {
            let rz = isqrt((rest_x - y * y) as u64) as i64;
            for z in -rz..=rz {
                let norm_sq = (x * x + y * y + z * z) as f64;
                let point = [x as f64, y as f64, z as f64];
                let phase = r * norm_sq.sqrt() + h[0] * point[0] + h[1] * point[1] + h[2] * point[2];
                acc.add(e(phase) * qf.eval(point));
            }
        }
        acc
    };
    let parts: Vec<CompensatedComplex<f64>> = (-bound..=bound).into_par_iter().map(slab).collect();
    let mut total = CompensatedComplex::new();
    for part in &parts {
        total.merge(part);
    }
    Ok(total.value())
}

fn sqrt_difference(x: f64, y: f64) -> f64 {
    // sqrt(x+y) - sqrt(x) without cancellation.
    y / ((x + y).sqrt() + x.sqrt())
}

/// `V_{N,D}(R) = Σ_{D < y <= 2D} |Σ_{N < x <= 2N} e(R(√(x+y) - √x))|`.
pub fn exp_sum_grid(n: u64, d: u64, r: f64) -> Result<f64, LatticeError> {
    if n < 1 || d < 1 || d > n {
        return Err(LatticeError::InvalidArgument("need 1 <= D <= N".into()));
    }
    let rows: Vec<f64> = (d + 1..=2 * d)
        .into_par_iter()
        .map(|y| {
            let mut inner = CompensatedComplex::new();
            for x in n + 1..=2 * n {
                inner.add(e(r * sqrt_difference(x as f64, y as f64)));
            }
            inner.value().norm()
        })
        .collect();
    Ok(rows.into_iter().collect::<CompensatedSum<f64>>().value())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VnqrRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub value_re: f64,
    pub value_im: f64,
    pub abs_v: f64,
    /// `N^{nu/2} min(N^{3/2}, N^{5/4} + N^{15/14} R^{3/14})`.
    pub bound: f64,
    pub ratio: f64,
    /// `|V| / (N^{nu/2} N^{3/2})`.
    pub trivial_ratio: f64,
}

/// Which of the three shapes of the bound is in force for a given `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VnqrRegime {
    /// `N <= R^{1/2}`: trivial bound.
    Small,
    /// `R^{1/2} < N <= R^{6/5}`: `N^{15/14} R^{3/14}`.
    Middle,
    /// `N > R^{6/5}`: `N^{5/4}`.
    Large,
}

impl VnqrRegime {
    pub fn of(n: u64, r: f64) -> Self {
        let n = n as f64;
        if n <= r.sqrt() {
            VnqrRegime::Small
        } else if n <= r.powf(1.2) {
            VnqrRegime::Middle
        } else {
            VnqrRegime::Large
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VnqrReport {
    pub r: f64,
    pub nu: u32,
    pub rows: Vec<VnqrRow>,
    pub max_ratio: f64,
    pub max_trivial_ratio: f64,
    /// Log-log slope of `|V|` against `N` for each regime with at least three points.
    pub regime_fits: Vec<(VnqrRegime, FitResult)>,
}

pub fn vnqr_bound(n: u64, nu: u32, r: f64) -> f64 {
    let nf = n as f64;
    let shape = nf.powf(1.5).min(nf.powf(1.25) + nf.powf(15.0 / 14.0) * r.powf(3.0 / 14.0));
    nf.powf(nu as f64 / 2.0) * shape
}

/// Evaluates `V_{N,Q,h}(R)` along `n_list` and compares with the bound shape.
pub fn bound_check_vnqr(q: &QPoly, n_list: &[u64], r: f64, h: [f64; 3]) -> Result<VnqrReport, LatticeError> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LatticeError::InvalidArgument("N list must be strictly ascending".into()));
    }
    let nu = q.ensure_homogeneous()?;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let v = exp_sum_lattice(q, n, h, r)?;
        let bound = vnqr_bound(n, nu, r);
        let nf = n as f64;
        rows.push(VnqrRow {
            n,
            value_re: v.re,
            value_im: v.im,
            abs_v: v.norm(),
            bound,
            ratio: v.norm() / bound,
            trivial_ratio: v.norm() / nf.powf(nu as f64 / 2.0 + 1.5),
        });
    }
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let max_trivial_ratio = rows.iter().map(|r| r.trivial_ratio).fold(0.0, f64::max);
    let regime_fits = [VnqrRegime::Small, VnqrRegime::Middle, VnqrRegime::Large]
        .into_iter()
        .filter_map(|regime| {
            let pts: Vec<(f64, f64)> =
                rows.iter().filter(|row| VnqrRegime::of(row.n, r) == regime).map(|row| (row.n as f64, row.abs_v)).collect();
            fit_loglog(&pts).ok().map(|f| (regime, f))
        })
        .collect();
    Ok(VnqrReport { r, nu, rows, max_ratio, max_trivial_ratio, regime_fits })
}

/// `(log N)(N^{3/2} + R^{1/2} D^{7/6} N^{-1/12})`, the shape of the bound for [`exp_sum_grid`].
pub fn grid_bound(n: u64, d: u64, r: f64) -> f64 {
    let nf = n as f64;
    nf.ln().max(1.0) * (nf.powf(1.5) + r.sqrt() * (d as f64).powf(7.0 / 6.0) * nf.powf(-1.0 / 12.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub abs_v: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// `V_{N,D}(R)` against its bound along `n_list`, with `D = max(1, N / d_div)`.
pub fn bound_check_grid(n_list: &[u64], d_div: u64, r: f64) -> Result<Vec<GridRow>, LatticeError> {
    n_list
        .iter()
        .map(|&n| {
            let d = (n / d_div.max(1)).max(1);
            let v = exp_sum_grid(n, d, r)?;
            let bound = grid_bound(n, d, r);
            Ok(GridRow { n, abs_v: v, bound, ratio: v / bound })
        })
        .collect()
}
