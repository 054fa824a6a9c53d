use std::f64::consts::TAU;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

use super::{automorphy_j, gamma0_4_from_cd, GammaElement, ModularError};
use crate::lattice::{coeff_series, CoefficientSeries};
use crate::scalar::rational_to_f64;
use crate::summation::CompensatedComplex;
use crate::QPoly;

pub const DEFAULT_Y_MIN: f64 = 0.05;
pub const DEFAULT_N_CAP: u64 = 1_000_000;
/// Below this `|θ(z)|` a transformation check says nothing.
pub const THETA_FLOOR: f64 = 1e-10;

/// `θ(z) = Σ_{x ∈ Z^3} P(x) e(|x|^2 z)` for a harmonic `P`, with precomputed coefficients.
#[derive(Debug, Clone)]
pub struct ThetaContext {
    pub poly: QPoly,
    pub nu: u32,
    pub weight: BigRational,
    pub series: CoefficientSeries,
    pub n_max: u64,
    pub y_min: f64,
    /// `|a_n| <= coefficient_bound · n^{ν/2 + 1}` for every `n >= 1`.
    pub coefficient_bound: f64,
    origin: f64,
    coeffs: Vec<f64>,
}

impl ThetaContext {
    pub fn new(poly: &QPoly, n_max: u64) -> Result<Self, ModularError> {
        if !poly.is_harmonic() {
            return Err(ModularError::NotHarmonic(poly.to_canonical()));
        }
        if n_max == 0 || n_max > DEFAULT_N_CAP {
            return Err(ModularError::CapExceeded { im: f64::NAN, needed: n_max, cap: DEFAULT_N_CAP });
        }
        let series = coeff_series(poly, n_max)?;
        // r_3(n) <= 2 #{x^2 + y^2 <= n} <= 18n, and each monomial is at most n^{ν/2} on the shell.
        let abs_sum: f64 = poly.terms().map(|(_, c)| rational_to_f64(&c.abs())).sum();
        Ok(Self {
            poly: poly.clone(),
            nu: series.nu,
            weight: series.weight(),
            n_max,
            y_min: DEFAULT_Y_MIN,
            coefficient_bound: 18.0 * abs_sum,
            origin: rational_to_f64(&series.origin),
            coeffs: series.to_f64(),
            series,
        })
    }

    /// Smallest context whose truncation error is below `tol` everywhere on `Im z >= y_min`.
    pub fn for_y_min(poly: &QPoly, y_min: f64, tol: f64) -> Result<Self, ModularError> {
        let probe = Self::new(poly, 1)?;
        let needed = probe.terms_needed(y_min, tol)?;
        Ok(Self::new(poly, needed.max(1))?.with_y_min(y_min))
    }

    pub fn with_y_min(mut self, y_min: f64) -> Self {
        self.y_min = y_min;
        self
    }

    fn growth(&self) -> f64 {
        self.nu as f64 / 2.0 + 1.0
    }

    /// Certified bound on `Σ_{n > n} |a_n| e^{-2π n y}`.
    pub fn tail_bound(&self, n: u64, y: f64) -> f64 {
        if self.coefficient_bound == 0.0 {
            return 0.0;
        }
        let p = self.growth();
        let m = (n + 1) as f64;
        let rho = ((m + 1.0) / m).powf(p) * (-TAU * y).exp();
        if rho >= 1.0 {
            return f64::INFINITY;
        }
        let first = (self.coefficient_bound.ln() + p * m.ln() - TAU * y * m).exp();
        first / (1.0 - rho)
    }

    /// Smallest truncation point whose tail bound at height `y` is below `tol`.
    pub fn terms_needed(&self, y: f64, tol: f64) -> Result<u64, ModularError> {
        let mut hi = 1u64;
        while self.tail_bound(hi, y) >= tol {
            if hi >= DEFAULT_N_CAP {
                return Err(ModularError::CapExceeded { im: y, needed: hi, cap: DEFAULT_N_CAP });
            }
            hi = (hi * 2).min(DEFAULT_N_CAP);
        }
        let mut lo = hi / 2;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.tail_bound(mid, y) < tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(if self.tail_bound(lo, y) < tol { lo } else { hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaValue {
    #[serde(serialize_with = "complex_pair")]
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: u64,
}

/// `θ(z)` truncated where the certified tail drops below `tol`.
pub fn theta_eval(ctx: &ThetaContext, z: Complex64, tol: f64) -> Result<ThetaValue, ModularError> {
    let y = z.im;
    if !(y >= ctx.y_min) {
        return Err(ModularError::TooCloseToAxis { im: y, y_min: ctx.y_min });
    }
    let needed = ctx.terms_needed(y, tol)?;
    if needed > ctx.n_max {
        return Err(ModularError::CapExceeded { im: y, needed, cap: ctx.n_max });
    }
    let mut acc = CompensatedComplex::new();
    acc.add(Complex64::new(ctx.origin, 0.0));
    for (i, &a) in ctx.coeffs[..needed as usize].iter().enumerate() {
        if a != 0.0 {
            let n = (i + 1) as f64;
            let phase = (n * z.re).rem_euclid(1.0);
            acc.add(Complex64::from_polar(a * (-TAU * n * y).exp(), TAU * phase));
        }
    }
    Ok(ThetaValue { value: acc.value(), tail_bound: ctx.tail_bound(needed, y), terms: needed })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformationReport {
    pub gamma: [i64; 4],
    #[serde(serialize_with = "complex_pair")]
    pub z: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub lhs: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub rhs: Complex64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub inconclusive: bool,
    pub tail_bound: f64,
}

fn complex_pair<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// Compares `θ(γz)` against `j(γ, z)^{2ν+3} θ(z)`.
pub fn transformation_check(
    ctx: &ThetaContext,
    gamma: &GammaElement,
    z: Complex64,
    tol: f64,
) -> Result<TransformationReport, ModularError> {
    let gz = gamma.apply(z);
    let at_z = theta_eval(ctx, z, 1e-20)?;
    let j = automorphy_j(gamma, z)?;
    let factor = j.powi(2 * ctx.nu as i32 + 3);
    let rhs = factor * at_z.value;
    let scale = rhs.norm().max(THETA_FLOOR);
    let at_gz = theta_eval(ctx, gz, 1e-3 * tol * scale)?;
    let rel_err = (at_gz.value - rhs).norm() / scale;
    let inconclusive = at_z.value.norm() < THETA_FLOOR;
    Ok(TransformationReport {
        gamma: gamma.to_array(),
        z,
        lhs: at_gz.value,
        rhs,
        rel_err,
        tol,
        pass: !inconclusive && rel_err < tol,
        inconclusive,
        tail_bound: at_gz.tail_bound + factor.norm() * at_z.tail_bound,
    })
}

/// A pseudo-random `γ ∈ Γ0(4)` with `|c| <= c_max` and odd `|d| <= 15`, shifted by a random translation.
pub fn sample_gamma<R: Rng + ?Sized>(rng: &mut R, c_max: i64) -> GammaElement {
    let steps = c_max / 4;
    loop {
        let c = 4 * rng.gen_range(-steps..=steps);
        let d = 2 * rng.gen_range(-8i64..=7) + 1;
        if let Ok(g) = gamma0_4_from_cd(c, d) {
            return GammaElement::translation(rng.gen_range(-3..=3)).compose(&g);
        }
    }
}

/// A point with `Im z` in `[y_lo, y_hi]`, placed near the pole `-d/c` so that `Im γz` stays moderate.
pub fn sample_point<R: Rng + ?Sized>(rng: &mut R, gamma: &GammaElement, y_lo: f64, y_hi: f64) -> Complex64 {
    let y = rng.gen_range(y_lo..=y_hi);
    let x = if gamma.c == 0 {
        rng.gen_range(-0.5..=0.5)
    } else {
        -(gamma.d as f64) / gamma.c as f64 + rng.gen_range(-1.0..=1.0) / gamma.c.abs() as f64
    };
    Complex64::new(x, y)
}

/// Runs `count` transformation checks on sampled `(γ, z)` with `Im z` in `[0.1, 2]`.
pub fn sample_check<R: Rng + ?Sized>(
    ctx: &ThetaContext,
    rng: &mut R,
    count: usize,
    c_max: i64,
    tol: f64,
) -> Result<Vec<TransformationReport>, ModularError> {
    let mut reports = Vec::with_capacity(count);
    while reports.len() < count {
        let gamma = sample_gamma(rng, c_max);
        let z = sample_point(rng, &gamma, 0.1, 2.0);
        if gamma.apply(z).im < ctx.y_min {
            continue;
        }
        reports.push(transformation_check(ctx, &gamma, z, tol)?);
    }
    Ok(reports)
}
