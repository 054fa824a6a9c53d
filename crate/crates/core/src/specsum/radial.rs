//! Symbolic Fourier transform of `P(x) f(|x|)/|x|` as a sum of radial terms.
//!
//! The transform of the radial weight is
//! `sin(2πR|ξ|)/(2π²|ξ|³) - (R/H) sin(πH|ξ|) cos(π(2R+H)|ξ|)/(π²|ξ|³)`,
//! and multiplying by `P(x)` applies `P(-∂_ξ/(2πi))`. Every term stays of the form
//! `c · π^a R^b H^c (2R+H)^d · Q(ξ) · Π trig(πF|ξ|) / |ξ|^m`, which is closed under `∂_ξ_j`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{IntPoly, LatticeError};
use crate::scalar::{rational_to_f64, ratio};
use crate::summation::{CompensatedComplex, CompensatedSum};
use crate::{FPoly, QPoly};

/// Frequency multiplying `π|ξ|` inside a trigonometric factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Frequency {
    TwoR,
    H,
    TwoRPlusH,
}

impl Frequency {
    fn value(self, r: f64, h: f64) -> f64 {
        match self {
            Frequency::TwoR => 2.0 * r,
            Frequency::H => h,
            Frequency::TwoRPlusH => 2.0 * r + h,
        }
    }
}

/// `sin(πF|ξ|)` when `cosine` is false, `cos(πF|ξ|)` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrigFactor {
    pub freq: Frequency,
    pub cosine: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TermKey {
    imaginary: bool,
    pi_power: i32,
    r_power: u32,
    h_power: i32,
    w_power: u32,
    trig: Vec<TrigFactor>,
    denom_power: u32,
}

/// `i^{imaginary} π^{pi_power} R^{r_power} H^{h_power} (2R+H)^{w_power} · poly(ξ) · Π trig / |ξ|^{denom_power}`.
/// Numerical prefactors live in the coefficients of `poly`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTerm {
    pub poly: QPoly,
    pub imaginary: bool,
    pub pi_power: i32,
    pub r_power: u32,
    pub h_power: i32,
    pub w_power: u32,
    pub trig: Vec<TrigFactor>,
    pub denom_power: u32,
}

impl RadialTerm {
    fn key(&self) -> TermKey {
        TermKey {
            imaginary: self.imaginary,
            pi_power: self.pi_power,
            r_power: self.r_power,
            h_power: self.h_power,
            w_power: self.w_power,
            trig: self.trig.clone(),
            denom_power: self.denom_power,
        }
    }

    fn from_key(key: TermKey, poly: QPoly) -> Self {
        Self {
            poly,
            imaginary: key.imaginary,
            pi_power: key.pi_power,
            r_power: key.r_power,
            h_power: key.h_power,
            w_power: key.w_power,
            trig: key.trig,
            denom_power: key.denom_power,
        }
    }

    /// The scalar prefactor `π^a R^b H^c (2R+H)^d`, without `i`.
    fn prefactor(&self, r: f64, h: f64) -> f64 {
        std::f64::consts::PI.powi(self.pi_power)
            * r.powi(self.r_power as i32)
            * h.powi(self.h_power)
            * (2.0 * r + h).powi(self.w_power as i32)
    }

    fn radial_factor(&self, rho: f64, r: f64, h: f64) -> f64 {
        let trig: f64 = self
            .trig
            .iter()
            .map(|t| {
                let phase = std::f64::consts::PI * t.freq.value(r, h) * rho;
                if t.cosine {
                    phase.cos()
                } else {
                    phase.sin()
                }
            })
            .product();
        self.prefactor(r, h) * trig / rho.powi(self.denom_power as i32)
    }

    fn with_unit(&self, value: f64) -> Complex64 {
        if self.imaginary {
            Complex64::new(0.0, value)
        } else {
            Complex64::new(value, 0.0)
        }
    }
}

/// Accumulates terms, merging those that differ only in their polynomial.
#[derive(Default)]
struct TermSet(BTreeMap<TermKey, QPoly>);

impl TermSet {
    fn push(&mut self, key: TermKey, poly: QPoly) {
        if poly.is_zero() {
            return;
        }
        let slot = self.0.entry(key).or_insert_with(QPoly::zero);
        *slot = slot.add(&poly);
    }

    fn into_terms(self) -> Vec<RadialTerm> {
        self.0
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| RadialTerm::from_key(k, p))
            .collect()
    }
}

fn base_terms() -> Vec<RadialTerm> {
    let sin = |freq| TrigFactor { freq, cosine: false };
    let cos = |freq| TrigFactor { freq, cosine: true };
    vec![
        RadialTerm {
            poly: QPoly::constant(ratio(1, 2)),
            imaginary: false,
            pi_power: -2,
            r_power: 0,
            h_power: 0,
            w_power: 0,
            trig: vec![sin(Frequency::TwoR)],
            denom_power: 3,
        },
        RadialTerm {
            poly: QPoly::constant(ratio(-1, 1)),
            imaginary: false,
            pi_power: -2,
            r_power: 1,
            h_power: -1,
            w_power: 0,
            trig: vec![sin(Frequency::H), cos(Frequency::TwoRPlusH)],
            denom_power: 3,
        },
    ]
}

/// `∂/∂ξ_axis` of a list of terms.
pub fn differentiate(terms: &[RadialTerm], axis: usize) -> Vec<RadialTerm> {
    let xi = QPoly::variable(axis);
    let norm = QPoly::norm_sq();
    let mut out = TermSet::default();
    for t in terms {
        let key = t.key();
        // Q/|ξ|^m -> (|ξ|² ∂Q - m ξ_j Q)/|ξ|^{m+2}
        let m = BigRational::from_integer(BigInt::from(t.denom_power));
        let poly = norm.mul(&t.poly.partial(axis)).sub(&xi.mul(&t.poly).scale(&m));
        out.push(TermKey { denom_power: key.denom_power + 2, ..key.clone() }, poly);
        // trig(πF|ξ|) -> πF ξ_j/|ξ| · trig'(πF|ξ|)
        for (idx, factor) in t.trig.iter().enumerate() {
            let mut k = key.clone();
            k.pi_power += 1;
            k.denom_power += 1;
            let mut poly = xi.mul(&t.poly);
            match factor.freq {
                Frequency::TwoR => {
                    k.r_power += 1;
                    poly = poly.scale(&ratio(2, 1));
                }
                Frequency::H => k.h_power += 1,
                Frequency::TwoRPlusH => k.w_power += 1,
            }
            if factor.cosine {
                poly = poly.neg();
            }
            k.trig[idx].cosine = !factor.cosine;
            k.trig.sort();
            out.push(k, poly);
        }
    }
    out.into_terms()
}

/// Fourier transform of `P(x) f(|x|)/|x|` at `ξ ≠ 0`, as radial terms.
pub fn gp_fourier_terms(p: &QPoly) -> Result<Vec<RadialTerm>, LatticeError> {
    let nu = p.ensure_homogeneous()?;
    let base = base_terms();
    let mut out = TermSet::default();
    for (exps, c) in p.terms() {
        let mut terms = base.clone();
        for axis in 0..3 {
            for _ in 0..exps[axis] {
                terms = differentiate(&terms, axis);
            }
        }
        for t in terms {
            out.push(t.key(), t.poly.scale(c));
        }
    }
    // x_j -> (i/(2π)) ∂_j for each of the nu factors.
    let sign = if nu % 4 >= 2 { -BigRational::one() } else { BigRational::one() };
    let scale = sign / BigRational::from_integer(BigInt::from(2).pow(nu));
    let terms = out
        .into_terms()
        .into_iter()
        .map(|mut t| {
            t.poly = t.poly.scale(&scale);
            t.pi_power -= nu as i32;
            t.imaginary ^= nu % 2 == 1;
            t
        })
        .collect();
    Ok(terms)
}

/// Sum of `terms` at the lattice point `xi`; `xi = 0` is singular.
pub fn eval_radial_terms(terms: &[RadialTerm], xi: [i64; 3], r: f64, h: f64) -> Result<Complex64, LatticeError> {
    if xi == [0, 0, 0] {
        return Err(LatticeError::InvalidArgument("radial terms are singular at xi = 0".into()));
    }
    let n = xi.iter().map(|&c| c * c).sum::<i64>() as f64;
    let rho = n.sqrt();
    let point = xi.map(|c| c as f64);
    let mut acc = CompensatedComplex::new();
    for t in terms {
        let q = t.poly.to_f64().eval(point);
        acc.add(t.with_unit(q * t.radial_factor(rho, r, h)));
    }
    Ok(acc.value())
}

/// Continuous-variable evaluation, used for finite-difference checks.
pub fn eval_radial_terms_at(terms: &[RadialTerm], xi: [f64; 3], r: f64, h: f64) -> Complex64 {
    let rho = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
    let polys: Vec<FPoly> = terms.iter().map(|t| t.poly.to_f64()).collect();
    terms
        .iter()
        .zip(&polys)
        .map(|(t, q)| t.with_unit(q.eval(xi) * t.radial_factor(rho, r, h)))
        .sum()
}

/// `ĝ(ξ)` for the radial weight alone, in closed form.
pub fn g_hat(xi: [f64; 3], r: f64, h: f64) -> f64 {
    use std::f64::consts::PI;
    let rho = xi.iter().map(|c| c * c).sum::<f64>().sqrt();
    let rho3 = rho * rho * rho;
    (2.0 * PI * r * rho).sin() / (2.0 * PI * PI * rho3)
        - r / h * (PI * h * rho).sin() * (PI * (2.0 * r + h) * rho).cos() / (PI * PI * rho3)
}

/// `π · main_term + Σ_{0 < |ξ|² <= n_trunc} ĝ_P(ξ)`, the frequency-side long sum truncated at `n_trunc`.
///
/// Points on a common sphere share the radial factor, so each term contributes
/// its exact shell sums `Σ_{|ξ|² = n} Q(ξ)` times one radial evaluation per shell.
pub fn freq_long_sum(p: &QPoly, r: f64, h: f64, n_trunc: u64) -> Result<f64, LatticeError> {
    if n_trunc < 1 {
        return Err(LatticeError::InvalidArgument("need n_trunc >= 1".into()));
    }
    let rb = crate::scalar::rational_from_f64(r).ok_or_else(|| LatticeError::InvalidArgument("R".into()))?;
    let hb = crate::scalar::rational_from_f64(h).ok_or_else(|| LatticeError::InvalidArgument("H".into()))?;
    let main = std::f64::consts::PI * rational_to_f64(&crate::lattice::main_term(p, &rb, &hb)?);
    let terms = gp_fourier_terms(p)?;
    let mut acc = CompensatedSum::new();
    acc.add(main);
    for t in terms.iter().filter(|t| !t.imaginary) {
        let ip = IntPoly::new(&t.poly)?;
        let denom = rational_to_f64(&BigRational::from_integer(ip.denom().clone()));
        let shells = ip.shell_sums(n_trunc)?;
        for (n, &s) in shells.iter().enumerate().skip(1) {
            if s != 0 {
                let rho = (n as f64).sqrt();
                acc.add(s as f64 / denom * t.radial_factor(rho, r, h));
            }
        }
    }
    Ok(acc.value())
}

/// Smallest `|ξ|` power across `terms`.
pub fn min_denominator_power(terms: &[RadialTerm]) -> Option<u32> {
    terms.iter().map(|t| t.denom_power).min()
}

/// Largest absolute numerator among the term coefficients, a size indicator for reports.
pub fn max_coefficient(terms: &[RadialTerm]) -> BigRational {
    terms
        .iter()
        .flat_map(|t| t.poly.terms().map(|(_, c)| c.abs()).collect::<Vec<_>>())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::long_sum_physical;
    use crate::poly::parse_poly;

    fn q(text: &str) -> QPoly {
        parse_poly(text).unwrap().to_real().unwrap()
    }

    /// Direct radial quadrature: `ĝ(ρ) = (2/ρ) ∫ f(s) sin(2πsρ) ds`.
    fn g_hat_quadrature(rho: f64, r: f64, h: f64) -> f64 {
        use std::f64::consts::PI;
        let integrand = |s: f64| crate::lattice::cutoff_f(s, r, h) * (2.0 * PI * s * rho).sin();
        let simpson = |a: f64, b: f64, n: usize| {
            let step = (b - a) / n as f64;
            let mut acc = integrand(a) + integrand(b);
            for k in 1..n {
                acc += integrand(a + k as f64 * step) * if k % 2 == 1 { 4.0 } else { 2.0 };
            }
            acc * step / 3.0
        };
        2.0 / rho * (simpson(0.0, r, 20000) + simpson(r, r + h, 2000))
    }

    #[test]
    fn closed_form_g_hat_matches_quadrature() {
        for (xi, r, h) in [([1.0, 2.0, 2.0], 3.0, 0.5), ([0.3, 0.0, 0.4], 2.0, 1.0), ([1.0, 1.0, 1.0], 1.5, 0.25)] {
            let rho_sq: f64 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
            let oracle = g_hat_quadrature(rho_sq.sqrt(), r, h);
            let got = g_hat(xi, r, h);
            assert!((got - oracle).abs() < 1e-9 * oracle.abs().max(1e-3), "{got} vs {oracle}");
        }
    }

    #[test]
    fn constant_gives_the_two_base_terms() {
        let terms = gp_fourier_terms(&q("1")).unwrap();
        assert_eq!(terms.len(), 2);
        let v = eval_radial_terms(&terms, [1, 2, 2], 3.0, 0.5).unwrap();
        assert!((v.re - g_hat([1.0, 2.0, 2.0], 3.0, 0.5)).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn linear_polynomial_denominators() {
        let terms = gp_fourier_terms(&q("x")).unwrap();
        let first: Vec<u32> =
            terms.iter().filter(|t| t.trig.len() == 1).map(|t| t.denom_power).collect::<Vec<_>>();
        assert!(first.contains(&4) && first.contains(&5), "{first:?}");
        assert!(terms.iter().all(|t| t.imaginary));
        assert!(terms.iter().filter(|t| t.denom_power == 4 && t.trig.len() == 1).all(|t| t.trig[0].cosine));
    }

    #[test]
    fn minimum_denominator_is_degree_plus_three() {
        for text in ["1", "x", "x*y", "x^2 - z^2", "x*y*z", "5*(x^4+y^4+z^4)-3*(x^2+y^2+z^2)^2", "y^5 + x*z^4"] {
            let p = q(text);
            let terms = gp_fourier_terms(&p).unwrap();
            assert_eq!(min_denominator_power(&terms), Some(p.degree() + 3), "{text}");
        }
    }

    #[test]
    fn origin_is_rejected() {
        let terms = gp_fourier_terms(&q("x^2")).unwrap();
        assert!(eval_radial_terms(&terms, [0, 0, 0], 2.0, 0.5).is_err());
    }

    #[test]
    fn differentiation_is_closed_and_commutes() {
        let base = base_terms();
        let xy = differentiate(&differentiate(&base, 0), 1);
        let yx = differentiate(&differentiate(&base, 1), 0);
        let at = |terms: &[RadialTerm]| eval_radial_terms_at(terms, [0.7, -1.3, 2.1], 2.5, 0.3);
        assert!((at(&xy) - at(&yx)).norm() < 1e-12 * at(&xy).norm());
    }

    #[test]
    fn odd_symmetric_polynomial_has_zero_frequency_sum() {
        assert_eq!(freq_long_sum(&q("x*y"), 10.0, 0.5, 200).unwrap(), 0.0);
    }

    #[test]
    fn shell_grouped_sum_matches_pointwise_sum() {
        let p = q("x^2 - 2*y*z + z^2");
        let (r, h, n) = (4.0, 0.5, 60u64);
        let terms = gp_fourier_terms(&p).unwrap();
        let main = std::f64::consts::PI
            * rational_to_f64(&crate::lattice::main_term(&p, &ratio(4, 1), &ratio(1, 2)).unwrap());
        let mut pointwise = CompensatedSum::new();
        pointwise.add(main);
        for k in 1..=n {
            for xi in crate::lattice::representations(k) {
                pointwise.add(eval_radial_terms(&terms, xi, r, h).unwrap().re);
            }
        }
        let grouped = freq_long_sum(&p, r, h, n).unwrap();
        assert!((grouped - pointwise.value()).abs() < 1e-10 * grouped.abs().max(1.0));
    }

    #[test]
    fn frequency_sum_drifts_towards_physical_sum() {
        let p = q("1");
        let target = long_sum_physical(&p, 10.0f64, 0.5).unwrap().value;
        let errs: Vec<f64> =
            [64u64, 256, 1024].iter().map(|&n| (freq_long_sum(&p, 10.0, 0.5, n).unwrap() - target).abs()).collect();
        assert!(errs[2] < errs[0], "{errs:?}");
    }
}
