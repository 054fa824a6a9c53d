//! Exact enumeration of `Z^3` shells and lattice sums.

mod bounds;
mod main_term;
mod weighted;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::PolyError;
use crate::QPoly;

pub use bounds::{coefficient_bound_report, BoundMode, CoefficientBoundReport};
pub use main_term::{ball_main_term, main_term};
pub use weighted::{cutoff_f, long_sum_physical, short_sum, SumReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("integer overflow risk: |P| up to radius^2 {n_max} exceeds the 128-bit accumulator")]
    Overflow { n_max: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("coefficient bounds apply to cusp forms only: {0}")]
    NotCuspidal(String),
}

pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// All `(x, y, z)` with `x^2 + y^2 + z^2 = n`, ordered by `x`, then `y`, then `z`.
pub fn representations(n: u64) -> Vec<[i64; 3]> {
    let r = isqrt(n) as i64;
    let mut out = Vec::new();
    for x in -r..=r {
        let rest_x = n as i64 - x * x;
        let ry = isqrt(rest_x as u64) as i64;
        for y in -ry..=ry {
            let rest = rest_x - y * y;
            let z = isqrt(rest as u64) as i64;
            if z * z != rest {
                continue;
            }
            if z == 0 {
                out.push([x, y, 0]);
            } else {
                out.push([x, y, -z]);
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// `(n, 2^∞)`, the largest power of two dividing `n`.
pub fn two_adic_part(n: u64) -> u64 {
    assert!(n >= 1, "two_adic_part needs n >= 1");
    1u64 << n.trailing_zeros()
}

/// `P` scaled to integer coefficients: `P = numerators / denom`.
#[derive(Debug, Clone)]
pub(crate) struct IntPoly {
    terms: Vec<([u32; 3], i128)>,
    denom: BigInt,
    degree: u32,
    abs_coeff_sum: BigInt,
}

impl IntPoly {
    pub(crate) fn new(p: &QPoly) -> Result<Self, LatticeError> {
        let degree = p.ensure_homogeneous()?;
        let denom = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms = Vec::new();
        let mut abs_coeff_sum = BigInt::zero();
        for (e, c) in p.terms() {
            let scaled = c * BigRational::from_integer(denom.clone());
            let v = scaled.to_integer();
            abs_coeff_sum += v.abs();
            let v = v.to_i128().ok_or(LatticeError::Overflow { n_max: 0 })?;
            terms.push((*e, v));
        }
        Ok(Self { terms, denom, degree, abs_coeff_sum })
    }

    pub(crate) fn denom(&self) -> &BigInt {
        &self.denom
    }

    fn check_capacity(&self, n_max: u64) -> Result<(), LatticeError> {
        // |P(x)| <= sum|c| * n^{deg/2}, at most (2r+1)^3 points in the ball.
        let r = BigInt::from(isqrt(n_max) + 1);
        let points: BigInt = (&r * 2u32 + 1u32).pow(3);
        let bound = &self.abs_coeff_sum * r.pow(self.degree) * points;
        if bound.bits() >= 126 {
            return Err(LatticeError::Overflow { n_max });
        }
        Ok(())
    }

    /// Coefficients of `z^k` after fixing `x` and `y`.
    fn z_coefficients(&self, x: i128, y: i128, out: &mut [i128]) {
        out.iter_mut().for_each(|c| *c = 0);
        for (e, c) in &self.terms {
            out[e[2] as usize] += c * x.pow(e[0]) * y.pow(e[1]);
        }
    }

    /// Accumulates `sum_{|x|^2 = n} P(x)` (scaled) into `acc[n]` for every `x` in the slab.
    fn accumulate_slab(&self, x: i64, n_max: u64, zc: &mut [i128], acc: &mut [i128]) {
        let rest_x = n_max as i64 - x * x;
        if rest_x < 0 {
            return;
        }
        let ry = isqrt(rest_x as u64) as i64;
        for y in -ry..=ry {
            let base = (x * x + y * y) as usize;
            self.z_coefficients(x as i128, y as i128, zc);
            acc[base] += zc[0];
            let zmax = isqrt((rest_x - y * y) as u64) as i64;
            // z and -z land on the same shell: only the even part in z survives.
            for z in 1..=zmax {
                let z2 = (z * z) as i128;
                let mut even = 0i128;
                let mut k = (self.degree / 2 * 2) as usize;
                loop {
                    even = even * z2 + zc[k];
                    if k < 2 {
                        break;
                    }
                    k -= 2;
                }
                acc[base + (z * z) as usize] += 2 * even;
            }
        }
    }

    /// Scaled shell sums `denom * a_n` for `0 <= n <= n_max`, parallel over `x` slabs.
    pub(crate) fn shell_sums(&self, n_max: u64) -> Result<Vec<i128>, LatticeError> {
        self.check_capacity(n_max)?;
        let r = isqrt(n_max) as i64;
        let len = n_max as usize + 1;
        let width = self.degree as usize + 1;
        let acc = (-r..=r)
            .into_par_iter()
            .fold(
                || (vec![0i128; len], vec![0i128; width]),
                |(mut acc, mut zc), x| {
                    self.accumulate_slab(x, n_max, &mut zc, &mut acc);
                    (acc, zc)
                },
            )
            .map(|(acc, _)| acc)
            .reduce(
                || vec![0i128; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(acc)
    }

    /// Single-threaded reference for [`IntPoly::shell_sums`].
    #[cfg(test)]
    pub(crate) fn shell_sums_serial(&self, n_max: u64) -> Result<Vec<i128>, LatticeError> {
        self.check_capacity(n_max)?;
        let r = isqrt(n_max) as i64;
        let mut acc = vec![0i128; n_max as usize + 1];
        let mut zc = vec![0i128; self.degree as usize + 1];
        for x in -r..=r {
            self.accumulate_slab(x, n_max, &mut zc, &mut acc);
        }
        Ok(acc)
    }
}

/// Exact theta coefficients `a_n = sum_{|x|^2 = n} P(x)` for `1 <= n <= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub nu: u32,
    pub poly: QPoly,
    pub n_max: u64,
    /// `P(0)`; non-zero only for constant `P`.
    pub origin: BigRational,
    values: Vec<BigRational>,
}

impl CoefficientSeries {
    /// `a_n`, for `1 <= n <= n_max`.
    pub fn a(&self, n: u64) -> &BigRational {
        assert!(n >= 1 && n <= self.n_max, "a_{n} outside 1..={}", self.n_max);
        &self.values[n as usize - 1]
    }

    /// `a_1, ..., a_{n_max}`.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(crate::scalar::rational_to_f64).collect()
    }

    pub fn poly_id(&self) -> String {
        self.poly.to_canonical()
    }

    /// Weight `k = nu + 3/2` of the associated theta series.
    pub fn weight(&self) -> BigRational {
        BigRational::new(BigInt::from(2 * self.nu as i64 + 3), BigInt::from(2))
    }
}

pub fn coeff_series(p: &QPoly, n_max: u64) -> Result<CoefficientSeries, LatticeError> {
    let ip = IntPoly::new(p)?;
    let sums = ip.shell_sums(n_max)?;
    let denom = BigRational::from_integer(ip.denom().clone());
    let values = sums[1..]
        .iter()
        .map(|&v| BigRational::from_integer(BigInt::from(v)) / &denom)
        .collect();
    Ok(CoefficientSeries {
        nu: ip.degree,
        poly: p.clone(),
        n_max,
        origin: p.coefficient([0, 0, 0]),
        values,
    })
}

/// `sum_{|x|^2 <= r_sq} P(x)`, exactly.
pub fn ball_sum(p: &QPoly, r_sq: u64) -> Result<BigRational, LatticeError> {
    let ip = IntPoly::new(p)?;
    let total: i128 = ip.shell_sums(r_sq)?.iter().sum();
    Ok(BigRational::new(BigInt::from(total), ip.denom().clone()))
}

/// Running ball sums `sum_{|x|^2 <= n} P(x)` for every `0 <= n <= n_max`.
pub fn ball_sums_prefix(p: &QPoly, n_max: u64) -> Result<Vec<BigRational>, LatticeError> {
    let ip = IntPoly::new(p)?;
    let sums = ip.shell_sums(n_max)?;
    let denom = ip.denom().clone();
    let mut running = 0i128;
    Ok(sums
        .into_iter()
        .map(|v| {
            running += v;
            BigRational::new(BigInt::from(running), denom.clone())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{harmonic_quartic, parse_poly};
    use crate::scalar::ratio;

    fn q(text: &str) -> QPoly {
        parse_poly(text).unwrap().to_real().unwrap()
    }

    /// Brute force over the cube |coord| <= bound.
    fn brute_shell(p: &QPoly, n: u64, bound: i64) -> BigRational {
        let mut acc = BigRational::zero();
        for x in -bound..=bound {
            for y in -bound..=bound {
                for z in -bound..=bound {
                    if (x * x + y * y + z * z) as u64 == n {
                        acc += p.eval_i64([x, y, z]);
                    }
                }
            }
        }
        acc
    }

    #[test]
    fn representations_examples() {
        let r1 = representations(1);
        assert_eq!(r1.len(), 6);
        assert_eq!(r1[0], [-1, 0, 0]);
        assert_eq!(r1[5], [1, 0, 0]);
        assert!(representations(7).is_empty());
        assert_eq!(representations(0), vec![[0, 0, 0]]);
        assert!(representations(28).is_empty());
        assert_eq!(representations(3).len(), 8);
    }

    #[test]
    fn representations_match_brute_force_counts() {
        for n in 0..=60u64 {
            let mut count = 0;
            for x in -8i64..=8 {
                for y in -8i64..=8 {
                    for z in -8i64..=8 {
                        count += ((x * x + y * y + z * z) as u64 == n) as usize;
                    }
                }
            }
            let reps = representations(n);
            assert_eq!(reps.len(), count, "n = {n}");
            assert!(reps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn quartic_coefficients_match_hand_enumeration() {
        let p = harmonic_quartic();
        let s = coeff_series(&p, 3).unwrap();
        assert_eq!(s.a(1), &ratio(12, 1));
        assert_eq!(s.a(2), &ratio(-24, 1));
        assert_eq!(s.a(3), &ratio(-96, 1));
        for n in 1..=3 {
            assert_eq!(s.a(n), &brute_shell(&p, n, 2));
        }
        assert_eq!(s.weight(), ratio(11, 2));
    }

    #[test]
    fn constant_series_counts_representations() {
        let s = coeff_series(&q("1"), 3).unwrap();
        assert_eq!(s.values(), &[ratio(6, 1), ratio(12, 1), ratio(8, 1)]);
        assert_eq!(s.origin, ratio(1, 1));
    }

    #[test]
    fn ball_sum_examples() {
        assert_eq!(ball_sum(&q("x*y"), 50).unwrap(), ratio(0, 1));
        assert_eq!(ball_sum(&q("1"), 1).unwrap(), ratio(7, 1));
        assert_eq!(ball_sum(&harmonic_quartic(), 3).unwrap(), ratio(-108, 1));
    }

    #[test]
    fn rational_coefficients_stay_exact() {
        let p = q("1/3*x^2 - 1/7*y^2");
        for n in [1u64, 2, 5, 9, 14] {
            let s = coeff_series(&p, n).unwrap();
            assert_eq!(s.a(n), &brute_shell(&p, n, 4), "n = {n}");
        }
    }

    #[test]
    fn ball_sum_is_origin_plus_series() {
        let corpus = [
            "1",
            "x^2-y^2",
            "5*(x^4+y^4+z^4)-3*(x^2+y^2+z^2)^2",
            "x^2",
            "2/3*x^2*y^2*z^2 - y^6",
            "x^3*y + 4*z^4",
        ];
        for text in corpus {
            let p = q(text);
            let series = coeff_series(&p, 200).unwrap();
            let prefix = ball_sums_prefix(&p, 200).unwrap();
            let mut running = series.origin.clone();
            assert_eq!(prefix[0], running);
            for n in 1..=200u64 {
                running += series.a(n);
                assert_eq!(prefix[n as usize], running, "{text} at N = {n}");
            }
            assert_eq!(ball_sum(&p, 200).unwrap(), running);
        }
    }

    #[test]
    fn odd_exponents_vanish_identically() {
        for text in ["x*y", "x^3", "x*y^2*z^2", "x^2*y*z + y^3*z"] {
            let series = coeff_series(&q(text), 150).unwrap();
            assert!(series.values().iter().all(|v| v.is_zero()), "{text}");
            assert!(ball_sum(&q(text), 150).unwrap().is_zero());
        }
    }

    #[test]
    fn parallel_and_serial_enumeration_agree() {
        let ip = IntPoly::new(&q("3*x^4 - 7*x*y^2*z + z^4 - 2*x^2*y^2")).unwrap();
        assert_eq!(ip.shell_sums(900).unwrap(), ip.shell_sums_serial(900).unwrap());
    }

    #[test]
    fn two_adic_part_examples() {
        assert_eq!(two_adic_part(12), 4);
        assert_eq!(two_adic_part(7), 1);
        assert_eq!(two_adic_part(96), 32);
    }

    #[test]
    fn non_homogeneous_is_rejected() {
        assert!(matches!(coeff_series(&q("x^2+y"), 5), Err(LatticeError::Poly(_))));
    }

    #[test]
    fn overflow_is_detected() {
        let p = q("1000000000000*x^8");
        assert!(matches!(ball_sum(&p, 1 << 40), Err(LatticeError::Overflow { .. })));
    }
}
