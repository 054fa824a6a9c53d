//! Harmonic decomposition `P = sum_d |x|^{2d} P_{nu-2d}` and sphere averages.
//!
//! In three variables, for `h` harmonic homogeneous of degree `m`,
//! `Δ(|x|^{2d} h) = 2d(2d + 2m + 1) |x|^{2d-2} h`. Decomposing `ΔP`
//! recursively therefore determines every component with `d >= 1`, and the
//! harmonic top component is what is left of `P`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{PolyError, Polynomial3};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicDecomposition<T: Scalar> {
    /// `(d, P_{nu-2d})`, ascending in `d`; zero components are omitted.
    pub parts: Vec<(u32, Polynomial3<T>)>,
    pub degree: u32,
}

impl<T: Scalar> HarmonicDecomposition<T> {
    pub fn reconstruct(&self) -> Polynomial3<T> {
        self.parts.iter().fold(Polynomial3::zero(), |acc, (d, h)| {
            acc.add(&Polynomial3::norm_sq_pow(*d).mul(h))
        })
    }

    pub fn component(&self, d: u32) -> Polynomial3<T> {
        self.parts
            .iter()
            .find(|(e, _)| *e == d)
            .map(|(_, h)| h.clone())
            .unwrap_or_else(Polynomial3::zero)
    }

    /// The constant `P_0` (only non-zero for even degree).
    pub fn constant_part(&self) -> T {
        if self.degree % 2 == 1 {
            return T::zero();
        }
        self.component(self.degree / 2).coefficient([0, 0, 0])
    }
}

pub fn harmonic_decompose<T: Scalar>(
    p: &Polynomial3<T>,
) -> Result<HarmonicDecomposition<T>, PolyError> {
    let degree = p.ensure_homogeneous()?;
    Ok(decompose_homogeneous(p, degree))
}

fn decompose_homogeneous<T: Scalar>(p: &Polynomial3<T>, degree: u32) -> HarmonicDecomposition<T> {
    if p.is_zero() {
        return HarmonicDecomposition { parts: Vec::new(), degree };
    }
    if degree < 2 {
        return HarmonicDecomposition { parts: vec![(0, p.clone())], degree };
    }
    let lower = decompose_homogeneous(&p.laplacian(), degree - 2);
    let mut parts = Vec::with_capacity(lower.parts.len() + 1);
    let mut rest = p.clone();
    for (e, g) in &lower.parts {
        let d = e + 1;
        let factor = T::from_int((2 * d * (2 * degree - 2 * d + 1)) as i64);
        let h = g.scale(&(T::one() / factor));
        rest = rest.sub(&Polynomial3::norm_sq_pow(d).mul(&h));
        parts.push((d, h));
    }
    if !rest.is_zero() {
        parts.insert(0, (0, rest));
    }
    HarmonicDecomposition { parts, degree }
}

/// `(2a-1)!!` for `a >= 0`, with `(-1)!! = 1`.
fn odd_double_factorial(a: u32) -> BigInt {
    (1..=a).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1))
}

/// Average of `P` over the unit sphere, `(1/4π) ∫_{S^2} P dσ`, exactly.
pub fn sphere_average(p: &Polynomial3<BigRational>) -> Result<BigRational, PolyError> {
    p.ensure_homogeneous()?;
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        if e.iter().any(|k| k % 2 == 1) {
            continue;
        }
        let [a, b, cc] = e.map(|k| k / 2);
        let num = odd_double_factorial(a) * odd_double_factorial(b) * odd_double_factorial(cc);
        // (2n+1)!! with n = a+b+c is odd_double_factorial(n + 1).
        let den = odd_double_factorial(a + b + cc + 1);
        acc += c * BigRational::new(num, den);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{harmonic_quartic, parse_poly};
    use crate::scalar::ratio;
    use crate::QPoly;
    use proptest::prelude::*;

    fn q(text: &str) -> QPoly {
        parse_poly(text).unwrap().to_real().unwrap()
    }

    #[test]
    fn norm_squared_is_pure_radial() {
        let dec = harmonic_decompose(&q("x^2+y^2+z^2")).unwrap();
        assert_eq!(dec.parts, vec![(1, QPoly::constant(ratio(1, 1)))]);
    }

    #[test]
    fn x_squared_splits_into_harmonic_and_constant() {
        let dec = harmonic_decompose(&q("x^2")).unwrap();
        assert_eq!(dec.parts.len(), 2);
        assert_eq!(dec.component(0), q("x^2 - 1/3*(x^2+y^2+z^2)"));
        assert_eq!(dec.component(1), QPoly::constant(ratio(1, 3)));
        assert!(dec.component(0).is_harmonic());
        assert_eq!(dec.constant_part(), ratio(1, 3));
    }

    #[test]
    fn harmonic_input_is_a_single_part() {
        let p = harmonic_quartic();
        let dec = harmonic_decompose(&p).unwrap();
        assert_eq!(dec.parts, vec![(0, p)]);
    }

    #[test]
    fn rejects_mixed_degrees() {
        assert_eq!(harmonic_decompose(&q("x^2+y")), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn sphere_average_examples() {
        assert_eq!(sphere_average(&q("x^2")).unwrap(), ratio(1, 3));
        assert_eq!(sphere_average(&harmonic_quartic()).unwrap(), ratio(0, 1));
        assert_eq!(sphere_average(&q("x*y^2")).unwrap(), ratio(0, 1));
        assert_eq!(sphere_average(&q("x^4")).unwrap(), ratio(1, 5));
        assert_eq!(sphere_average(&q("x^2*y^2")).unwrap(), ratio(1, 15));
        assert_eq!(sphere_average(&q("(x^2+y^2+z^2)^3")).unwrap(), ratio(1, 1));
    }

    fn homogeneous_poly() -> impl Strategy<Value = QPoly> {
        (0u32..=8).prop_flat_map(|nu| {
            prop::collection::vec((0..=nu, 0..=nu, -6i64..=6, 1i64..=5), 0..7).prop_map(move |ts| {
                QPoly::from_terms(ts.into_iter().filter_map(|(i, j, n, d)| {
                    (i + j <= nu).then(|| ([i, j, nu - i - j], ratio(n, d)))
                }))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn decomposition_reconstructs_and_is_harmonic(p in homogeneous_poly()) {
            let dec = harmonic_decompose(&p).unwrap();
            prop_assert_eq!(dec.reconstruct(), p.clone());
            for (d, h) in &dec.parts {
                prop_assert!(h.is_harmonic());
                prop_assert!(h.is_homogeneous());
                if !h.is_zero() {
                    prop_assert_eq!(h.degree() + 2 * d, dec.degree);
                }
            }
        }

        #[test]
        fn zero_mean_iff_no_constant_component(p in homogeneous_poly()) {
            let dec = harmonic_decompose(&p).unwrap();
            let avg = sphere_average(&p).unwrap();
            prop_assert_eq!(avg.is_zero(), dec.constant_part().is_zero());
            // The average of |x|^{2d} * P_0 on the unit sphere is P_0 itself.
            prop_assert_eq!(avg, dec.constant_part());
        }
    }
}
