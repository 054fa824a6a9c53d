//! Scalar abstractions shared by the exact and floating-point code paths.
//!
//! Polynomials, exponent pairs and error terms are generic over [`Scalar`];
//! the exact instantiations ([`Rational`](crate::Rational),
//! [`GaussianRational`](crate::GaussianRational)) are what the library uses
//! for anything that has to come out bit-exact, while `f64`/`f32` are used for
//! fast evaluation. Oscillatory kernels are generic over [`Real`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FloatConst, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Coefficient type of a polynomial or exponent computation.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    /// Image of an exact rational in this scalar type (rounded for floats).
    fn from_rational(r: &BigRational) -> Self;

    /// Textual form accepted back by the polynomial parser, when one exists.
    fn to_literal(&self) -> String;
}

/// Totally ordered scalars, used by the minimax balancing engine.
pub trait OrderedScalar: Scalar + PartialOrd + Signed {}

impl<T: Scalar + PartialOrd + Signed> OrderedScalar for T {}

/// Floating-point type used by the oscillatory sums.
pub trait Real:
    num_traits::Float + FloatConst + FromPrimitive + Debug + Send + Sync + Default + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_literal(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Complex<BigRational> {
    fn from_int(v: i64) -> Self {
        Complex::new(<BigRational as Scalar>::from_int(v), BigRational::zero())
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex::new(r.clone(), BigRational::zero())
    }

    fn to_literal(&self) -> String {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => self.re.to_string(),
            (true, false) => format!("{}*i", self.im),
            (false, false) => format!("({}+{}*i)", self.re, self.im),
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn from_rational(r: &BigRational) -> Self {
                rational_to_f64(r) as $t
            }

            fn to_literal(&self) -> String {
                format!("{}", self)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Nearest `f64` to an exact rational, robust to huge numerators and denominators.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale both parts down to 64 significant bits first.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let nf = (n >> ns as usize).to_f64().unwrap_or(0.0);
    let df = (d >> ds as usize).to_f64().unwrap_or(1.0);
    nf / df * 2f64.powi((ns - ds) as i32)
}

/// Exact rational for a finite float (every finite float is a dyadic rational).
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_float(v)
}

/// Exact rational `p/q`; panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub(crate) fn real_from_f64<F: Real>(v: f64) -> F {
    F::from_f64(v).expect("finite value representable in target float")
}
