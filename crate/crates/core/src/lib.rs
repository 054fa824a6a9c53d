//! Lattice sums of homogeneous polynomials over spheres in `Z^3`.

pub mod experiments;
pub mod exppair;
pub mod fit;
pub mod lattice;
pub mod modular;
pub mod poly;
pub mod scalar;
pub mod specsum;
pub mod summation;

use num_complex::Complex;
use num_rational::BigRational;

pub use poly::{parse_poly, Polynomial3};
pub use scalar::{OrderedScalar, Real, Scalar};

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;
pub type QPoly = Polynomial3<Rational>;
pub type GPoly = Polynomial3<GaussianRational>;
pub type FPoly = Polynomial3<f64>;
