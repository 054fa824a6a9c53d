//! Polynomials in three variables over an arbitrary [`Scalar`] field.
//!
//! Terms are kept in a `BTreeMap` keyed by the exponent triple, so iteration
//! (and therefore serialization) is lexicographic on `(i, j, k)`. Zero
//! coefficients are never stored.

mod harmonic;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{parse_rational, Scalar};

pub use harmonic::{harmonic_decompose, sphere_average, HarmonicDecomposition};
pub use parse::{parse_poly, parse_poly_with_cap, DEFAULT_DEGREE_CAP};

/// Exponent triple `(i, j, k)` of the monomial `x^i y^j z^k`.
pub type Exponents = [u32; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial has non-real coefficients")]
    NotReal,
    #[error("malformed serialized polynomial on line {line}: {msg}")]
    Serialized { line: usize, msg: String },
}

#[derive(Clone, PartialEq)]
pub struct Polynomial3<T: Scalar> {
    terms: BTreeMap<Exponents, T>,
}

impl<T: Scalar> Default for Polynomial3<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> Polynomial3<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: T, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, c);
        p
    }

    /// The coordinate polynomial `x`, `y` or `z` for `axis` 0, 1, 2.
    pub fn variable(axis: usize) -> Self {
        let mut e = [0; 3];
        e[axis] = 1;
        Self::monomial(T::one(), e)
    }

    /// `|x|^2 = x^2 + y^2 + z^2`.
    pub fn norm_sq() -> Self {
        let mut p = Self::zero();
        for axis in 0..3 {
            let mut e = [0; 3];
            e[axis] = 2;
            p.add_term(e, T::one());
        }
        p
    }

    /// `|x|^{2d}`.
    pub fn norm_sq_pow(d: u32) -> Self {
        Self::norm_sq().pow(d)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &T)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: Exponents) -> T {
        self.terms.get(&exps).cloned().unwrap_or_else(T::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            Some(first) => degrees.all(|d| d == first),
            None => true,
        }
    }

    pub fn ensure_homogeneous(&self) -> Result<u32, PolyError> {
        if self.is_homogeneous() {
            Ok(self.degree())
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v.clone() * c.clone())))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::constant(T::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Partial derivative along `axis`.
    pub fn partial(&self, axis: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[axis] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[axis] -= 1;
            out.add_term(ne, c.clone() * T::from_int(e[axis] as i64));
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            for axis in 0..3 {
                let k = e[axis];
                if k < 2 {
                    continue;
                }
                let mut ne = *e;
                ne[axis] -= 2;
                out.add_term(ne, c.clone() * T::from_int((k * (k - 1)) as i64));
            }
        }
        out
    }

    pub fn is_harmonic(&self) -> bool {
        self.laplacian().is_zero()
    }

    /// True when no monomial with an odd exponent appears.
    pub fn is_octahedrally_even(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|k| k % 2 == 0))
    }

    pub fn eval(&self, point: [T; 3]) -> T {
        let mut acc = T::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for axis in 0..3 {
                for _ in 0..e[axis] {
                    term = term * point[axis].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial3<U> {
        Polynomial3::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Canonical line format: `coef i j k` per term, lexicographic order.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            out.push_str(&format!("{} {} {} {}\n", c.to_literal(), e[0], e[1], e[2]));
        }
        out
    }
}

impl Polynomial3<BigRational> {
    /// Embeds a rational polynomial into the Gaussian rationals.
    pub fn to_gaussian(&self) -> Polynomial3<Complex<BigRational>> {
        self.map(|c| Complex::new(c.clone(), BigRational::zero()))
    }

    pub fn to_f64(&self) -> Polynomial3<f64> {
        self.map(crate::scalar::rational_to_f64)
    }

    pub fn eval_i64(&self, p: [i64; 3]) -> BigRational {
        self.eval(p.map(|v| BigRational::from_integer(v.into())))
    }

    pub fn from_canonical(text: &str) -> Result<Self, PolyError> {
        let mut p = Self::zero();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| PolyError::Serialized { line: idx + 1, msg: msg.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(err("expected `coef i j k`"));
            }
            let c = parse_rational(fields[0]).ok_or_else(|| err("bad coefficient"))?;
            let mut e = [0u32; 3];
            for axis in 0..3 {
                e[axis] = fields[axis + 1].parse().map_err(|_| err("bad exponent"))?;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Polynomial3<Complex<BigRational>> {
    /// Real part, failing if any coefficient has a non-zero imaginary part.
    pub fn to_real(&self) -> Result<Polynomial3<BigRational>, PolyError> {
        if self.terms.values().any(|c| !c.im.is_zero()) {
            return Err(PolyError::NotReal);
        }
        Ok(self.map(|c| c.re.clone()))
    }
}

impl<T: Scalar> fmt::Debug for Polynomial3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial3({})", self)
    }
}

/// Expression form accepted by [`parse_poly`].
impl<T: Scalar> fmt::Display for Polynomial3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c.to_literal())?;
            for (axis, name) in ["x", "y", "z"].iter().enumerate() {
                match e[axis] {
                    0 => {}
                    1 => write!(f, "*{}", name)?,
                    k => write!(f, "*{}^{}", name, k)?,
                }
            }
        }
        Ok(())
    }
}

impl<T: Scalar> One for Polynomial3<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Scalar> std::ops::Mul for Polynomial3<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Polynomial3::mul(&self, &rhs)
    }
}

/// The harmonic quartic `5(x^4+y^4+z^4) - 3|x|^4` used throughout the tests.
pub fn harmonic_quartic() -> Polynomial3<BigRational> {
    parse_poly("5*(x^4+y^4+z^4)-3*(x^2+y^2+z^2)^2")
        .and_then(|p| p.to_real())
        .expect("built-in polynomial parses")
}

/// A harmonic sextic: `Re (x + i y)^6`, i.e. `x^6 - 15x^4y^2 + 15x^2y^4 - y^6`.
pub fn harmonic_sextic() -> Polynomial3<BigRational> {
    parse_poly("x^6-15*x^4*y^2+15*x^2*y^4-y^6")
        .and_then(|p| p.to_real())
        .expect("built-in polynomial parses")
}

/// A harmonic sextic with the symmetries of the cube, so its theta series does not vanish:
/// `2(x^6+y^6+z^6) - 15(x^4y^2 + x^4z^2 + y^4x^2 + y^4z^2 + z^4x^2 + z^4y^2) + 180x^2y^2z^2`.
pub fn octahedral_sextic() -> Polynomial3<BigRational> {
    parse_poly(
        "2*(x^6+y^6+z^6) - 15*(x^4*y^2+x^4*z^2+y^4*x^2+y^4*z^2+z^4*x^2+z^4*y^2) + 180*x^2*y^2*z^2",
    )
    .and_then(|p| p.to_real())
    .expect("built-in polynomial parses")
}
