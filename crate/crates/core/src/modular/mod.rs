//! Theta series of harmonic polynomials as modular forms on `Γ0(4)`:
//! group elements, the half-integral-weight automorphy factor, and Gauss sums.

mod theta;

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

pub use theta::{
    sample_check, sample_gamma, sample_point, theta_eval, transformation_check, ThetaContext, ThetaValue,
    TransformationReport, DEFAULT_N_CAP, DEFAULT_Y_MIN, THETA_FLOOR,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModularError {
    #[error("not an element of Γ0(4): {0}")]
    NotGamma0(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("d = {0} must be odd")]
    EvenModulus(i64),
    #[error("outside the closed-form regime (need 4 | c, d odd, gcd(c, d) = 1): c = {c}, d = {d}")]
    OutsideRegime { c: i64, d: i64 },
    #[error("Im z = {im} is below the minimum {y_min}")]
    TooCloseToAxis { im: f64, y_min: f64 },
    #[error("Im z = {im} needs {needed} coefficients but only {cap} are available")]
    CapExceeded { im: f64, needed: u64, cap: u64 },
    #[error("theta series needs a harmonic polynomial: {0}")]
    NotHarmonic(String),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// `(a b; c d)` with `ad - bc = 1` and `4 | c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GammaElement {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl GammaElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ModularError> {
        let g = Self { a, b, c, d };
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 || c % 4 != 0 {
            return Err(ModularError::NotGamma0(g.to_string()));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    /// `T^k = (1 k; 0 1)`.
    pub fn translation(k: i64) -> Self {
        Self { a: 1, b: k, c: 0, d: 1 }
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Möbius action `(az + b)/(cz + d)`.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a as f64 + self.b as f64) / (z * self.c as f64 + self.d as f64)
    }

    pub fn to_array(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl fmt::Display for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

/// Completes `(c, d)` to an element of `Γ0(4)`, choosing `0 <= a < |c|` when `c != 0`.
pub fn gamma0_4_from_cd(c: i64, d: i64) -> Result<GammaElement, ModularError> {
    if c % 4 != 0 {
        return Err(ModularError::NotGamma0(format!("c = {c} is not divisible by 4")));
    }
    if c == 0 {
        return match d {
            1 | -1 => GammaElement::new(d, 0, 0, d),
            _ => Err(ModularError::NotCoprime(c, d)),
        };
    }
    let ext = d.extended_gcd(&c);
    if ext.gcd.abs() != 1 {
        return Err(ModularError::NotCoprime(c, d));
    }
    // ext.x * d + ext.y * c = gcd = ±1, so a = ±x is an inverse of d mod |c|.
    let a = (ext.x * ext.gcd).rem_euclid(c.abs());
    let b = (a * d - 1) / c;
    GammaElement::new(a, b, c, d)
}

/// `ε_d`: 1 for `d ≡ 1 (mod 4)`, `i` for `d ≡ 3 (mod 4)`.
pub fn epsilon_d(d: i64) -> Result<Complex64, ModularError> {
    match d.rem_euclid(4) {
        1 => Ok(Complex64::new(1.0, 0.0)),
        3 => Ok(Complex64::new(0.0, 1.0)),
        _ => Err(ModularError::EvenModulus(d)),
    }
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
pub fn jacobi(a: i64, n: i64) -> i8 {
    assert!(n > 0 && n % 2 == 1, "Jacobi symbol needs odd n > 0");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// How `(c/d)` is extended to negative `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolConvention {
    /// `(c/d) = (c/|d|)` for `c > 0` and `-(c/|d|)` for `c < 0`.
    #[default]
    Shimura,
    /// `(c/d) = (c/|d|)` regardless of signs; kept for comparison only.
    Plain,
}

/// The quadratic symbol `(c/d)` for odd `d`, extended to negative `d`.
pub fn shimura_legendre(c: i64, d: i64) -> Result<i8, ModularError> {
    symbol_with(c, d, SymbolConvention::Shimura)
}

pub fn symbol_with(c: i64, d: i64, convention: SymbolConvention) -> Result<i8, ModularError> {
    if d % 2 == 0 {
        return Err(ModularError::EvenModulus(d));
    }
    if c.gcd(&d) != 1 && d.abs() != 1 {
        return Err(ModularError::NotCoprime(c, d));
    }
    let base = if d.abs() == 1 { 1 } else { jacobi(c, d.abs()) };
    Ok(match convention {
        SymbolConvention::Shimura if d < 0 && c < 0 => -base,
        _ => base,
    })
}

/// `j(γ, z) = (c/d) ε_d^{-1} (cz + d)^{1/2}`, principal branch.
pub fn automorphy_j(gamma: &GammaElement, z: Complex64) -> Result<Complex64, ModularError> {
    automorphy_j_with(gamma, z, SymbolConvention::Shimura)
}

pub fn automorphy_j_with(
    gamma: &GammaElement,
    z: Complex64,
    convention: SymbolConvention,
) -> Result<Complex64, ModularError> {
    let symbol = symbol_with(gamma.c, gamma.d, convention)? as f64;
    let eps = epsilon_d(gamma.d)?;
    let w = z * gamma.c as f64 + gamma.d as f64;
    Ok(symbol / eps * (0.5 * w.ln()).exp())
}

/// `e(t) = exp(2πit)` for rational `t = num/den`, reducing `num` modulo `den` first.
fn e_ratio(num: i64, den: i64) -> Complex64 {
    let r = num.rem_euclid(den.abs()) as f64 / den.abs() as f64;
    let r = if den < 0 { -r } else { r };
    Complex64::from_polar(1.0, std::f64::consts::TAU * r)
}

/// `Σ_{m mod c} e(d m² / c)` by direct summation.
pub fn gauss_sum_direct(d: i64, c: i64) -> Complex64 {
    assert!(c != 0, "modulus must be non-zero");
    (0..c.abs()).map(|m| e_ratio(d * m * m, c)).sum()
}

/// The closed form of [`gauss_sum_direct`] for `4 | c`, `d` odd, `gcd(c, d) = 1`.
pub fn gauss_sum_closed(d: i64, c: i64) -> Result<Complex64, ModularError> {
    if c == 0 || c % 4 != 0 || d % 2 == 0 || c.gcd(&d) != 1 {
        return Err(ModularError::OutsideRegime { c, d });
    }
    let one_plus_i = Complex64::new(1.0, 1.0);
    let one_minus_i = Complex64::new(1.0, -1.0);
    let root = (c.abs() as f64).sqrt();
    let value = match (c > 0, d > 0) {
        (true, true) => one_plus_i / epsilon_d(d)? * root * jacobi(c, d) as f64,
        (true, false) => one_minus_i * epsilon_d(-d)? * root * jacobi(c, -d) as f64,
        (false, true) => one_minus_i * epsilon_d(d)? * root * jacobi(-c, d) as f64,
        (false, false) => one_plus_i / epsilon_d(-d)? * root * jacobi(-c, -d) as f64,
    };
    Ok(value)
}

/// `S(ξ, d, c) = Σ_{m mod c} e(d(m² + mξ)/c)` by direct summation.
pub fn quadratic_sum_s(xi: i64, d: i64, c: i64) -> Result<Complex64, ModularError> {
    if c == 0 || c % 4 != 0 {
        return Err(ModularError::OutsideRegime { c, d });
    }
    if c.gcd(&d) != 1 {
        return Err(ModularError::NotCoprime(c, d));
    }
    Ok((0..c.abs()).map(|m| e_ratio(d * (m * m + m * xi), c)).sum())
}
