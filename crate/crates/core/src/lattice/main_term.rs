use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LatticeError;
use crate::poly::sphere_average;
use crate::QPoly;

fn pow(r: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * r)
}

fn int(v: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `∫_0^{R+H} f(r) r^{nu+1} dr` for the linear-ramp cutoff.
fn radial_integral(nu: u32, r: &BigRational, h: &BigRational) -> BigRational {
    let outer = r + h;
    let inner = pow(r, nu + 3) / int(nu + 3);
    // On [R, R+H]: f(s) = R(R+H)/H - (R/H) s.
    let slope = r / h;
    let intercept = &slope * &outer;
    let ramp_lin = intercept * (pow(&outer, nu + 2) - pow(r, nu + 2)) / int(nu + 2);
    let ramp_sq = slope * (pow(&outer, nu + 3) - pow(r, nu + 3)) / int(nu + 3);
    inner + ramp_lin - ramp_sq
}

/// `(1/π) ∫_{R^3} P(x) f(|x|)/|x| dx`, exactly.
pub fn main_term(p: &QPoly, r: &BigRational, h: &BigRational) -> Result<BigRational, LatticeError> {
    let nu = p.ensure_homogeneous()?;
    if *r < BigRational::zero() || *h <= BigRational::zero() {
        return Err(LatticeError::InvalidArgument("need R >= 0 and H > 0".into()));
    }
    let avg = sphere_average(p)?;
    if avg.is_zero() {
        return Ok(avg);
    }
    Ok(int(4) * avg * radial_integral(nu, r, h))
}

/// `(1/π) ∫_{|x| <= R} P(x) dx`, the volume term of the sharp ball sum.
pub fn ball_main_term(p: &QPoly, r: &BigRational) -> Result<BigRational, LatticeError> {
    let nu = p.ensure_homogeneous()?;
    Ok(int(4) * sphere_average(p)? * pow(r, nu + 3) / int(nu + 3))
}
