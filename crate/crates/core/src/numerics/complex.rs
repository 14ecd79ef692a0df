//! Principal-branch roots and powers.
//!
//! Every branch-dependent factor in the closed forms is evaluated here. Powers
//! with a non-integer exponent demand `Re(base) > 0`, which holds throughout
//! the convergence regions the kernels and closed forms are used in.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Principal square root, argument of the result in (−π/2, π/2].
///
/// The negative real axis maps to the positive imaginary axis regardless of
/// the sign of a zero imaginary part.
pub fn principal_sqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let (re, im) = (z.re, z.im);
    if re == T::zero() && im == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let two = T::lit(2.0);
    let t = ((z.norm() + re.abs()) / two).sqrt();
    if re >= T::zero() {
        Complex::new(t, im / (two * t))
    } else {
        let imag = if im < T::zero() { -t } else { t };
        Complex::new(im.abs() / (two * t), imag)
    }
}

/// A base/exponent pair evaluated on the principal branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchedPower<T> {
    pub base: Complex<T>,
    pub exponent: T,
}

impl<T: Real> BranchedPower<T> {
    pub fn new(base: Complex<T>, exponent: T) -> Self {
        Self { base, exponent }
    }

    pub fn eval(&self) -> Result<Complex<T>> {
        principal_pow(self)
    }
}

/// `base^exponent = exp(exponent · Log(base))` on the principal branch.
pub fn principal_pow<T: Real>(power: &BranchedPower<T>) -> Result<Complex<T>> {
    pow_principal(power.base, power.exponent)
}

/// Same as [`principal_pow`] without building a [`BranchedPower`].
pub fn pow_principal<T: Real>(base: Complex<T>, exponent: T) -> Result<Complex<T>> {
    if !(base.re > T::zero()) {
        return Err(Error::Branch(format!(
            "principal power needs Re(base) > 0, got {}{:+}i",
            base.re, base.im
        )));
    }
    if exponent == T::zero() {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    if exponent == T::one() {
        return Ok(base);
    }
    Ok((base.ln() * exponent).exp())
}

/// Relative distance `|a - b| / |b|`, falling back to `|a - b|` for tiny `|b|`.
pub fn rel_err<T: Real>(a: Complex<T>, b: Complex<T>) -> T {
    let diff = (a - b).norm();
    let scale = b.norm();
    if scale < T::lit(1e-12) {
        diff
    } else {
        diff / scale
    }
}
