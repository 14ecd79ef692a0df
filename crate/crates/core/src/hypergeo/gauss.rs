use num_complex::Complex;

use super::series::{is_nonpositive_integer, ShellAccumulator, ShellOutcome, TruncationPolicy};
use crate::error::{Error, Result};
use crate::numerics::pochhammer;
use crate::scalar::Real;

/// Gauss ₂F₁(a, b; c; z) by its power series, for `|z| < 1`.
pub fn gauss_2f1<T: Real>(
    a: T,
    b: T,
    c: T,
    z: Complex<T>,
    policy: &TruncationPolicy,
) -> Result<super::SeriesValue<T>> {
    gauss_2f1_truncated(a, b, c, z, policy)?.into_result()
}

/// As [`gauss_2f1`], but returns the partial sum when the degree budget runs out.
pub fn gauss_2f1_truncated<T: Real>(
    a: T,
    b: T,
    c: T,
    z: Complex<T>,
    policy: &TruncationPolicy,
) -> Result<ShellOutcome<T>> {
    if !(z.norm() < T::one()) {
        return Err(Error::Region(format!(
            "2F1 series needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!(
            "2F1 lower parameter c = {c} is a non-positive integer"
        )));
    }
    let mut acc = ShellAccumulator::new(*policy);
    let mut term = Complex::new(T::one(), T::zero());
    let mut m = 0usize;
    while acc.has_budget() {
        if acc.push(term, term.norm()) {
            return Ok(acc.finish(true));
        }
        let mf = T::from_usize_lossy(m);
        term = term * z * ((a + mf) * (b + mf) / ((c + mf) * (mf + T::one())));
        m += 1;
    }
    Ok(acc.finish(false))
}

/// A single ₂F₁ coefficient (a)_m (b)_m / ((c)_m m!), used by tests and reports.
pub fn gauss_coefficient<T: Real>(a: T, b: T, c: T, m: usize) -> T {
    pochhammer(a, m) * pochhammer(b, m) / (pochhammer(c, m) * pochhammer(T::one(), m))
}
