//! Bergman kernels of D1, D2 and the complex ellipsoids, by closed form and
//! by truncated orthonormal series.

pub mod d1;
pub mod d2;
pub mod ellipsoid;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use d1::{
    d1_series_coefficient, g_closed_d1, g_closed_d1_printed, g_series_d1, kernel_closed_d1,
    kernel_closed_d1_nu, kernel_series_d1, kernel_series_d1_nu, D1Intermediates, OperatorWeights,
};
pub use d2::{
    d2_series_coefficient, kernel_closed_d2, kernel_closed_d2_nu, kernel_series_d2,
    kernel_series_d2_nu, D2Form,
};
pub use ellipsoid::{kernel_series_ellipsoid, kernel_series_ellipsoid_nu};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelMethod {
    Closed,
    Series,
}

impl KernelMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Closed => "closed",
            Self::Series => "series",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue<T> {
    pub value: Complex<T>,
    pub method: KernelMethod,
    /// Magnitude of the last summed shell; `None` for closed forms.
    pub tail_estimate: Option<T>,
    pub shells_used: Option<usize>,
}

impl<T: Real> KernelValue<T> {
    pub(crate) fn closed(value: Complex<T>) -> Self {
        Self {
            value,
            method: KernelMethod::Closed,
            tail_estimate: None,
            shells_used: None,
        }
    }
}

/// `ln(n!)` for `n = 0..=len`, as exact cumulative sums of logarithms.
pub(crate) fn log_factorials<T: Real>(len: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(len + 1);
    let mut acc = T::zero();
    out.push(acc);
    for n in 1..=len {
        acc = acc + T::from_usize_lossy(n).ln();
        out.push(acc);
    }
    out
}

/// `k·ln(x)` for `k = 0..=len`; a zero base gives `0` at `k = 0` and `-inf` after.
pub(crate) fn log_powers<T: Real>(x: Complex<T>, len: usize) -> Vec<Complex<T>> {
    let lx = x.ln();
    (0..=len)
        .map(|k| {
            if k == 0 {
                Complex::new(T::zero(), T::zero())
            } else {
                lx * T::from_usize_lossy(k)
            }
        })
        .collect()
}

pub(crate) fn expect_dim<T>(nu: &[Complex<T>], n: usize, what: &str) -> Result<()> {
    if nu.len() != n {
        return Err(Error::Usage(format!(
            "{what} needs {n} ν components, got {}",
            nu.len()
        )));
    }
    Ok(())
}
