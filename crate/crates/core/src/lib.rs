//! Bergman kernels of two Reinhardt domains and of complex ellipsoids,
//! evaluated by closed form and by orthonormal series, together with the
//! hypergeometric identities behind the closed forms.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix `f64`, which the verification suites use throughout.

// `!(x < y)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod domains;
pub mod error;
pub mod hypergeo;
pub mod kernels;
pub mod norms;
pub mod numerics;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::{Complex, Complex64};

pub type Dual = numerics::DualComplex<f64>;
pub type Domain = domains::DomainSpec<f64>;
pub type Pair = domains::PointPair<f64>;
pub type Series = hypergeo::SeriesValue<f64>;
pub type Kernel = kernels::KernelValue<f64>;
