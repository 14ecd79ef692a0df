//! Scalar substrate: log-gamma, Pochhammer symbols, principal branches and
//! holomorphic dual numbers.

pub mod complex;
pub mod dual;
pub mod gamma;
pub mod quadrature;

pub use complex::{pow_principal, principal_pow, principal_sqrt, rel_err, BranchedPower};
pub use dual::{DualComplex, GRAD_SLOTS};
pub use gamma::{log_gamma, pochhammer};
