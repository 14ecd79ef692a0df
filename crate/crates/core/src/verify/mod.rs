//! Seeded verification sweeps producing structured pass/fail reports.

pub mod identities;
pub mod kernel_suite;
pub mod norm_suite;
pub mod report;

pub use identities::{verify_identities, IdentityOptions};
pub use kernel_suite::{
    ball_kernel, d2_spot_value, monomial_series_ellipsoid, verify_kernels, KernelForm,
    KernelOptions,
};
pub use norm_suite::{verify_norms, NormOptions, D1_LAMBDA_GRID, D1_P_GRID};
pub use report::{ComplexRecord, ReportRow, Summary, VerificationReport};
