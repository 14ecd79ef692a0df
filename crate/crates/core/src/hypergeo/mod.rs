//! Gauss and Appell hypergeometric series, plus the closed forms and
//! identities the kernel derivations rely on.

pub mod appell;
pub mod closed;
pub mod gauss;
pub mod multisum;
pub mod series;

pub use appell::{appell_fa, appell_fa_truncated, fa_decomposition_rhs, fa_equal_params_closed};
pub use closed::{
    closed_2f1_family, contiguous_relation_check, Closed2F1, ClosedForm, RelationForm,
};
pub use gauss::{gauss_2f1, gauss_2f1_truncated};
pub use multisum::{lemma21_multisum, lemma21_multisum_truncated};
pub use series::{sum_shells, SeriesValue, ShellOutcome, TruncationPolicy};
