use num_complex::Complex;

use super::series::{
    is_nonpositive_integer, log_table, real_c, sum_shells, SeriesValue, ShellOutcome,
    TruncationPolicy,
};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Σ_m (a)_{2|m|} x₁^{m₁}···x_r^{m_r} / ((c)_{|m|} m₁!···m_r!) for `Σ|x_i| < 1/4`.
///
/// Summed directly by total-degree shells; it equals
/// ₂F₁(a/2, (a+1)/2; c; 4(x₁+...+x_r)), which the verification suite checks.
pub fn lemma21_multisum<T: Real>(
    a: T,
    c: T,
    x: &[Complex<T>],
    policy: &TruncationPolicy,
) -> Result<SeriesValue<T>> {
    lemma21_multisum_truncated(a, c, x, policy)?.into_result()
}

pub fn lemma21_multisum_truncated<T: Real>(
    a: T,
    c: T,
    x: &[Complex<T>],
    policy: &TruncationPolicy,
) -> Result<ShellOutcome<T>> {
    if x.is_empty() {
        return Err(Error::Usage("multisum needs at least one variable".into()));
    }
    let radius = x.iter().fold(T::zero(), |s, xi| s + xi.norm());
    if !(radius < T::lit(0.25)) {
        return Err(Error::Region(format!(
            "multisum needs Σ|x_i| < 1/4, got {radius}"
        )));
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole(format!(
            "lower parameter c = {c} is a non-positive integer"
        )));
    }
    let max = policy.max_total_degree;
    let two = T::lit(2.0);
    let total = log_table(max, |k| {
        let kf = T::from_usize_lossy(k);
        real_c((a + two * kf) * (a + two * kf + T::one()) / (c + kf))
    });
    let per_var: Vec<Vec<Complex<T>>> = x
        .iter()
        .map(|&xi| log_table(max, |k| xi / T::from_usize_lossy(k + 1)))
        .collect();
    Ok(sum_shells(x.len(), policy, |m| {
        let degree: usize = m.iter().sum();
        m.iter()
            .zip(&per_var)
            .fold(total[degree], |acc, (&mi, table)| acc + table[mi])
            .exp()
    }))
}
