//! Lauricella/Appell F_A^{(n)} series and the identities built on it.

use num_complex::Complex;

use super::gauss::gauss_2f1;
use super::series::{
    is_nonpositive_integer, log_table, real_c, sum_shells, SeriesValue, ShellOutcome,
    TruncationPolicy,
};
use crate::error::{Error, Result};
use crate::numerics::pow_principal;
use crate::scalar::Real;

fn check_lower_params<T: Real>(c: &[T]) -> Result<()> {
    match c.iter().find(|&&ci| is_nonpositive_integer(ci)) {
        Some(ci) => Err(Error::Pole(format!(
            "lower parameter {ci} is a non-positive integer"
        ))),
        None => Ok(()),
    }
}

/// F_A^{(n)}(a; b; c; z) = Σ_m (a)_{|m|} Π (b_i)_{m_i} / ((c_i)_{m_i} m_i!) z_i^{m_i}.
///
/// Requires `Σ|z_i| < 1`.
pub fn appell_fa<T: Real>(
    a: T,
    b: &[T],
    c: &[T],
    z: &[Complex<T>],
    policy: &TruncationPolicy,
) -> Result<SeriesValue<T>> {
    appell_fa_truncated(a, b, c, z, policy)?.into_result()
}

pub fn appell_fa_truncated<T: Real>(
    a: T,
    b: &[T],
    c: &[T],
    z: &[Complex<T>],
    policy: &TruncationPolicy,
) -> Result<ShellOutcome<T>> {
    let n = z.len();
    if n == 0 || b.len() != n || c.len() != n {
        return Err(Error::Usage(format!(
            "F_A needs matching nonempty b, c, z (got {}, {}, {})",
            b.len(),
            c.len(),
            n
        )));
    }
    let radius = z.iter().fold(T::zero(), |s, zi| s + zi.norm());
    if !(radius < T::one()) {
        return Err(Error::Region(format!(
            "F_A series needs Σ|z_i| < 1, got {radius}"
        )));
    }
    check_lower_params(c)?;

    let max = policy.max_total_degree;
    let total = log_table(max, |k| real_c(a + T::from_usize_lossy(k)));
    let per_var: Vec<Vec<Complex<T>>> = (0..n)
        .map(|i| {
            log_table(max, |k| {
                let kf = T::from_usize_lossy(k);
                z[i] * ((b[i] + kf) / ((c[i] + kf) * (kf + T::one())))
            })
        })
        .collect();

    Ok(sum_shells(n, policy, |m| {
        let degree: usize = m.iter().sum();
        let log = m
            .iter()
            .zip(&per_var)
            .fold(total[degree], |acc, (&mi, table)| acc + table[mi]);
        log.exp()
    }))
}

/// (1 − z₁ − ... − z_n)^{−a}, the value of F_A when every b_i equals c_i.
pub fn fa_equal_params_closed<T: Real>(a: T, z: &[Complex<T>]) -> Result<Complex<T>> {
    let w = z.iter().fold(real_c(T::one()), |acc, zi| acc - zi);
    if w.norm() < T::lit(1e-300) {
        return Err(Error::Singular("1 − Σz vanishes".into()));
    }
    pow_principal(w, -a)
}

/// Right-hand side of the F_A decomposition with b_i = c_i for i ≥ 2:
///
/// Σ_{m₂..m_r} (a)_{|m|} (b₁)_{|m|} / ((c₁)_{|m|} m₂!···m_r!) y₁^{|m|} y₂^{m₂}···y_r^{m_r}
///   · ₂F₁(a+|m|, b₁+|m|; c₁+|m|; y₁) · (1 − y₂ − ... − y_r)^{−(a+|m|)}.
///
/// The outer sum runs by total degree of (m₂, ..., m_r); each inner ₂F₁ is
/// summed with the same policy.
pub fn fa_decomposition_rhs<T: Real>(
    a: T,
    b1: T,
    c1: T,
    y: &[Complex<T>],
    policy: &TruncationPolicy,
) -> Result<SeriesValue<T>> {
    let r = y.len();
    if r == 0 {
        return Err(Error::Usage(
            "decomposition needs at least one variable".into(),
        ));
    }
    let y1 = y[0];
    let rest = &y[1..];
    if !(y1.norm() < T::one()) {
        return Err(Error::Region(format!(
            "decomposition needs |y₁| < 1, got {}",
            y1.norm()
        )));
    }
    let rest_radius = rest.iter().fold(T::zero(), |s, yi| s + yi.norm());
    if !(rest_radius < T::one()) {
        return Err(Error::Region(format!(
            "decomposition needs Σ_{{i≥2}}|y_i| < 1, got {rest_radius}"
        )));
    }
    check_lower_params(&[c1])?;
    let w = rest.iter().fold(real_c(T::one()), |acc, yi| acc - yi);
    let w_pow = pow_principal(w, -a)?;

    let max = policy.max_total_degree;
    let total = log_table(max, |k| {
        let kf = T::from_usize_lossy(k);
        y1 * ((a + kf) * (b1 + kf) / (c1 + kf)) / w
    });
    let per_var: Vec<Vec<Complex<T>>> = rest
        .iter()
        .map(|&yi| log_table(max, |k| yi / T::from_usize_lossy(k + 1)))
        .collect();

    let mut inner: Vec<Complex<T>> = Vec::new();
    let mut failure: Option<Error> = None;
    let outcome = sum_shells(r - 1, policy, |m| {
        let degree: usize = m.iter().sum();
        while inner.len() <= degree && failure.is_none() {
            let d = T::from_usize_lossy(inner.len());
            match gauss_2f1(a + d, b1 + d, c1 + d, y1, policy) {
                Ok(v) => inner.push(v.value),
                Err(e) => failure = Some(e),
            }
        }
        if failure.is_some() {
            return real_c(T::zero());
        }
        let log = m
            .iter()
            .zip(&per_var)
            .fold(total[degree], |acc, (&mi, table)| acc + table[mi]);
        log.exp() * inner[degree]
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let mut series = outcome.into_result()?;
    series.value = series.value * w_pow;
    series.tail_estimate = series.tail_estimate * w_pow.norm();
    Ok(series)
}
