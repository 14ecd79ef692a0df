use num_complex::Complex;

use super::{expect_dim, log_factorials, log_powers, KernelMethod, KernelValue};
use crate::domains::PointPair;
use crate::error::{Error, Result};
use crate::hypergeo::{sum_shells, TruncationPolicy};
use crate::scalar::Real;

/// Numerator of the rational closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum D2Form {
    /// 3ν₁⁴ − ν₁³ν₃ − (ν₁²ν₃ + ν₁³)(ν₁² + ν₂), the sum of the monomial series.
    #[default]
    Corrected,
    /// 2ν₁⁴ − (ν₁²ν₃ + ν₁³)(ν₁² + ν₂) as originally typeset.
    AsPrinted,
}

/// N(ν) / (π³ (ν₁ − ν₃)³ (ν₁ − ν₁² − ν₂)³).
pub fn kernel_closed_d2_nu<T: Real>(nu: &[Complex<T>], form: D2Form) -> Result<KernelValue<T>> {
    expect_dim(nu, 3, "D2")?;
    let (n1, n2, n3) = (nu[0], nu[1], nu[2]);
    let tiny = T::lit(1e-300);
    if n1.norm() < tiny {
        return Err(Error::Singular("D2 closed form needs ν₁ ≠ 0".into()));
    }
    let n1_2 = n1 * n1;
    let n1_3 = n1_2 * n1;
    let common = (n1_2 * n3 + n1_3) * (n1_2 + n2);
    let num = match form {
        D2Form::Corrected => n1_3 * n1 * T::lit(3.0) - n1_3 * n3 - common,
        D2Form::AsPrinted => n1_3 * n1 * T::lit(2.0) - common,
    };
    let a = n1 - n3;
    let b = n1 - n1_2 - n2;
    let den = a * a * a * b * b * b * T::PI().powi(3);
    if den.norm() < tiny {
        return Err(Error::Singular(
            "D2 closed-form denominator vanishes".into(),
        ));
    }
    Ok(KernelValue::closed(num / den))
}

pub fn kernel_closed_d2<T: Real>(pair: &PointPair<T>, form: D2Form) -> Result<KernelValue<T>> {
    kernel_closed_d2_nu(&pair.nu(), form)
}

/// Coefficient of ν₁^{k−2} (ν₂/ν₁)^{α₂} (ν₃/ν₁)^{α₃} in the reindexed series:
/// (α₃+1)(k+α₂+α₃+3) Γ(k+α₂+2) / (π³ Γ(α₂+1) Γ(k+1)).
pub fn d2_series_coefficient<T: Real>(k: usize, a2: usize, a3: usize) -> T {
    let lf = log_factorials::<T>(k + a2 + 1);
    let f = T::from_usize_lossy;
    let log = lf[k + a2 + 1] - lf[a2] - lf[k];
    f(a3 + 1) * f(k + a2 + a3 + 3) * log.exp() / T::PI().powi(3)
}

/// Laurent series of the kernel, reindexed by `α₁ = k − 2 − α₂ − α₃` and
/// summed over total-degree shells in `(k, α₂, α₃)`.
pub fn kernel_series_d2_nu<T: Real>(
    nu: &[Complex<T>],
    policy: &TruncationPolicy,
) -> Result<KernelValue<T>> {
    expect_dim(nu, 3, "D2")?;
    let n1 = nu[0];
    if n1.norm() == T::zero() {
        return Err(Error::Usage("the D2 series needs ν₁ ≠ 0".into()));
    }
    let x2 = nu[1] / n1;
    let x3 = nu[2] / n1;
    if !(x3.norm() < T::one()) || !(n1.norm() + x2.norm() < T::one()) {
        return Err(Error::Region(format!(
            "D2 series needs |ν₃/ν₁| < 1 and |ν₁| + |ν₂/ν₁| < 1, got {} and {}",
            x3.norm(),
            n1.norm() + x2.norm()
        )));
    }
    let max = policy.max_total_degree;
    let lf = log_factorials::<T>(2 * max + 2);
    let pow1 = log_powers(n1, max);
    let pow2 = log_powers(x2, max);
    let pow3 = log_powers(x3, max);
    let f = T::from_usize_lossy;
    let outcome = sum_shells(3, policy, |m| {
        let (k, a2, a3) = (m[0], m[1], m[2]);
        let real = (f(a3 + 1) * f(k + a2 + a3 + 3)).ln() + lf[k + a2 + 1] - lf[a2] - lf[k];
        (pow1[k] + pow2[a2] + pow3[a3] + real).exp()
    });
    let series = outcome.into_result()?;
    let scale = (n1 * n1 * T::PI().powi(3)).inv();
    Ok(KernelValue {
        value: series.value * scale,
        method: KernelMethod::Series,
        tail_estimate: Some(series.tail_estimate * scale.norm()),
        shells_used: Some(series.shells_used),
    })
}

pub fn kernel_series_d2<T: Real>(
    pair: &PointPair<T>,
    policy: &TruncationPolicy,
) -> Result<KernelValue<T>> {
    kernel_series_d2_nu(&pair.nu(), policy)
}
