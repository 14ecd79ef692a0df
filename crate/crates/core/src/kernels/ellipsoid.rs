use num_complex::Complex;

use super::{KernelMethod, KernelValue};
use crate::domains::PointPair;
use crate::error::{Error, Result};
use crate::hypergeo::{appell_fa, TruncationPolicy};
use crate::numerics::log_gamma;
use crate::scalar::Real;

fn integer_exponents<T: Real>(p: &[T]) -> Result<Vec<usize>> {
    if p.is_empty() {
        return Err(Error::Usage("ellipsoid needs at least one exponent".into()));
    }
    p.iter()
        .map(|&pj| {
            if pj >= T::one() && pj == pj.round() {
                pj.to_usize()
                    .ok_or_else(|| Error::Usage(format!("exponent {pj} is too large")))
            } else {
                Err(Error::Usage(format!(
                    "ellipsoid series needs positive integer exponents, got {pj}"
                )))
            }
        })
        .collect()
}

/// Kernel of `{Σ|z_j|^{2p_j} < 1}` for positive integer `p_j`:
///
/// K = (Πp_j/πⁿ) Σ_{0 ≤ k_j < p_j} Γ(1+Σ(k_j+1)/p_j) / ΠΓ((k_j+1)/p_j) · ν^k
///       · F_A(1+Σ(k_j+1)/p_j; 1,…,1; (k+1)/p; ν^p).
pub fn kernel_series_ellipsoid_nu<T: Real>(
    nu: &[Complex<T>],
    p: &[T],
    policy: &TruncationPolicy,
) -> Result<KernelValue<T>> {
    let ints = integer_exponents(p)?;
    if nu.len() != ints.len() {
        return Err(Error::Usage(format!(
            "{} exponents but {} ν components",
            ints.len(),
            nu.len()
        )));
    }
    let n = ints.len();
    let nu_p: Vec<Complex<T>> = nu
        .iter()
        .zip(&ints)
        .map(|(v, &pj)| v.powi(pj as i32))
        .collect();
    let prefactor = p.iter().fold(T::one(), |acc, &pj| acc * pj) / T::PI().powi(n as i32);
    let ones = vec![T::one(); n];

    let mut total = Complex::new(T::zero(), T::zero());
    let mut tail = T::zero();
    let mut shells = 0;
    let mut k = vec![0usize; n];
    loop {
        let lower: Vec<T> = k
            .iter()
            .zip(p)
            .map(|(&kj, &pj)| T::from_usize_lossy(kj + 1) / pj)
            .collect();
        let upper = lower.iter().fold(T::one(), |acc, &c| acc + c);
        let mut log_coef = log_gamma(upper)?;
        for &c in &lower {
            log_coef = log_coef - log_gamma(c)?;
        }
        let monomial = nu
            .iter()
            .zip(&k)
            .fold(Complex::new(T::one(), T::zero()), |acc, (v, &kj)| {
                acc * v.powi(kj as i32)
            });
        let fa = appell_fa(upper, &ones, &lower, &nu_p, policy)?;
        let weight = monomial * log_coef.exp();
        total = total + weight * fa.value;
        tail = tail + weight.norm() * fa.tail_estimate;
        shells = shells.max(fa.shells_used);

        let mut j = 0;
        while j < n {
            k[j] += 1;
            if k[j] < ints[j] {
                break;
            }
            k[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    Ok(KernelValue {
        value: total * prefactor,
        method: KernelMethod::Series,
        tail_estimate: Some(tail * prefactor),
        shells_used: Some(shells),
    })
}

pub fn kernel_series_ellipsoid<T: Real>(
    pair: &PointPair<T>,
    p: &[T],
    policy: &TruncationPolicy,
) -> Result<KernelValue<T>> {
    kernel_series_ellipsoid_nu(&pair.nu(), p, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rel_err;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::new(600, 1e-14).unwrap()
    }

    #[test]
    fn unit_ball() {
        let zero = [C::new(0.0, 0.0); 2];
        let k = kernel_series_ellipsoid_nu(&zero, &[1.0, 1.0], &policy()).unwrap();
        assert!(rel_err(k.value, C::new(2.0 / (PI * PI), 0.0)) < 1e-15);
        let nu = [C::new(0.3, 0.1), C::new(-0.2, 0.25)];
        let k = kernel_series_ellipsoid_nu(&nu, &[1.0, 1.0], &policy()).unwrap();
        let expected = (C::new(1.0, 0.0) - nu[0] - nu[1]).powi(-3) * (2.0 / (PI * PI));
        assert!(rel_err(k.value, expected) < 1e-12);
    }

    /// Direct monomial sum with norms π^n ΠΓ((α_j+1)/p_j) / (Πp_j Γ(1+Σ(α_j+1)/p_j)).
    fn brute(nu: &[C], p: &[f64], degree: usize) -> C {
        let mut total = C::new(0.0, 0.0);
        for a0 in 0..=degree {
            for a1 in 0..=degree - a0 {
                let alpha = [a0, a1];
                let mut log_norm = 2.0 * PI.ln() - (p[0] * p[1]).ln();
                let mut sum = 1.0;
                for (j, &a) in alpha.iter().enumerate() {
                    let x = (a as f64 + 1.0) / p[j];
                    log_norm += log_gamma(x).unwrap();
                    sum += x;
                }
                log_norm -= log_gamma(sum).unwrap();
                total += nu[0].powi(a0 as i32) * nu[1].powi(a1 as i32) / log_norm.exp();
            }
        }
        total
    }

    #[test]
    fn integer_exponents_match_monomial_sum() {
        let nu = [C::new(0.3, -0.1), C::new(0.2, 0.2)];
        for p in [[2.0, 1.0], [2.0, 3.0]] {
            let k = kernel_series_ellipsoid_nu(&nu, &p, &policy()).unwrap();
            assert!(rel_err(k.value, brute(&nu, &p, 200)) < 1e-11, "{p:?}");
        }
    }

    #[test]
    fn rejects_fractional_exponents() {
        let nu = [C::new(0.1, 0.0); 2];
        assert!(matches!(
            kernel_series_ellipsoid_nu(&nu, &[1.5, 1.0], &policy()),
            Err(Error::Usage(_))
        ));
        assert!(kernel_series_ellipsoid_nu(&nu, &[1.0], &policy()).is_err());
    }
}
