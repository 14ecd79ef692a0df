//! Squared L² norms of monomials on D1 and D2, and a quadrature oracle for them.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::numerics::log_gamma;
use crate::numerics::quadrature::{integrate, QuadratureOptions};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn new(alpha: Vec<i64>) -> Self {
        Self(alpha)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// D2 admits `α₂, α₃ ≥ 0` and `α₁ ≥ −2 − α₂ − α₃`; D1 all `α_j ≥ 0`.
    pub fn check_admissible<T: Real>(&self, spec: &DomainSpec<T>) -> Result<()> {
        let a = &self.0;
        let ok = match spec {
            DomainSpec::D2 => a.len() == 3 && a[1] >= 0 && a[2] >= 0 && a[0] >= -2 - a[1] - a[2],
            DomainSpec::D1 { .. } => a.len() == 4 && a.iter().all(|&x| x >= 0),
            DomainSpec::Ellipsoid { .. } => {
                return Err(Error::Usage(
                    "monomial norms are only provided for d1 and d2".into(),
                ))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "index {a:?} is not admissible on {}",
                spec.name()
            )))
        }
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn lit<T: Real>(x: i64) -> T {
    T::lit(x as f64)
}

/// `s = (α₁+α₂+2)/p + α₃ + (α₄+1)/λ + 1` for a D1 index.
pub fn d1_s<T: Real>(alpha: &[i64], p: T, lambda: T) -> T {
    lit::<T>(alpha[0] + alpha[1] + 2) / p
        + lit(alpha[2])
        + lit::<T>(alpha[3] + 1) / lambda
        + T::one()
}

/// `(2α₁+2α₂+4)/p + α₃ + (2α₄+2)/λ + 1` for a D1 index.
pub fn d1_gamma_arg<T: Real>(alpha: &[i64], p: T, lambda: T) -> T {
    lit::<T>(2 * (alpha[0] + alpha[1]) + 4) / p
        + lit(alpha[2])
        + lit::<T>(2 * alpha[3] + 2) / lambda
        + T::one()
}

/// ‖z^α‖² on D2:
/// π³ Γ(α₂+1) Γ(α₁+α₂+α₃+3) / ((α₃+1)(α₁+2α₂+2α₃+5) Γ(α₁+2α₂+α₃+4)).
pub fn norm_d2<T: Real>(index: &MultiIndex) -> Result<T> {
    index.check_admissible(&DomainSpec::<T>::D2)?;
    let a = index.as_slice();
    let (a1, a2, a3) = (a[0], a[1], a[2]);
    let log = log_gamma::<T>(lit(a2 + 1))? + log_gamma::<T>(lit(a1 + a2 + a3 + 3))?
        - log_gamma::<T>(lit(a1 + 2 * a2 + a3 + 4))?;
    let denom = lit::<T>(a3 + 1) * lit::<T>(a1 + 2 * a2 + 2 * a3 + 5);
    Ok(T::PI().powi(3) * log.exp() / denom)
}

/// ‖z^α‖² on D1:
/// π⁴ Γ(α₁+1)Γ(α₂+1)Γ(α₃+1)Γ(x) / (p Γ(α₁+α₂+2)(α₄+1)(s+(α₄+1)/λ)Γ(2s))
/// with `x = (2α₁+2α₂+4)/p + α₃ + (2α₄+2)/λ + 1`.
pub fn norm_d1<T: Real>(index: &MultiIndex, p: T, lambda: T) -> Result<T> {
    let spec = DomainSpec::d1(p, lambda)?;
    index.check_admissible(&spec)?;
    let a = index.as_slice();
    let s = d1_s(a, p, lambda);
    let x = d1_gamma_arg(a, p, lambda);
    let log = log_gamma::<T>(lit(a[0] + 1))?
        + log_gamma::<T>(lit(a[1] + 1))?
        + log_gamma::<T>(lit(a[2] + 1))?
        + log_gamma(x)?
        - log_gamma::<T>(lit(a[0] + a[1] + 2))?
        - log_gamma(s + s)?;
    let denom = p * lit::<T>(a[3] + 1) * (s + lit::<T>(a[3] + 1) / lambda);
    Ok(T::PI().powi(4) * log.exp() / denom)
}

/// Closed-form norm dispatched on the domain.
pub fn norm_closed<T: Real>(spec: &DomainSpec<T>, index: &MultiIndex) -> Result<T> {
    match spec {
        DomainSpec::D2 => norm_d2(index),
        DomainSpec::D1 { p, lambda } => norm_d1(index, *p, *lambda),
        DomainSpec::Ellipsoid { .. } => index.check_admissible(spec).map(|_| T::zero()),
    }
}

fn trig_moment(cos_power: f64, sin_power: f64, opts: &QuadratureOptions) -> Result<f64> {
    if !(cos_power > -1.0 && sin_power > -1.0) {
        return Err(Error::Quadrature(format!(
            "integrand cos^{cos_power}·sin^{sin_power} is not integrable on (0, π/2)"
        )));
    }
    let f = |t: f64| t.cos().powf(cos_power) * t.sin().powf(sin_power);
    Ok(integrate(f, 0.0, FRAC_PI_2, opts)?.value)
}

/// Squared norm from the polar-coordinate reduction of the defining integral.
///
/// The radial integrals are power functions and are done exactly; the
/// remaining angular integrals go through adaptive quadrature, so no Γ value
/// enters the result.
pub fn norm_quadrature(spec: &DomainSpec<f64>, index: &MultiIndex) -> Result<f64> {
    norm_quadrature_with(spec, index, &QuadratureOptions::default())
}

pub fn norm_quadrature_with(
    spec: &DomainSpec<f64>,
    index: &MultiIndex,
    opts: &QuadratureOptions,
) -> Result<f64> {
    let a = index.as_slice();
    match spec {
        DomainSpec::D2 => {
            if a.len() != 3 || a[1] < 0 || a[2] < 0 {
                return Err(Error::Usage(format!("index {index} is not a D2 index")));
            }
            let (a1, a2, a3) = (a[0] as f64, a[1] as f64, a[2] as f64);
            // r₁² = ρ cos θ, r₂ = ρ sin θ, 0 < ρ < cos θ.
            let rho_power = a1 + 2.0 * a2 + 2.0 * a3 + 5.0;
            if rho_power <= 0.0 {
                return Err(Error::Quadrature(format!(
                    "radial integral diverges for {index}"
                )));
            }
            let angular = trig_moment(2.0 * a1 + 2.0 * a2 + 2.0 * a3 + 5.0, 2.0 * a2 + 1.0, opts)?;
            Ok((2.0 * PI).powi(3) / 2.0 / (2.0 * a3 + 2.0) / rho_power * angular)
        }
        DomainSpec::D1 { p, lambda } => {
            index.check_admissible(spec)?;
            let (a1, a2, a3, a4) = (a[0] as f64, a[1] as f64, a[2] as f64, a[3] as f64);
            let big_a = a1 + a2;
            // r₁ = R cos ω, r₂ = R sin ω, then R^p = ρ cos θ, r₃ = ρ sin θ, 0 < ρ < cos θ.
            let omega = trig_moment(2.0 * a1 + 1.0, 2.0 * a2 + 1.0, opts)?;
            let e = (2.0 * big_a + 4.0) / p + 2.0 * a3 + (4.0 * a4 + 4.0) / lambda + 1.0;
            let theta = trig_moment((2.0 * big_a + 4.0) / p + e, 2.0 * a3 + 1.0, opts)?;
            Ok((2.0 * PI).powi(4) * omega / p / (2.0 * a4 + 2.0) / (e + 1.0) * theta)
        }
        DomainSpec::Ellipsoid { .. } => Err(Error::Usage(
            "monomial norms are only provided for d1 and d2".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(a: &[i64]) -> MultiIndex {
        MultiIndex::new(a.to_vec())
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn d2_examples() {
        let pi3 = PI.powi(3);
        assert!(rel(norm_d2::<f64>(&idx(&[0, 0, 0])).unwrap(), pi3 / 15.0) < 1e-14);
        assert!(rel(norm_d2::<f64>(&idx(&[-2, 0, 0])).unwrap(), pi3 / 3.0) < 1e-14);
        for a in [[1, 1, 1], [-1, 2, 0], [0, 0, 0], [-2, 0, 0]] {
            let closed = norm_d2::<f64>(&idx(&a)).unwrap();
            let oracle = norm_quadrature(&DomainSpec::D2, &idx(&a)).unwrap();
            assert!(rel(closed, oracle) < 1e-10, "{a:?}");
        }
    }

    #[test]
    fn d1_examples() {
        let spec = DomainSpec::d1(1.0, 2.0).unwrap();
        let closed = norm_d1::<f64>(&idx(&[0, 0, 0, 0]), 1.0, 2.0).unwrap();
        assert!(rel(closed, PI.powi(4) / 24.0) < 1e-14);
        assert!(
            rel(
                norm_quadrature(&spec, &idx(&[0, 0, 0, 0])).unwrap(),
                PI.powi(4) / 24.0
            ) < 1e-10
        );
        let spec = DomainSpec::d1(2.0, 2.0).unwrap();
        let closed = norm_d1::<f64>(&idx(&[0, 0, 0, 0]), 2.0, 2.0).unwrap();
        assert!(rel(closed, norm_quadrature(&spec, &idx(&[0, 0, 0, 0])).unwrap()) < 1e-10);
    }

    #[test]
    fn d1_norm_decreases_in_alpha4() {
        for (p, l) in [(0.5, 1.0), (2.0, 3.0)] {
            for base in [[0, 0, 0], [1, 2, 0], [3, 0, 2]] {
                let norms: Vec<f64> = (0..6)
                    .map(|a4| norm_d1(&idx(&[base[0], base[1], base[2], a4]), p, l).unwrap())
                    .collect();
                assert!(
                    norms.windows(2).all(|w| w[1] < w[0]),
                    "{base:?} p={p} λ={l}"
                );
            }
        }
    }

    #[test]
    fn inadmissible_indices() {
        assert!(matches!(
            norm_d2::<f64>(&idx(&[-3, 0, 0])),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            norm_d2::<f64>(&idx(&[0, -1, 0])),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            norm_d1::<f64>(&idx(&[0, 0, -1, 0]), 1.0, 1.0),
            Err(Error::Usage(_))
        ));
        assert!(norm_d1::<f64>(&idx(&[0, 0, 0]), 1.0, 1.0).is_err());
    }

    #[test]
    fn oracle_reports_divergence_below_the_edge() {
        for (a2, a3) in [(0, 0), (1, 2)] {
            let edge = idx(&[-2 - a2 - a3, a2, a3]);
            assert!(norm_quadrature(&DomainSpec::D2, &edge).unwrap() > 0.0);
            let below = idx(&[-3 - a2 - a3, a2, a3]);
            assert!(matches!(
                norm_quadrature(&DomainSpec::D2, &below),
                Err(Error::Quadrature(_))
            ));
        }
    }

    #[test]
    fn f32_norm() {
        let v = norm_d2::<f32>(&idx(&[0, 0, 0])).unwrap();
        assert!((v - std::f32::consts::PI.powi(3) / 15.0).abs() < 1e-5);
    }
}
