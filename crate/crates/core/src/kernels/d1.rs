use num_complex::Complex;

use super::{expect_dim, log_factorials, log_powers, KernelMethod, KernelValue};
use crate::domains::PointPair;
use crate::error::{Error, Result};
use crate::hypergeo::{sum_shells, SeriesValue, TruncationPolicy};
use crate::norms::{d1_gamma_arg, d1_s};
use crate::numerics::{log_gamma, pow_principal, principal_sqrt, DualComplex};
use crate::scalar::Real;

type Dual<T> = DualComplex<T>;

/// Weights `c_j` and prefactor of `K = prefactor · Σ_j c_j ∂/∂ν_j (ν_j G)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorWeights<T> {
    pub c: [T; 4],
    pub prefactor: T,
}

impl<T: Real> OperatorWeights<T> {
    /// `(1/p, 1/p, 1, 2/λ)`: the weights that reproduce the monomial series.
    pub fn corrected(p: T, lambda: T) -> Self {
        let two = T::lit(2.0);
        Self {
            c: [p.recip(), p.recip(), T::one(), two / lambda],
            prefactor: p / T::PI().powi(4),
        }
    }

    /// `(2/p, 2/p, 1, 2/λ)` as originally typeset.
    pub fn as_printed(p: T, lambda: T) -> Self {
        let two = T::lit(2.0);
        Self {
            c: [two / p, two / p, T::one(), two / lambda],
            prefactor: p / T::PI().powi(4),
        }
    }
}

/// Plain-complex intermediates of the closed form, with `4ν₃·C` kept finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct D1Intermediates<T> {
    pub sqrt_1m4nu3: Complex<T>,
    pub mu1: Complex<T>,
    pub mu2: Complex<T>,
    pub mu4: Complex<T>,
    /// `4ν₃·C = 2^{e} / ((1−4ν₃)^{3/2} (1+√(1−4ν₃))^{e−1})`, `e = 4/p + 2/λ`.
    pub c_times_4nu3: Complex<T>,
}

impl<T: Real> D1Intermediates<T> {
    pub fn new(nu: &[Complex<T>], p: T, lambda: T) -> Result<Self> {
        expect_dim(nu, 4, "D1")?;
        check_params(p, lambda)?;
        check_nu3(nu[2])?;
        let one = Complex::new(T::one(), T::zero());
        let s = principal_sqrt(one - nu[2] * T::lit(4.0));
        let two_h = (one + s).inv() * T::lit(2.0);
        let two = T::lit(2.0);
        let e = T::lit(4.0) / p + two / lambda;
        let scale12 = pow_principal(two_h, two / p)?;
        let out = Self {
            sqrt_1m4nu3: s,
            mu1: nu[0] * scale12,
            mu2: nu[1] * scale12,
            mu4: nu[3] * pow_principal(two_h, two / lambda)?,
            c_times_4nu3: pow_principal(two_h, e - T::one())? * two / (s * s * s),
        };
        out.check_region()?;
        Ok(out)
    }

    fn check_region(&self) -> Result<()> {
        let m12 = self.mu1.norm() + self.mu2.norm();
        if !(m12 < T::one()) || !(self.mu4.norm() < T::one()) {
            return Err(Error::Region(format!(
                "closed form needs |μ₁|+|μ₂| < 1 and |μ₄| < 1, got {m12} and {}",
                self.mu4.norm()
            )));
        }
        Ok(())
    }
}

fn check_params<T: Real>(p: T, lambda: T) -> Result<()> {
    if !(p > T::zero() && lambda > T::zero()) {
        return Err(Error::Usage(format!(
            "D1 needs p, λ > 0, got p = {p}, λ = {lambda}"
        )));
    }
    Ok(())
}

fn check_nu3<T: Real>(nu3: Complex<T>) -> Result<()> {
    if !(nu3.norm() < T::lit(0.25)) {
        return Err(Error::Region(format!(
            "D1 needs |ν₃| < 1/4, got {}",
            nu3.norm()
        )));
    }
    Ok(())
}

fn values<T: Real>(nu: &[Dual<T>; 4]) -> [Complex<T>; 4] {
    nu.map(|d| d.val)
}

/// Closed form of `G`, the generating function whose image under the
/// operator is the kernel, written with `h = 1/(1+S)`, `S = √(1−4ν₃)`:
///
/// G = C'·{ [2/λ − (2/λ−1)h] / ((1−μ₄)²(1−μ₁−μ₂)²)
///        + 4Sh / (p(1−μ₄)²(1−μ₁−μ₂)³)
///        + 4μ₄Sh / (λ(1−μ₄)³(1−μ₁−μ₂)²) },   C' = 2(2h)^{e−1}/S³.
///
/// The identity `S − 1 = −4ν₃h` cancels the `1/(4ν₃)` of `C` exactly, so the
/// expression is regular at `ν₃ = 0`.
pub fn g_closed_d1<T: Real>(nu: &[Dual<T>; 4], p: T, lambda: T) -> Result<Dual<T>> {
    D1Intermediates::new(&values(nu), p, lambda)?;
    let two = T::lit(2.0);
    let one = Dual::real(T::one());
    let s = (one - nu[2] * T::lit(4.0)).sqrt()?;
    let h = one.checked_div(one + s)?;
    let two_h = h * two;
    let e = T::lit(4.0) / p + two / lambda;
    let c = two_h.powf(e - T::one())? * two / s.powi(3);
    let scale12 = two_h.powf(two / p)?;
    let mu12 = (nu[0] + nu[1]) * scale12;
    let mu4 = nu[3] * two_h.powf(two / lambda)?;
    let d12 = one - mu12;
    let d4 = one - mu4;
    let two_over_l = two / lambda;
    let t1 = (Dual::real(two_over_l) - h * (two_over_l - T::one())) / (d4.powi(2) * d12.powi(2));
    let sh4 = s * h * T::lit(4.0);
    let t2 = sh4 / (d4.powi(2) * d12.powi(3) * p);
    let t3 = sh4 * mu4 / (d4.powi(3) * d12.powi(2) * lambda);
    let g = c * (t1 + t2 + t3);
    if !g.is_finite() {
        return Err(Error::Arithmetic("closed G is not finite".into()));
    }
    Ok(g)
}

/// `G` exactly as typeset, with `C = 2^{e}/(4ν₃(1−4ν₃)^{3/2}(1+S)^{e−1})`;
/// singular at `ν₃ = 0`.
pub fn g_closed_d1_printed<T: Real>(nu: &[Dual<T>; 4], p: T, lambda: T) -> Result<Dual<T>> {
    D1Intermediates::new(&values(nu), p, lambda)?;
    if nu[2].val.norm() == T::zero() {
        return Err(Error::Singular("the typeset C divides by ν₃".into()));
    }
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let one = Dual::real(T::one());
    let w = one - nu[2] * four;
    let s = w.sqrt()?;
    let sp1 = one + s;
    let e = four / p + two / lambda;
    let c = Dual::real(two.powf(e))
        .checked_div(nu[2] * four * w.powf(T::lit(1.5))? * sp1.powf(e - T::one())?)?;
    let mu = |nu_j: Dual<T>, q: T| -> Result<Dual<T>> {
        (nu_j * two.powf(two / q)).checked_div(sp1.powf(two / q)?)
    };
    let mu1 = mu(nu[0], p)?;
    let mu2 = mu(nu[1], p)?;
    let mu4 = mu(nu[3], lambda)?;
    let d12 = one - mu1 - mu2;
    let d4 = one - mu4;
    let first = ((s - T::one()) * (two / lambda - T::one()) + nu[2] * (T::lit(8.0) / lambda))
        / (d4.powi(2) * d12.powi(2));
    let second = (s * four + nu[2] * T::lit(16.0) - four) / (d4.powi(2) * d12.powi(3) * p);
    let third = mu4 * (s + nu[2] * four - T::one()) * four / (d4.powi(3) * d12.powi(2) * lambda);
    Ok(c * (first + second + third))
}

fn apply_operator<T: Real>(
    g: Dual<T>,
    nu: &[Complex<T>],
    weights: &OperatorWeights<T>,
) -> Complex<T> {
    let sum = (0..4).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
        acc + (g.val + nu[j] * g.grad[j]) * weights.c[j]
    });
    sum * weights.prefactor
}

/// Closed-form kernel at `ν`, with the operator applied through dual numbers.
pub fn kernel_closed_d1_nu<T: Real>(
    nu: &[Complex<T>],
    p: T,
    lambda: T,
    weights: &OperatorWeights<T>,
) -> Result<KernelValue<T>> {
    expect_dim(nu, 4, "D1")?;
    let vars = Dual::variables([nu[0], nu[1], nu[2], nu[3]]);
    let g = g_closed_d1(&vars, p, lambda)?;
    Ok(KernelValue::closed(apply_operator(g, nu, weights)))
}

/// Closed-form kernel with the corrected operator weights.
pub fn kernel_closed_d1<T: Real>(pair: &PointPair<T>, p: T, lambda: T) -> Result<KernelValue<T>> {
    kernel_closed_d1_nu(
        &pair.nu(),
        p,
        lambda,
        &OperatorWeights::corrected(p, lambda),
    )
}

/// Series coefficient of `ν^α` in the kernel, in the form
/// (p/π⁴) Γ(α₁+α₂+2)(α₄+1)(s+(α₄+1)/λ)Γ(2s) / (Γ(x) α₁!α₂!α₃!).
pub fn d1_series_coefficient<T: Real>(alpha: &[i64], p: T, lambda: T) -> Result<T> {
    check_params(p, lambda)?;
    if alpha.len() != 4 || alpha.iter().any(|&a| a < 0) {
        return Err(Error::Usage(format!("{alpha:?} is not a D1 index")));
    }
    let f = |x: i64| T::lit(x as f64);
    let s = d1_s(alpha, p, lambda);
    let x = d1_gamma_arg(alpha, p, lambda);
    let log = log_gamma(f(alpha[0] + alpha[1] + 2))? + log_gamma(s + s)?
        - log_gamma(x)?
        - log_gamma(f(alpha[0] + 1))?
        - log_gamma(f(alpha[1] + 1))?
        - log_gamma(f(alpha[2] + 1))?;
    let rest = f(alpha[3] + 1) * (s + f(alpha[3] + 1) / lambda);
    Ok(p / T::PI().powi(4) * rest * log.exp())
}

/// Σ w(A, α₄, s) Γ(2s) / (Γ(x) α₃!) (ν₁+ν₂)^A ν₃^{α₃} ν₄^{α₄} over shells in
/// `(A, α₃, α₄)`, where `log_weight` returns `ln w`.
///
/// Every D1 coefficient depends on `α₁, α₂` only through `A = α₁+α₂` and
/// `1/(α₁!α₂!)`, so the `(α₁, α₂)` block of a shell collapses to
/// `(ν₁+ν₂)^A / A!` by the binomial theorem.
fn d1_shell_sum<T: Real>(
    nu: &[Complex<T>],
    p: T,
    lambda: T,
    policy: &TruncationPolicy,
    log_weight: impl Fn(T, T, T) -> T,
) -> Result<SeriesValue<T>> {
    expect_dim(nu, 4, "D1")?;
    check_params(p, lambda)?;
    check_nu3(nu[2])?;
    let max = policy.max_total_degree;
    let lf = log_factorials::<T>(max + 1);
    let pow_a = log_powers(nu[0] + nu[1], max);
    let pow3 = log_powers(nu[2], max);
    let pow4 = log_powers(nu[3], max);
    let mut failure = None;
    let outcome = sum_shells(3, policy, |m| {
        let (a, a3, a4) = (m[0], m[1], m[2]);
        let idx = [a as i64, 0, a3 as i64, a4 as i64];
        let s = d1_s(&idx, p, lambda);
        let x = d1_gamma_arg(&idx, p, lambda);
        match (log_gamma(s + s), log_gamma(x)) {
            (Ok(g2s), Ok(gx)) => {
                let af = T::from_usize_lossy(a);
                let a4f = T::from_usize_lossy(a4);
                let real = log_weight(af, a4f, s) + g2s - gx - lf[a3];
                (pow_a[a] + pow3[a3] + pow4[a4] + real).exp()
            }
            (Err(e), _) | (_, Err(e)) => {
                failure = Some(e);
                Complex::new(T::zero(), T::zero())
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => outcome.into_result(),
    }
}

/// Kernel series Σ ν^α / ‖z^α‖², summed over total-degree shells.
pub fn kernel_series_d1_nu<T: Real>(
    nu: &[Complex<T>],
    p: T,
    lambda: T,
    policy: &TruncationPolicy,
) -> Result<KernelValue<T>> {
    let prefactor = (p / T::PI().powi(4)).ln();
    let series = d1_shell_sum(nu, p, lambda, policy, |af, a4f, s| {
        let one = T::one();
        prefactor + ((af + one) * (a4f + one) * (s + (a4f + one) / lambda)).ln()
    })?;
    Ok(KernelValue {
        value: series.value,
        method: KernelMethod::Series,
        tail_estimate: Some(series.tail_estimate),
        shells_used: Some(series.shells_used),
    })
}

pub fn kernel_series_d1<T: Real>(
    pair: &PointPair<T>,
    p: T,
    lambda: T,
    policy: &TruncationPolicy,
) -> Result<KernelValue<T>> {
    kernel_series_d1_nu(&pair.nu(), p, lambda, policy)
}

/// Series of `G` itself: Σ Γ(α₁+α₂+2)(α₄+1)Γ(2s) / (Γ(x) α₁!α₂!α₃!) ν^α.
pub fn g_series_d1<T: Real>(
    nu: &[Complex<T>],
    p: T,
    lambda: T,
    policy: &TruncationPolicy,
) -> Result<Complex<T>> {
    let series = d1_shell_sum(nu, p, lambda, policy, |af, a4f, _| {
        ((af + T::one()) * (a4f + T::one())).ln()
    })?;
    Ok(series.value)
}
