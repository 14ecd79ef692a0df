//! Holomorphic forward-mode dual numbers with a fixed four-slot gradient.
//!
//! Slot `j` holds the complex partial derivative with respect to `ν_{j+1}`.
//! Because every primitive here is holomorphic, the chain rule over ℂ is exact
//! and the gradient is the complex derivative, not a Wirtinger pair.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;

use super::complex::{pow_principal, principal_sqrt};
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const GRAD_SLOTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualComplex<T> {
    pub val: Complex<T>,
    pub grad: [Complex<T>; GRAD_SLOTS],
}

impl<T: Real> DualComplex<T> {
    pub fn constant(val: Complex<T>) -> Self {
        Self {
            val,
            grad: [Complex::new(T::zero(), T::zero()); GRAD_SLOTS],
        }
    }

    pub fn real(x: T) -> Self {
        Self::constant(Complex::new(x, T::zero()))
    }

    /// Independent variable seeded with a unit derivative in `slot`.
    pub fn variable(val: Complex<T>, slot: usize) -> Self {
        assert!(slot < GRAD_SLOTS, "gradient slot {slot} out of range");
        let mut d = Self::constant(val);
        d.grad[slot] = Complex::new(T::one(), T::zero());
        d
    }

    /// Seeds `values[j]` as the variable of slot `j`.
    pub fn variables(values: [Complex<T>; GRAD_SLOTS]) -> [Self; GRAD_SLOTS] {
        let mut out = [Self::real(T::zero()); GRAD_SLOTS];
        for (j, v) in values.into_iter().enumerate() {
            out[j] = Self::variable(v, j);
        }
        out
    }

    fn map_grad(self, f: impl Fn(Complex<T>) -> Complex<T>) -> [Complex<T>; GRAD_SLOTS] {
        self.grad.map(f)
    }

    /// Multiplies value and gradient by a complex constant.
    pub fn scale(self, c: Complex<T>) -> Self {
        Self {
            val: self.val * c,
            grad: self.map_grad(|g| g * c),
        }
    }

    pub fn is_finite(&self) -> bool {
        let fin = |c: &Complex<T>| c.re.is_finite() && c.im.is_finite();
        fin(&self.val) && self.grad.iter().all(fin)
    }

    pub fn checked_recip(self) -> Result<Self> {
        if self.val.norm() == T::zero() {
            return Err(Error::Arithmetic(
                "division by a dual number with zero value".into(),
            ));
        }
        let inv = self.val.inv();
        let d = -(inv * inv);
        Ok(Self {
            val: inv,
            grad: self.map_grad(|g| g * d),
        })
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.val.norm() == T::zero() {
            return Err(Error::Arithmetic(
                "division by a dual number with zero value".into(),
            ));
        }
        Ok(self / rhs)
    }

    /// Principal square root; the derivative needs a nonzero value.
    pub fn sqrt(self) -> Result<Self> {
        if self.val.norm() == T::zero() {
            return Err(Error::Arithmetic("derivative of sqrt at zero".into()));
        }
        let root = principal_sqrt(self.val);
        let d = (root * T::lit(2.0)).inv();
        Ok(Self {
            val: root,
            grad: self.map_grad(|g| g * d),
        })
    }

    /// Principal power with a real exponent; requires `Re(val) > 0`.
    pub fn powf(self, exponent: T) -> Result<Self> {
        let p = pow_principal(self.val, exponent)?;
        let d = p / self.val * exponent;
        Ok(Self {
            val: p,
            grad: self.map_grad(|g| g * d),
        })
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::real(T::one());
        }
        let p = self.val.powi(n);
        let d = self.val.powi(n - 1) * T::from_i32(n).expect("small integer");
        Self {
            val: p,
            grad: self.map_grad(|g| g * d),
        }
    }
}

impl<T: Real> Add for DualComplex<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut grad = self.grad;
        for (g, r) in grad.iter_mut().zip(rhs.grad) {
            *g = *g + r;
        }
        Self {
            val: self.val + rhs.val,
            grad,
        }
    }
}

impl<T: Real> Sub for DualComplex<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for DualComplex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            val: -self.val,
            grad: self.map_grad(|g| -g),
        }
    }
}

impl<T: Real> Mul for DualComplex<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut grad = self.grad;
        for (g, r) in grad.iter_mut().zip(rhs.grad) {
            *g = *g * rhs.val + self.val * r;
        }
        Self {
            val: self.val * rhs.val,
            grad,
        }
    }
}

/// Quotient by the operator form; a zero divisor yields non-finite components.
/// Use [`DualComplex::checked_div`] where the divisor is not known to be nonzero.
impl<T: Real> Div for DualComplex<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.val.inv();
        let q = self.val * inv;
        let mut grad = self.grad;
        for (g, r) in grad.iter_mut().zip(rhs.grad) {
            *g = (*g - q * r) * inv;
        }
        Self { val: q, grad }
    }
}

impl<T: Real> Add<T> for DualComplex<T> {
    type Output = Self;
    fn add(self, rhs: T) -> Self {
        Self {
            val: self.val + rhs,
            grad: self.grad,
        }
    }
}

impl<T: Real> Sub<T> for DualComplex<T> {
    type Output = Self;
    fn sub(self, rhs: T) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Mul<T> for DualComplex<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(Complex::new(rhs, T::zero()))
    }
}

impl<T: Real> Div<T> for DualComplex<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: T) -> Self {
        self * rhs.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;
    type D = DualComplex<f64>;

    fn close(a: C, b: C, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn power_rule_on_seeded_variable() {
        let nu = C::new(0.3, -0.2);
        let x = D::variable(nu, 0);
        let sq = x * x;
        assert_eq!(sq.val, nu * nu);
        assert_eq!(sq.grad[0], nu * 2.0);
        assert_eq!(sq.grad[1], C::new(0.0, 0.0));
        assert_eq!(x.powi(2), sq);
    }

    #[test]
    fn constants_have_zero_gradient() {
        let c = D::constant(C::new(1.5, 2.0));
        assert!(c.grad.iter().all(|g| *g == C::new(0.0, 0.0)));
        let r = (c * c + 3.0).sqrt().unwrap();
        assert!(r.grad.iter().all(|g| *g == C::new(0.0, 0.0)));
    }

    #[test]
    fn sqrt_gradient_matches_central_difference() {
        let f = |nu3: C| principal_sqrt(C::new(1.0, 0.0) - nu3 * 4.0);
        let nu3 = C::new(0.05, 0.0);
        let x = D::variable(nu3, 2);
        let s = (D::real(1.0) - x * 4.0).sqrt().unwrap();
        let h = 1e-5;
        let fd = (f(nu3 + h) - f(nu3 - h)) / (2.0 * h);
        assert!(close(s.grad[2], fd, 1e-8), "{:?} vs {fd:?}", s.grad[2]);
    }

    #[test]
    fn quotient_and_power_rules() {
        let [a, b, _, _] = D::variables([
            C::new(0.7, 0.1),
            C::new(1.2, -0.4),
            C::new(0.0, 0.0),
            C::new(0.0, 0.0),
        ]);
        let q = a / b;
        assert!(close(q.grad[0], b.val.inv(), 1e-14));
        assert!(close(q.grad[1], -a.val / (b.val * b.val), 1e-14));
        assert_eq!(q, a.checked_div(b).unwrap());
        let p = b.powf(-2.5).unwrap();
        let expected = b.val.powf(-3.5) * -2.5;
        assert!(close(p.grad[1], expected, 1e-13));
    }

    #[test]
    fn division_by_zero_value_is_an_error() {
        let zero = D::real(0.0);
        assert!(matches!(
            D::real(1.0).checked_div(zero),
            Err(Error::Arithmetic(_))
        ));
        assert!(zero.sqrt().is_err());
        assert!(matches!(D::real(-1.0).powf(0.5), Err(Error::Branch(_))));
    }
}
