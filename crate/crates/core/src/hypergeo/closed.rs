//! Closed forms for the ₂F₁(b, b+½; c; z) family and the contiguous relation
//! that links its members.
//!
//! Every form is written in terms of `S = √(1−z)` and `h = 1/(1+S)`; the
//! identity `(S − 1)/z = −h` removes the apparent `z = 0` singularities
//! exactly, so no small-`z` branch is needed.

use num_complex::Complex;

use super::gauss::gauss_2f1;
use super::series::{real_c, TruncationPolicy};
use crate::error::{Error, Result};
use crate::numerics::{pow_principal, principal_sqrt};
use crate::scalar::Real;

/// Members of the closed ₂F₁ family, numbered as in the original derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Closed2F1 {
    /// F((a+1)/2, (a+2)/2; a; z)
    I,
    /// F((a+3)/2, (a+4)/2; a+2; z)
    II,
    /// F((a+3)/2, (a+4)/2; a+3; z)
    III,
    /// F((a+3)/2, (a+4)/2; a; z)
    IV,
    /// F((a+2)/2, (a+3)/2; a; z)
    V,
}

impl Closed2F1 {
    pub const ALL: [Closed2F1; 5] = [Self::I, Self::II, Self::III, Self::IV, Self::V];

    /// The (upper, upper, lower) parameters of the hypergeometric function.
    pub fn parameters<T: Real>(self, a: T) -> (T, T, T) {
        let half = T::lit(0.5);
        let k = |x: f64| T::lit(x);
        match self {
            Self::I => ((a + k(1.0)) * half, (a + k(2.0)) * half, a),
            Self::II => ((a + k(3.0)) * half, (a + k(4.0)) * half, a + k(2.0)),
            Self::III => ((a + k(3.0)) * half, (a + k(4.0)) * half, a + k(3.0)),
            Self::IV => ((a + k(3.0)) * half, (a + k(4.0)) * half, a),
            Self::V => ((a + k(2.0)) * half, (a + k(3.0)) * half, a),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::I => "i",
            Self::II => "ii",
            Self::III => "iii",
            Self::IV => "iv",
            Self::V => "v",
        }
    }
}

/// Which expression of a closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// The formula exactly as originally typeset.
    AsPrinted,
    /// Production path. For I–III identical to the printed formula up to
    /// exact algebra; for IV and V obtained by stepping the Gauss contiguous
    /// relation down from the F(b, b+½; 2b) / F(b, b+½; 2b−1) pair.
    Derived,
}

struct Roots<T> {
    z: Complex<T>,
    s: Complex<T>,
    h: Complex<T>,
}

fn roots<T: Real>(z: Complex<T>) -> Result<Roots<T>> {
    let w = real_c(T::one()) - z;
    if !(w.re > T::zero()) {
        return Err(Error::Branch(format!(
            "closed forms need Re(1 − z) > 0, got {}",
            w.re
        )));
    }
    let s = principal_sqrt(w);
    let h = (real_c(T::one()) + s).inv();
    Ok(Roots { z, s, h })
}

/// F(b, b+½; 2b; z) = (1−z)^{−1/2} (2/(1+√(1−z)))^{2b−1}.
fn quad_top<T: Real>(b: T, r: &Roots<T>) -> Result<Complex<T>> {
    let two = T::lit(2.0);
    Ok(pow_principal(r.h * two, two * b - T::one())? / r.s)
}

/// F((q+1)/2, (q+2)/2; q; z) = 2 (2h)^{q−2} [(q−1) − (q−2) h] / (q S³).
fn quad_lowered<T: Real>(q: T, r: &Roots<T>) -> Result<Complex<T>> {
    let two = T::lit(2.0);
    let bracket = real_c(q - T::one()) - r.h * (q - two);
    Ok(pow_principal(r.h * two, q - two)? * bracket * two / (r.s * r.s * r.s * q))
}

/// Gauss contiguous relation in c, solved for F(c−1):
/// c(c−1)(z−1) F(c−1) + c[c−1−(2c−A−B−1)z] F(c) + (c−A)(c−B) z F(c+1) = 0.
fn step_down<T: Real>(
    upper: (T, T),
    c: T,
    z: Complex<T>,
    f_c: Complex<T>,
    f_c1: Complex<T>,
) -> Complex<T> {
    let (a, b) = upper;
    let one = T::one();
    let mid = (real_c(c - one) - z * (T::lit(2.0) * c - a - b - one)) * c;
    let top = z * ((c - a) * (c - b));
    let denom = (z - one) * (c * (c - one));
    -(mid * f_c + top * f_c1) / denom
}

/// Evaluates one member of the closed family at real `a > 0`.
pub fn closed_2f1_family<T: Real>(
    variant: Closed2F1,
    a: T,
    z: Complex<T>,
    form: ClosedForm,
) -> Result<Complex<T>> {
    if !(a > T::zero()) {
        return Err(Error::Usage(format!("closed forms need a > 0, got {a}")));
    }
    let r = roots(z)?;
    match (variant, form) {
        (Closed2F1::I, ClosedForm::Derived) => quad_lowered(a, &r),
        (Closed2F1::II, ClosedForm::Derived) => quad_lowered(a + T::lit(2.0), &r),
        (Closed2F1::III, ClosedForm::Derived) => quad_top((a + T::lit(3.0)) * T::lit(0.5), &r),
        (Closed2F1::IV, ClosedForm::Derived) => {
            let upper = (
                (a + T::lit(3.0)) * T::lit(0.5),
                (a + T::lit(4.0)) * T::lit(0.5),
            );
            let f2 = quad_lowered(a + T::lit(2.0), &r)?;
            let f3 = quad_top(upper.0, &r)?;
            let f1 = step_down(upper, a + T::lit(2.0), z, f2, f3);
            Ok(step_down(upper, a + T::one(), z, f1, f2))
        }
        (Closed2F1::V, ClosedForm::Derived) => {
            let upper = (
                (a + T::lit(2.0)) * T::lit(0.5),
                (a + T::lit(3.0)) * T::lit(0.5),
            );
            let f1 = quad_lowered(a + T::one(), &r)?;
            let f2 = quad_top(upper.0, &r)?;
            Ok(step_down(upper, a + T::one(), z, f1, f2))
        }
        (v, ClosedForm::AsPrinted) => printed(v, a, &r),
    }
}

fn printed<T: Real>(variant: Closed2F1, a: T, r: &Roots<T>) -> Result<Complex<T>> {
    let k = |x: f64| T::lit(x);
    let z = r.z;
    let s = r.s;
    let one = real_c(T::one());
    let one_minus_z = one - z;
    let z_minus_1 = z - one;
    let w32 = pow_principal(one_minus_z, k(1.5))?;
    let two_pow = |e: T| k(2.0).powf(e);
    // Numerators of the form q(S − 1) + (q+1)z divided by z, exactly.
    let over_z = |q: T| real_c(q + T::one()) - r.h * q;
    let sp1 = one + s;
    match variant {
        Closed2F1::I => {
            let num = over_z(a - k(2.0)) * two_pow(a - k(1.0));
            Ok(num / (w32 * pow_principal(sp1, a - k(2.0))? * a))
        }
        Closed2F1::II => {
            let num = over_z(a) * two_pow(a + k(1.0));
            Ok(num / (w32 * pow_principal(sp1, a)? * (a + k(2.0))))
        }
        Closed2F1::III => Ok(real_c(two_pow(a + k(2.0))) / (s * pow_principal(sp1, a + k(2.0))?)),
        Closed2F1::IV => {
            if z.norm() == T::zero() {
                return Err(Error::Singular("printed form IV divides by z".into()));
            }
            let p = z * (a - k(0.5)) - (a + k(1.0));
            let q = z * (a - k(2.5)) - a;
            let rr = (T::one() - a) * k(0.5) * ((k(2.0) - a) * k(0.5));
            let lead = (p * q - z * rr) / (z_minus_1 * w32 * pow_principal(sp1, a)?)
                * (over_z(a) * two_pow(a + k(1.0)))
                / (a * (a + k(1.0)) * (a + k(2.0)));
            let tail = q * z * (two_pow(a) * (a + a * a))
                / (z_minus_1 * z_minus_1 * s * pow_principal(sp1, a + k(2.0))?)
                / (a * (a + k(1.0)) * (a + k(2.0)));
            Ok(lead - tail)
        }
        Closed2F1::V => {
            let first = z * (two_pow(a) * (a - a * a))
                / (z_minus_1 * s * pow_principal(sp1, a + k(1.0))? * (k(2.0) * a * (a + k(1.0))));
            let second = (z * k(-1.5) - a) * over_z(a - k(1.0)) * two_pow(a)
                / (z_minus_1 * w32 * pow_principal(sp1, a - k(1.0))? * (a * (a + k(1.0))));
            Ok(first + second)
        }
    }
}

/// Coefficient set used on the right-hand side of the two-step relation
/// F(A,B;a) = C₂ F(A,B;a+2) − (a+a²)z / (4(a+1)(a+2)(z−1)) · C₁ F(A,B;a+3),
/// with A = (a+3)/2, B = (a+4)/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationForm {
    /// C₂ = (PQ − Rz) / (a(a+1)(z−1)) as originally typeset.
    AsPrinted,
    /// C₂ = (PQ/(z−1) − Rz) / (a(a+1)(z−1)), from two steps of the Gauss
    /// contiguous relation.
    Gauss,
}

/// Evaluates both sides of the two-step contiguous relation with all three
/// hypergeometric functions summed as series. Returns `(lhs, rhs)`.
pub fn contiguous_relation_check<T: Real>(
    a: T,
    z: Complex<T>,
    form: RelationForm,
    policy: &TruncationPolicy,
) -> Result<(Complex<T>, Complex<T>)> {
    let k = |x: f64| T::lit(x);
    let one = real_c(T::one());
    if z.norm() == T::zero() || (z - one).norm() == T::zero() {
        return Err(Error::Singular(
            "relation coefficients need z ≠ 0, 1".into(),
        ));
    }
    let (ua, ub) = ((a + k(3.0)) * k(0.5), (a + k(4.0)) * k(0.5));
    let lhs = gauss_2f1(ua, ub, a, z, policy)?.value;
    let f2 = gauss_2f1(ua, ub, a + k(2.0), z, policy)?.value;
    let f3 = gauss_2f1(ua, ub, a + k(3.0), z, policy)?.value;

    let zm1 = z - one;
    let p = z * (a - k(0.5)) - (a + k(1.0));
    let q = z * (a - k(2.5)) - a;
    let rr = (T::one() - a) * k(0.5) * ((k(2.0) - a) * k(0.5));
    let pq = match form {
        RelationForm::AsPrinted => p * q,
        RelationForm::Gauss => p * q / zm1,
    };
    let c2 = (pq - z * rr) / (zm1 * (a * (a + k(1.0))));
    let c1 = q / (zm1 * a);
    let second = z * (a + a * a) / (zm1 * (k(4.0) * (a + k(1.0)) * (a + k(2.0))));
    Ok((lhs, c2 * f2 - second * c1 * f3))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::new(3000, 1e-15).unwrap()
    }

    fn series(variant: Closed2F1, a: f64, z: C) -> C {
        let (p, q, r) = variant.parameters(a);
        gauss_2f1(p, q, r, z, &policy()).unwrap().value
    }

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn variant_iii_at_zero_is_one() {
        let v = closed_2f1_family(Closed2F1::III, 2.7, C::new(0.0, 0.0), ClosedForm::Derived);
        assert!((v.unwrap() - C::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn every_derived_form_is_finite_at_zero() {
        for v in Closed2F1::ALL {
            let got = closed_2f1_family(v, 1.3, C::new(0.0, 0.0), ClosedForm::Derived).unwrap();
            assert!((got - C::new(1.0, 0.0)).norm() < 1e-14, "{v:?}");
            let tiny = C::new(1e-9, -2e-9);
            let got = closed_2f1_family(v, 1.3, tiny, ClosedForm::Derived).unwrap();
            assert!(rel(got, series(v, 1.3, tiny)) < 1e-13, "{v:?}");
        }
    }

    #[test]
    fn derived_forms_match_series() {
        let cases = [
            (Closed2F1::II, 1.5, C::new(0.3, 0.0)),
            (Closed2F1::I, 3.0, C::new(0.2, 0.0)),
            (Closed2F1::III, 0.8, C::new(-0.5, 0.2)),
            (Closed2F1::IV, 2.5, C::new(0.3, 0.0)),
            (Closed2F1::IV, 4.0, C::new(-0.4, 0.0)),
            (Closed2F1::V, 1.1, C::new(0.05, 0.1)),
            (Closed2F1::V, 5.5, C::new(0.45, -0.3)),
        ];
        for (v, a, z) in cases {
            let closed = closed_2f1_family(v, a, z, ClosedForm::Derived).unwrap();
            assert!(rel(closed, series(v, a, z)) < 1e-10, "{v:?} a={a} z={z}");
        }
    }

    #[test]
    fn printed_forms_i_to_iii_agree_with_derived() {
        for v in [Closed2F1::I, Closed2F1::II, Closed2F1::III] {
            for &(a, z) in &[(1.5, C::new(0.3, 0.0)), (4.2, C::new(-0.3, 0.4))] {
                let p = closed_2f1_family(v, a, z, ClosedForm::AsPrinted).unwrap();
                let d = closed_2f1_family(v, a, z, ClosedForm::Derived).unwrap();
                assert!(rel(p, d) < 1e-13, "{v:?}");
            }
        }
    }

    #[test]
    fn printed_iv_and_v_are_off() {
        // The typeset IV and V disagree with their own series by O(1).
        for v in [Closed2F1::IV, Closed2F1::V] {
            let z = C::new(0.3, 0.0);
            let p = closed_2f1_family(v, 2.5, z, ClosedForm::AsPrinted).unwrap();
            assert!(rel(p, series(v, 2.5, z)) > 1e-2, "{v:?}");
        }
    }

    #[test]
    fn contiguous_relation_examples() {
        for &(a, z) in &[
            (2.5, C::new(0.3, 0.0)),
            (4.0, C::new(-0.4, 0.0)),
            (1.1, C::new(0.05, 0.0)),
        ] {
            let (lhs, rhs) =
                contiguous_relation_check(a, z, RelationForm::Gauss, &policy()).unwrap();
            assert!(rel(rhs, lhs) <= 1e-9, "a={a} z={z}");
            let (lhs, rhs) =
                contiguous_relation_check(a, z, RelationForm::AsPrinted, &policy()).unwrap();
            assert!(
                rel(rhs, lhs) > 1e-2,
                "printed relation unexpectedly holds at a={a} z={z}"
            );
        }
    }

    #[test]
    fn errors() {
        let z = C::new(2.0, 0.0);
        assert!(matches!(
            closed_2f1_family(Closed2F1::I, 1.0, z, ClosedForm::Derived),
            Err(Error::Branch(_))
        ));
        assert!(
            closed_2f1_family(Closed2F1::I, -1.0, C::new(0.1, 0.0), ClosedForm::Derived).is_err()
        );
        assert!(
            contiguous_relation_check(1.0, C::new(0.0, 0.0), RelationForm::Gauss, &policy())
                .is_err()
        );
    }
}
