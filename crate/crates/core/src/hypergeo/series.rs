//! Total-degree shell summation for single- and multi-index power series.
//!
//! Shell `d` collects every multi-index with `m₁ + ... + m_n = d`. Summation
//! stops once `consecutive_small_shells` shells in a row have magnitude
//! (sum of absolute term values) at most `tail_tol · |partial sum|`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub max_total_degree: usize,
    pub tail_tol: f64,
    pub consecutive_small_shells: usize,
}

impl TruncationPolicy {
    pub const DEFAULT_MAX_TOTAL_DEGREE: usize = 400;
    pub const DEFAULT_TAIL_TOL: f64 = 1e-10;
    pub const DEFAULT_SMALL_SHELLS: usize = 3;

    pub fn new(max_total_degree: usize, tail_tol: f64) -> Result<Self> {
        Self {
            max_total_degree,
            tail_tol,
            consecutive_small_shells: Self::DEFAULT_SMALL_SHELLS,
        }
        .validated()
    }

    pub fn with_small_shells(mut self, shells: usize) -> Result<Self> {
        self.consecutive_small_shells = shells;
        self.validated()
    }

    pub fn with_tail_tol(mut self, tail_tol: f64) -> Result<Self> {
        self.tail_tol = tail_tol;
        self.validated()
    }

    pub fn with_max_total_degree(mut self, max_total_degree: usize) -> Result<Self> {
        self.max_total_degree = max_total_degree;
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if self.max_total_degree < 1 {
            return Err(Error::Usage("max_total_degree must be at least 1".into()));
        }
        if !(self.tail_tol > 0.0 && self.tail_tol.is_finite()) {
            return Err(Error::Usage(format!(
                "tail_tol must be positive, got {}",
                self.tail_tol
            )));
        }
        if self.consecutive_small_shells < 1 {
            return Err(Error::Usage(
                "consecutive_small_shells must be at least 1".into(),
            ));
        }
        Ok(self)
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            max_total_degree: Self::DEFAULT_MAX_TOTAL_DEGREE,
            tail_tol: Self::DEFAULT_TAIL_TOL,
            consecutive_small_shells: Self::DEFAULT_SMALL_SHELLS,
        }
    }
}

/// A truncated series sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: Complex<T>,
    /// Magnitude of the last shell included in `value`.
    pub tail_estimate: T,
    pub shells_used: usize,
}

/// Result of a shell summation that may have run out of degree budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellOutcome<T> {
    pub series: SeriesValue<T>,
    pub converged: bool,
}

impl<T: Real> ShellOutcome<T> {
    pub fn into_result(self) -> Result<SeriesValue<T>> {
        if self.converged {
            Ok(self.series)
        } else {
            Err(Error::NonConvergence {
                shells: self.series.shells_used,
                tail: self.series.tail_estimate.as_f64(),
            })
        }
    }
}

/// Running state of a shell-by-shell summation.
#[derive(Debug, Clone)]
pub struct ShellAccumulator<T> {
    policy: TruncationPolicy,
    partial: Complex<T>,
    last_magnitude: T,
    small_run: usize,
    shells: usize,
}

impl<T: Real> ShellAccumulator<T> {
    pub fn new(policy: TruncationPolicy) -> Self {
        Self {
            policy,
            partial: Complex::new(T::zero(), T::zero()),
            last_magnitude: T::zero(),
            small_run: 0,
            shells: 0,
        }
    }

    /// Adds one shell. Returns `true` once the stopping rule is met.
    pub fn push(&mut self, shell_sum: Complex<T>, shell_magnitude: T) -> bool {
        self.partial = self.partial + shell_sum;
        self.last_magnitude = shell_magnitude;
        self.shells += 1;
        if shell_magnitude <= T::lit(self.policy.tail_tol) * self.partial.norm() {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= self.policy.consecutive_small_shells
    }

    /// Whether another shell (of degree `self.shells`) is within budget.
    pub fn has_budget(&self) -> bool {
        self.shells <= self.policy.max_total_degree
    }

    pub fn finish(&self, converged: bool) -> ShellOutcome<T> {
        ShellOutcome {
            series: SeriesValue {
                value: self.partial,
                tail_estimate: self.last_magnitude,
                shells_used: self.shells,
            },
            converged,
        }
    }
}

/// Calls `f` on every composition of `total` into `parts` nonnegative parts.
pub fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(pos: usize, remaining: usize, buf: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if pos + 1 == buf.len() {
            buf[pos] = remaining;
            f(buf);
            return;
        }
        for k in 0..=remaining {
            buf[pos] = k;
            rec(pos + 1, remaining - k, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0usize; parts];
    rec(0, total, &mut buf, f);
}

/// Sums `term(m)` over multi-indices of length `dims` by total-degree shells.
pub fn sum_shells<T, F>(dims: usize, policy: &TruncationPolicy, mut term: F) -> ShellOutcome<T>
where
    T: Real,
    F: FnMut(&[usize]) -> Complex<T>,
{
    let mut acc = ShellAccumulator::new(*policy);
    for degree in 0..=policy.max_total_degree {
        let mut shell = Complex::new(T::zero(), T::zero());
        let mut magnitude = T::zero();
        for_each_composition(degree, dims, &mut |m| {
            let t = term(m);
            shell = shell + t;
            magnitude = magnitude + t.norm();
        });
        if acc.push(shell, magnitude) {
            return acc.finish(true);
        }
        if dims == 0 {
            return acc.finish(true);
        }
    }
    acc.finish(false)
}

/// Cumulative complex logarithms `L[m] = Σ_{k<m} ln(step(k))` for `m = 0..=len`.
///
/// Zero steps give `-inf` real parts, which exponentiate to exact zeros.
pub(crate) fn log_table<T: Real>(
    len: usize,
    step: impl Fn(usize) -> Complex<T>,
) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(len + 1);
    let mut acc = Complex::new(T::zero(), T::zero());
    out.push(acc);
    for k in 0..len {
        acc = acc + step(k).ln();
        out.push(acc);
    }
    out
}

pub(crate) fn real_c<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// True if `c` is 0, -1, -2, ...
pub(crate) fn is_nonpositive_integer<T: Real>(c: T) -> bool {
    c <= T::zero() && c == c.round()
}
