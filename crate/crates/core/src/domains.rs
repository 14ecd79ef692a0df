//! Domain descriptions, membership tests and seeded sampling.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Rejection-sampling budget per point.
pub const MAX_ATTEMPTS_PER_POINT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec<T> {
    /// `|z₄|^λ < t^2 + |z₃|²`, `t^2 + |z₃|² < t` with `t = (|z₁|²+|z₂|²)^{p/2}`.
    D1 { p: T, lambda: T },
    /// `|z₃|² < |z₁|⁴ + |z₂|²`, `|z₁|⁴ + |z₂|² < |z₁|²`.
    D2,
    /// `Σ |z_j|^{2p_j} < 1`.
    Ellipsoid { p: Vec<T> },
}

impl<T: Real> DomainSpec<T> {
    pub fn d1(p: T, lambda: T) -> Result<Self> {
        if !(p > T::zero() && lambda > T::zero()) {
            return Err(Error::Usage(format!(
                "D1 needs p, λ > 0, got p = {p}, λ = {lambda}"
            )));
        }
        Ok(Self::D1 { p, lambda })
    }

    pub fn ellipsoid(p: Vec<T>) -> Result<Self> {
        if p.is_empty() || p.iter().any(|&pj| !(pj > T::zero())) {
            return Err(Error::Usage(
                "ellipsoid exponents must be non-empty and positive".into(),
            ));
        }
        Ok(Self::Ellipsoid { p })
    }

    pub fn dimension(&self) -> usize {
        match self {
            Self::D1 { .. } => 4,
            Self::D2 => 3,
            Self::Ellipsoid { p } => p.len(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::D1 { .. } => "d1",
            Self::D2 => "d2",
            Self::Ellipsoid { .. } => "ellipsoid",
        }
    }

    /// Radii of the coordinate disks whose product contains the domain.
    fn bounding_radii(&self) -> Vec<T> {
        match self {
            Self::D1 { .. } => vec![T::one(), T::one(), T::lit(0.5), T::one()],
            Self::D2 => vec![T::one(), T::lit(0.5), T::one()],
            Self::Ellipsoid { p } => vec![T::one(); p.len()],
        }
    }

    /// `(L, R)` for each defining strict inequality `L < R`.
    fn inequalities(&self, z: &[Complex<T>]) -> Vec<(T, T)> {
        let sq: Vec<T> = z.iter().map(|c| c.norm_sqr()).collect();
        match self {
            Self::D1 { p, lambda } => {
                let r12 = sq[0] + sq[1];
                let outer = r12.powf(*p) + sq[2];
                vec![
                    (sq[3].powf(*lambda * T::lit(0.5)), outer),
                    (outer, r12.powf(*p * T::lit(0.5))),
                ]
            }
            Self::D2 => {
                let middle = sq[0] * sq[0] + sq[1];
                vec![(sq[2], middle), (middle, sq[0])]
            }
            Self::Ellipsoid { p } => {
                let total = sq
                    .iter()
                    .zip(p)
                    .fold(T::zero(), |s, (&r, &pj)| s + r.powf(pj));
                vec![(total, T::one())]
            }
        }
    }

    fn check_dimension(&self, z: &[Complex<T>]) -> Result<()> {
        if z.len() != self.dimension() {
            return Err(Error::Usage(format!(
                "{} points have {} coordinates, got {}",
                self.name(),
                self.dimension(),
                z.len()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, z: &[Complex<T>]) -> Result<bool> {
        self.check_dimension(z)?;
        Ok(self.inequalities(z).into_iter().all(|(l, r)| l < r))
    }

    /// True if every inequality holds as `L ≤ (1 − margin)·R`.
    pub fn contains_with_slack(&self, z: &[Complex<T>], margin: T) -> Result<bool> {
        self.check_dimension(z)?;
        let factor = T::one() - margin;
        Ok(self
            .inequalities(z)
            .into_iter()
            .all(|(l, r)| l < r && l <= factor * r))
    }
}

/// A point pair `(z, ζ)`; `ν_j = z_j·conj(ζ_j)` is derived on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct PointPair<T> {
    pub z: Vec<Complex<T>>,
    pub zeta: Vec<Complex<T>>,
}

impl<T: Real> PointPair<T> {
    pub fn new(z: Vec<Complex<T>>, zeta: Vec<Complex<T>>) -> Result<Self> {
        if z.len() != zeta.len() {
            return Err(Error::Usage(format!(
                "z has {} coordinates but ζ has {}",
                z.len(),
                zeta.len()
            )));
        }
        Ok(Self { z, zeta })
    }

    pub fn diagonal(z: Vec<Complex<T>>) -> Self {
        Self { zeta: z.clone(), z }
    }

    /// The pair with the roles of `z` and `ζ` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            z: self.zeta.clone(),
            zeta: self.z.clone(),
        }
    }

    pub fn nu(&self) -> Vec<Complex<T>> {
        self.z
            .iter()
            .zip(&self.zeta)
            .map(|(z, w)| z * w.conj())
            .collect()
    }
}

fn check_margin<T: Real>(margin: T) -> Result<()> {
    if !(margin >= T::zero() && margin < T::one()) {
        return Err(Error::Usage(format!(
            "margin must lie in [0, 1), got {margin}"
        )));
    }
    Ok(())
}

fn draw_point<T: Real>(
    spec: &DomainSpec<T>,
    radii: &[T],
    margin: T,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Complex<T>>> {
    for _ in 0..MAX_ATTEMPTS_PER_POINT {
        let z: Vec<Complex<T>> = radii
            .iter()
            .map(|&r| {
                let rho = r * T::lit(rng.gen::<f64>().sqrt());
                let theta = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
                Complex::from_polar(rho, theta)
            })
            .collect();
        if spec.contains_with_slack(&z, margin)? {
            return Ok(z);
        }
    }
    Err(Error::Sampling(format!(
        "no {} point with margin {margin} after {MAX_ATTEMPTS_PER_POINT} attempts",
        spec.name()
    )))
}

/// `count` interior points, uniform over the accepted part of the bounding
/// polydisk, each with relative slack at least `margin`.
pub fn sample_interior<T: Real>(
    spec: &DomainSpec<T>,
    seed: u64,
    count: usize,
    margin: T,
) -> Result<Vec<Vec<Complex<T>>>> {
    check_margin(margin)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radii = spec.bounding_radii();
    let points = (0..count)
        .map(|_| draw_point(spec, &radii, margin, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    if let DomainSpec::D1 { .. } = spec {
        for z in &points {
            assert!(z[2].norm_sqr() < T::lit(0.25), "D1 sample with |z₃|² ≥ 1/4");
        }
    }
    Ok(points)
}

/// Pairs `ζ_j = s_j e^{iθ_j} z_j` with `z` interior and `s_j ∈ (0, 1]`.
///
/// On D2 the first contraction is raised to the largest `s_j`, so that
/// `|ν₂/ν₁|` and `|ν₃/ν₁|` stay below their diagonal values.
pub fn sample_pairs<T: Real>(
    spec: &DomainSpec<T>,
    seed: u64,
    count: usize,
    margin: T,
) -> Result<Vec<PointPair<T>>> {
    check_margin(margin)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radii = spec.bounding_radii();
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let z = draw_point(spec, &radii, margin, &mut rng)?;
        let mut s: Vec<f64> = (0..z.len()).map(|_| 1.0 - rng.gen::<f64>()).collect();
        let theta: Vec<f64> = (0..z.len())
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        if let DomainSpec::D2 = spec {
            s[0] = s.iter().copied().fold(0.0, f64::max);
        }
        let zeta = z
            .iter()
            .zip(s.iter().zip(&theta))
            .map(|(zj, (&sj, &tj))| zj * Complex::from_polar(T::lit(sj), T::lit(tj)))
            .collect();
        let pair = PointPair { z, zeta };
        if let DomainSpec::D1 { .. } = spec {
            assert!(
                pair.nu()[2].norm() < T::lit(0.25),
                "D1 pair with |ν₃| ≥ 1/4"
            );
        }
        pairs.push(pair);
    }
    Ok(pairs)
}
