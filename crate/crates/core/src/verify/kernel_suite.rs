use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{c64_json, c64_vec_json, ReportRow, VerificationReport};
use crate::domains::{sample_interior, sample_pairs, DomainSpec, PointPair};
use crate::error::{Error, Result};
use crate::hypergeo::{sum_shells, TruncationPolicy};
use crate::kernels::{
    g_closed_d1, kernel_closed_d1_nu, kernel_closed_d2_nu, kernel_series_d1_nu,
    kernel_series_d2_nu, kernel_series_ellipsoid_nu, D2Form, KernelValue, OperatorWeights,
};
use crate::numerics::{log_gamma, DualComplex};

type C = Complex64;

/// Which closed forms the kernel suite checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelForm {
    /// Production forms: weights (1/p, 1/p, 1, 2/λ) on D1, the corrected
    /// numerator on D2.
    #[default]
    Corrected,
    /// The closed forms exactly as typeset.
    AsPrinted,
}

impl KernelForm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Corrected => "corrected",
            Self::AsPrinted => "printed",
        }
    }

    fn d2(self) -> D2Form {
        match self {
            Self::Corrected => D2Form::Corrected,
            Self::AsPrinted => D2Form::AsPrinted,
        }
    }

    fn weights(self, p: f64, lambda: f64) -> OperatorWeights<f64> {
        match self {
            Self::Corrected => OperatorWeights::corrected(p, lambda),
            Self::AsPrinted => OperatorWeights::as_printed(p, lambda),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelOptions {
    pub points: usize,
    pub seed: u64,
    pub margin: f64,
    pub form: KernelForm,
    pub policy: TruncationPolicy,
    /// Closed vs series agreement.
    pub tol: f64,
    /// Route rows only gate when the series tail is below this fraction of |K|.
    pub max_tail_ratio: f64,
    pub symmetry_tol: f64,
    pub positivity_tol: f64,
    pub continuity_points: usize,
    pub continuity_tol: f64,
    pub gradient_points: usize,
    pub gradient_tol: f64,
    pub fd_step: f64,
}

impl Default for KernelOptions {
    fn default() -> Self {
        Self {
            points: 50,
            seed: 42,
            margin: 0.2,
            form: KernelForm::Corrected,
            policy: TruncationPolicy::default(),
            tol: 1e-6,
            max_tail_ratio: 1e-9,
            symmetry_tol: 1e-12,
            positivity_tol: 1e-10,
            continuity_points: 20,
            continuity_tol: 1e-6,
            gradient_points: 100,
            gradient_tol: 1e-6,
            fd_step: 1e-5,
        }
    }
}

type ClosedRoute<'a> = Box<dyn Fn(&[C]) -> Result<C> + Send + Sync + 'a>;
type SeriesRoute<'a> = Box<dyn Fn(&[C]) -> Result<KernelValue<f64>> + Send + Sync + 'a>;

/// The two kernel routes for one domain, as functions of ν.
struct Routes<'a> {
    closed: Option<ClosedRoute<'a>>,
    series: SeriesRoute<'a>,
    /// Independent reference used in place of a closed form (ellipsoid).
    reference_name: &'static str,
}

fn routes<'a>(domain: &'a DomainSpec<f64>, opts: &'a KernelOptions) -> Result<Routes<'a>> {
    let policy = opts.policy;
    Ok(match domain {
        DomainSpec::D1 { p, lambda } => {
            let (p, lambda) = (*p, *lambda);
            let weights = opts.form.weights(p, lambda);
            Routes {
                closed: Some(Box::new(move |nu| {
                    kernel_closed_d1_nu(nu, p, lambda, &weights).map(|k| k.value)
                })),
                series: Box::new(move |nu| kernel_series_d1_nu(nu, p, lambda, &policy)),
                reference_name: "closed",
            }
        }
        DomainSpec::D2 => {
            let form = opts.form.d2();
            Routes {
                closed: Some(Box::new(move |nu| {
                    kernel_closed_d2_nu(nu, form).map(|k| k.value)
                })),
                series: Box::new(move |nu| kernel_series_d2_nu(nu, &policy)),
                reference_name: "closed",
            }
        }
        DomainSpec::Ellipsoid { p } => {
            let p = p.clone();
            if p.iter().any(|&pj| pj < 1.0 || pj.fract() != 0.0) {
                return Err(Error::Usage(
                    "the ellipsoid kernel needs positive integer exponents".into(),
                ));
            }
            let ball = p.iter().all(|&pj| pj == 1.0);
            let q = p.clone();
            Routes {
                closed: Some(if ball {
                    Box::new(move |nu: &[C]| Ok(ball_kernel(nu)))
                } else {
                    Box::new(move |nu: &[C]| monomial_series_ellipsoid(nu, &q, &policy))
                }),
                series: Box::new(move |nu| kernel_series_ellipsoid_nu(nu, &p, &policy)),
                reference_name: if ball { "ball" } else { "monomial" },
            }
        }
    })
}

/// n!/πⁿ · (1 − Σν)^{−(n+1)}, the unit-ball kernel.
pub fn ball_kernel(nu: &[C]) -> C {
    let n = nu.len() as i32;
    let fact: f64 = (1..=nu.len()).map(|k| k as f64).product();
    let w = nu.iter().fold(C::new(1.0, 0.0), |acc, v| acc - v);
    w.powi(-(n + 1)) * (fact / PI.powi(n))
}

/// Σ ν^α / ‖z^α‖² on the ellipsoid, with
/// ‖z^α‖² = πⁿ ΠΓ((α_j+1)/p_j) / (Πp_j Γ(1 + Σ(α_j+1)/p_j)).
pub fn monomial_series_ellipsoid(nu: &[C], p: &[f64], policy: &TruncationPolicy) -> Result<C> {
    let n = p.len();
    let log_pre = p.iter().map(|pj| pj.ln()).sum::<f64>() - n as f64 * PI.ln();
    let mut failure = None;
    let outcome = sum_shells(n, policy, |m| {
        let mut log = log_pre;
        let mut total = 1.0;
        let mut mono = C::new(1.0, 0.0);
        for ((&mj, &pj), v) in m.iter().zip(p).zip(nu) {
            let x = (mj as f64 + 1.0) / pj;
            total += x;
            match log_gamma(x) {
                Ok(g) => log -= g,
                Err(e) => failure = Some(e),
            }
            mono *= v.powi(mj as i32);
        }
        match log_gamma(total) {
            Ok(g) => mono * (log + g).exp(),
            Err(e) => {
                failure = Some(e);
                C::new(0.0, 0.0)
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(outcome.into_result()?.value),
    }
}

fn pair_inputs(pair: &PointPair<f64>) -> Value {
    json!({"z": c64_vec_json(&pair.z), "zeta": c64_vec_json(&pair.zeta), "nu": c64_vec_json(&pair.nu())})
}

fn positivity_row(id: String, inputs: Value, value: Result<C>, tol: f64) -> ReportRow {
    match value {
        Ok(k) => {
            let mut row = ReportRow::compare(id, inputs, k, C::new(k.re, 0.0), tol);
            if k.re <= 0.0 {
                row.pass = false;
                row.error = Some("diagonal value is not positive".into());
            }
            row
        }
        Err(e) => ReportRow::failed(id, inputs, tol, e),
    }
}

struct Rows {
    gating: Vec<ReportRow>,
    informational: Vec<ReportRow>,
}

fn pair_rows(i: usize, pair: &PointPair<f64>, r: &Routes, opts: &KernelOptions) -> Rows {
    let mut gating = Vec::new();
    let mut informational = Vec::new();
    let nu = pair.nu();
    let nu_swapped = pair.swapped().nu();
    let inputs = pair_inputs(pair);
    let series = (r.series)(&nu);

    if let Some(closed) = &r.closed {
        let closed_val = closed(&nu);
        let id = format!("route/{i:04}");
        match (&closed_val, &series) {
            (Ok(k), Ok(s)) => {
                let mut inputs = inputs.clone();
                inputs["tail_estimate"] = json!(s.tail_estimate);
                let row = ReportRow::compare(id, inputs, *k, s.value, opts.tol);
                let tail_ok =
                    s.tail_estimate.unwrap_or(0.0) <= opts.max_tail_ratio * s.value.norm();
                if tail_ok {
                    gating.push(row);
                } else {
                    informational.push(row);
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                gating.push(ReportRow::failed(id, inputs.clone(), opts.tol, e))
            }
        }
        let sym_id = format!("symmetry/{}/{i:04}", r.reference_name);
        gating.push(ReportRow::from_results(
            sym_id,
            inputs.clone(),
            closed_val,
            closed(&nu_swapped).map(|k| k.conj()),
            opts.symmetry_tol,
        ));
    }
    gating.push(ReportRow::from_results(
        format!("symmetry/series/{i:04}"),
        inputs.clone(),
        series.map(|s| s.value),
        (r.series)(&nu_swapped).map(|s| s.value.conj()),
        opts.symmetry_tol,
    ));
    Rows {
        gating,
        informational,
    }
}

fn diagonal_rows(i: usize, z: &[C], r: &Routes, opts: &KernelOptions) -> Vec<ReportRow> {
    let diag = PointPair::diagonal(z.to_vec());
    let nu = diag.nu();
    let inputs = json!({"z": c64_vec_json(z)});
    let mut rows = vec![positivity_row(
        format!("positivity/series/{i:04}"),
        inputs.clone(),
        (r.series)(&nu).map(|s| s.value),
        opts.positivity_tol,
    )];
    if let Some(closed) = &r.closed {
        rows.push(positivity_row(
            format!("positivity/{}/{i:04}", r.reference_name),
            inputs,
            closed(&nu),
            opts.positivity_tol,
        ));
    }
    rows
}

fn continuity_rows(pairs: &[PointPair<f64>], r: &Routes, opts: &KernelOptions) -> Vec<ReportRow> {
    let Some(closed) = &r.closed else {
        return Vec::new();
    };
    pairs
        .iter()
        .take(opts.continuity_points)
        .enumerate()
        .map(|(i, pair)| {
            let mut at_zero = pair.nu();
            at_zero[2] = C::new(0.0, 0.0);
            let mut near = at_zero.clone();
            near[2] = C::new(1e-8, 0.0);
            let inputs = json!({"nu": c64_vec_json(&at_zero), "nu3_offset": 1e-8});
            ReportRow::from_results(
                format!("continuity/{i:04}"),
                inputs,
                closed(&near),
                closed(&at_zero),
                opts.continuity_tol,
            )
        })
        .collect()
}

fn gradient_rows(
    pairs: &[PointPair<f64>],
    p: f64,
    lambda: f64,
    opts: &KernelOptions,
) -> Vec<ReportRow> {
    let h = opts.fd_step;
    pairs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, pair)| {
            let nu = pair.nu();
            let nu4 = [nu[0], nu[1], nu[2], nu[3]];
            let g = |v: [C; 4]| g_closed_d1(&DualComplex::variables(v), p, lambda);
            let dual = g(nu4);
            (0..4)
                .map(|j| {
                    let id = format!("gradient/{i:04}/{}", j + 1);
                    let inputs = json!({"nu": c64_vec_json(&nu), "slot": j + 1, "step": h});
                    let mut plus = nu4;
                    let mut minus = nu4;
                    plus[j] += h;
                    minus[j] -= h;
                    let fd = match (g(plus), g(minus)) {
                        (Ok(a), Ok(b)) => Ok((a.val - b.val) / (2.0 * h)),
                        (Err(e), _) | (_, Err(e)) => Err(e),
                    };
                    ReportRow::from_results(
                        id,
                        inputs,
                        dual.clone().map(|d| d.grad[j]),
                        fd,
                        opts.gradient_tol,
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Value at ν = (1/4, 0, 0) that the D2 closed form under check claims.
pub fn d2_spot_value(form: KernelForm) -> f64 {
    match form {
        KernelForm::AsPrinted => 1792.0 / (27.0 * PI.powi(3)),
        KernelForm::Corrected => 2816.0 / (27.0 * PI.powi(3)),
    }
}

/// Closed form vs series on contraction-sampled pairs, plus Hermitian
/// symmetry, diagonal positivity, ν₃ → 0 continuity and (on D1) the dual
/// gradient of `G` against central differences.
pub fn verify_kernels(
    domain: &DomainSpec<f64>,
    opts: &KernelOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let r = routes(domain, opts)?;
    let pairs = sample_pairs(domain, opts.seed, opts.points, opts.margin)?;
    let interior = sample_interior(domain, opts.seed.wrapping_add(1), opts.points, opts.margin)?;

    let per_pair: Vec<Rows> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, pair)| pair_rows(i, pair, &r, opts))
        .collect();
    let mut rows = Vec::new();
    let mut informational = Vec::new();
    for pr in per_pair {
        rows.extend(pr.gating);
        informational.extend(pr.informational);
    }
    rows.extend(
        interior
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, z)| diagonal_rows(i, z, &r, opts))
            .collect::<Vec<_>>(),
    );

    let mut notes = Vec::new();
    if !matches!(domain, DomainSpec::Ellipsoid { .. }) {
        notes.push(format!("closed forms checked: {}", opts.form.name()));
    }
    match domain {
        DomainSpec::D1 { p, lambda } => {
            rows.extend(continuity_rows(&pairs, &r, opts));
            let grad_pairs = sample_pairs(
                domain,
                opts.seed.wrapping_add(2),
                opts.gradient_points,
                opts.margin,
            )?;
            rows.extend(gradient_rows(&grad_pairs, *p, *lambda, opts));
            let w = opts.form.weights(*p, *lambda);
            notes.push(format!("operator weights {:?}, prefactor p/π⁴", w.c));
        }
        DomainSpec::D2 => {
            rows.extend(continuity_rows(&pairs, &r, opts));
            let spot = [C::new(0.25, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)];
            let expected = C::new(d2_spot_value(opts.form), 0.0);
            let inputs = json!({"nu": c64_vec_json(&spot), "expected": c64_json(expected)});
            let closed = r.closed.as_ref().expect("D2 has a closed form");
            rows.push(ReportRow::from_results(
                "spot/closed",
                inputs.clone(),
                closed(&spot),
                Ok(expected),
                opts.tol,
            ));
            rows.push(ReportRow::from_results(
                "spot/series",
                inputs,
                (r.series)(&spot).map(|s| s.value),
                Ok(expected),
                opts.tol,
            ));
        }
        DomainSpec::Ellipsoid { .. } => {
            notes.push(format!(
                "series compared against the {} reference",
                r.reference_name
            ));
        }
    }
    if !informational.is_empty() {
        notes.push(format!(
            "{} route rows had a series tail above {:e}·|K| and were not gated",
            informational.len(),
            opts.max_tail_ratio
        ));
    }
    let ms = start.elapsed().as_millis() as u64;
    Ok(VerificationReport::new(
        "kernels",
        rows,
        informational,
        notes,
        ms,
    ))
}
