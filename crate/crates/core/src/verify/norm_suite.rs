use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use super::report::{ReportRow, VerificationReport};
use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::norms::{norm_closed, norm_quadrature, MultiIndex};

pub const D1_P_GRID: [f64; 4] = [0.5, 1.0, 2.0, 2.5];
pub const D1_LAMBDA_GRID: [f64; 3] = [1.0, 2.0, 3.0];

#[derive(Debug, Clone, PartialEq)]
pub struct NormOptions {
    /// For D2 the bound on α₂, α₃; for D1 the bound on every component.
    pub max_index: i64,
    /// Upper end of the α₁ range on D2.
    pub d2_alpha1_max: i64,
    /// `(p, λ)` pairs checked on D1.
    pub d1_params: Vec<(f64, f64)>,
    pub tol: f64,
}

impl NormOptions {
    pub fn d2() -> Self {
        Self {
            max_index: 4,
            d2_alpha1_max: 6,
            d1_params: Vec::new(),
            tol: 1e-8,
        }
    }

    pub fn d1() -> Self {
        let d1_params = D1_P_GRID
            .iter()
            .flat_map(|&p| D1_LAMBDA_GRID.iter().map(move |&l| (p, l)))
            .collect();
        Self {
            max_index: 3,
            d2_alpha1_max: 6,
            d1_params,
            tol: 1e-8,
        }
    }
}

fn real(x: Result<f64>) -> Result<Complex64> {
    x.map(|v| Complex64::new(v, 0.0))
}

fn spec_inputs(spec: &DomainSpec<f64>, index: &MultiIndex) -> serde_json::Value {
    match spec {
        DomainSpec::D1 { p, lambda } => {
            json!({"p": p, "lambda": lambda, "alpha": index.as_slice()})
        }
        _ => json!({"alpha": index.as_slice()}),
    }
}

/// Closed-form monomial norms against the quadrature oracle.
///
/// On D2 the oracle is also asked for the index one step below the
/// admissible range, where it must report divergence; those checks are
/// informational.
pub fn verify_norms(domain: &DomainSpec<f64>, opts: &NormOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut queries: Vec<(String, DomainSpec<f64>, MultiIndex)> = Vec::new();
    let mut below_edge = Vec::new();
    match domain {
        DomainSpec::D2 => {
            for a2 in 0..=opts.max_index {
                for a3 in 0..=opts.max_index {
                    for a1 in (-2 - a2 - a3)..=opts.d2_alpha1_max {
                        let idx = MultiIndex::new(vec![a1, a2, a3]);
                        queries.push((
                            format!("d2/{:+03}_{a2:02}_{a3:02}", a1),
                            DomainSpec::D2,
                            idx,
                        ));
                    }
                    below_edge.push(MultiIndex::new(vec![-3 - a2 - a3, a2, a3]));
                }
            }
        }
        DomainSpec::D1 { .. } => {
            let params = if opts.d1_params.is_empty() {
                match domain {
                    DomainSpec::D1 { p, lambda } => vec![(*p, *lambda)],
                    _ => unreachable!(),
                }
            } else {
                opts.d1_params.clone()
            };
            let m = opts.max_index;
            for (p, l) in params {
                let spec = DomainSpec::d1(p, l)?;
                for a1 in 0..=m {
                    for a2 in 0..=m {
                        for a3 in 0..=m {
                            for a4 in 0..=m {
                                let idx = MultiIndex::new(vec![a1, a2, a3, a4]);
                                let id = format!("d1/p{p}_l{l}/{a1}{a2}{a3}{a4}");
                                queries.push((id, spec.clone(), idx));
                            }
                        }
                    }
                }
            }
        }
        DomainSpec::Ellipsoid { .. } => {
            return Err(Error::Usage("the norm suite covers d1 and d2 only".into()));
        }
    }

    let rows: Vec<ReportRow> = queries
        .par_iter()
        .map(|(id, spec, idx)| {
            ReportRow::from_results(
                id.clone(),
                spec_inputs(spec, idx),
                real(norm_closed(spec, idx)),
                real(norm_quadrature(spec, idx)),
                opts.tol,
            )
        })
        .collect();

    let mut notes = Vec::new();
    if !below_edge.is_empty() {
        let diverged = below_edge
            .iter()
            .filter(|idx| {
                matches!(
                    norm_quadrature(&DomainSpec::D2, idx),
                    Err(Error::Quadrature(_))
                )
            })
            .count();
        notes.push(format!(
            "oracle reports divergence for {diverged}/{} indices with α₁ one below the admissible range",
            below_edge.len()
        ));
    }
    let ms = start.elapsed().as_millis() as u64;
    Ok(VerificationReport::new(
        "norms",
        rows,
        Vec::new(),
        notes,
        ms,
    ))
}
