use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{c64_json, c64_vec_json, ReportRow, VerificationReport};
use crate::error::Result;
use crate::hypergeo::{
    appell_fa, closed_2f1_family, contiguous_relation_check, fa_decomposition_rhs,
    fa_equal_params_closed, gauss_2f1, lemma21_multisum, Closed2F1, ClosedForm, RelationForm,
    TruncationPolicy,
};

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityOptions {
    pub trials: usize,
    pub seed: u64,
    /// Tolerance for the multisum, closed forms I–III, collapse and decomposition.
    pub tol: f64,
    /// Tolerance for the relation-derived forms IV, V and the contiguous relation.
    pub relation_tol: f64,
    pub policy: TruncationPolicy,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        Self {
            trials: 200,
            seed: 7,
            tol: 1e-10,
            relation_tol: 1e-9,
            policy: TruncationPolicy::new(4000, 1e-13).expect("valid policy"),
        }
    }
}

type CasePair = (Result<Complex64>, Result<Complex64>);

struct Case {
    id: String,
    inputs: Value,
    gating: bool,
    tol: f64,
    eval: Box<dyn Fn(&TruncationPolicy) -> CasePair + Send + Sync>,
}

fn rng_for(seed: u64, group: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ group)
}

fn disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(
        radius * rng.gen::<f64>().sqrt(),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

/// `n` complex numbers with `Σ|x_i| ≤ budget`.
fn simplex(rng: &mut ChaCha8Rng, n: usize, budget: f64) -> Vec<Complex64> {
    let total = budget * rng.gen::<f64>();
    let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let sum: f64 = w.iter().sum();
    w.iter()
        .map(|wi| {
            Complex64::from_polar(total * wi / sum, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

fn value(r: Result<crate::hypergeo::SeriesValue<f64>>) -> Result<Complex64> {
    r.map(|s| s.value)
}

fn build_cases(opts: &IdentityOptions) -> Vec<Case> {
    let mut cases = Vec::new();
    let n = opts.trials;

    let mut rng = rng_for(opts.seed, 1);
    for t in 0..n {
        let r = 1 + t % 3;
        let a = rng.gen_range(0.5..6.0);
        let c = rng.gen_range(0.5..6.0);
        let x = simplex(&mut rng, r, 0.2);
        let sum: Complex64 = x.iter().sum();
        cases.push(Case {
            id: format!("lemma21/{t:04}"),
            inputs: json!({"a": a, "c": c, "x": c64_vec_json(&x)}),
            gating: true,
            tol: opts.tol,
            eval: Box::new(move |p| {
                (
                    value(lemma21_multisum(a, c, &x, p)),
                    value(gauss_2f1(a / 2.0, (a + 1.0) / 2.0, c, sum * 4.0, p)),
                )
            }),
        });
    }

    let mut rng = rng_for(opts.seed, 2);
    for variant in [
        Closed2F1::I,
        Closed2F1::II,
        Closed2F1::III,
        Closed2F1::IV,
        Closed2F1::V,
    ] {
        for t in 0..n {
            let a = rng.gen_range(0.5..6.0);
            let z = disk(&mut rng, 0.6);
            let (pa, pb, pc) = variant.parameters(a);
            let forms: &[ClosedForm] = match variant {
                Closed2F1::IV | Closed2F1::V => &[ClosedForm::Derived, ClosedForm::AsPrinted],
                _ => &[ClosedForm::Derived],
            };
            for &form in forms {
                let late = matches!(variant, Closed2F1::IV | Closed2F1::V);
                let tag = match form {
                    ClosedForm::Derived if late => "derived",
                    ClosedForm::Derived => "closed",
                    ClosedForm::AsPrinted => "printed",
                };
                cases.push(Case {
                    id: format!("closed_{}/{tag}/{t:04}", variant.label()),
                    inputs: json!({"a": a, "z": c64_json(z)}),
                    gating: form == ClosedForm::Derived,
                    tol: if late { opts.relation_tol } else { opts.tol },
                    eval: Box::new(move |p| {
                        (
                            closed_2f1_family(variant, a, z, form),
                            value(gauss_2f1(pa, pb, pc, z, p)),
                        )
                    }),
                });
            }
        }
    }

    let mut rng = rng_for(opts.seed, 3);
    for t in 0..n {
        let dim = 1 + t % 3;
        let a = rng.gen_range(0.5..6.0);
        let b: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.5..6.0)).collect();
        let z = simplex(&mut rng, dim, 0.5);
        cases.push(Case {
            id: format!("fa_collapse/{t:04}"),
            inputs: json!({"a": a, "b": b, "z": c64_vec_json(&z)}),
            gating: true,
            tol: opts.tol,
            eval: Box::new(move |p| {
                (
                    value(appell_fa(a, &b, &b, &z, p)),
                    fa_equal_params_closed(a, &z),
                )
            }),
        });
    }

    let mut rng = rng_for(opts.seed, 4);
    for t in 0..n {
        let r = 2 + t % 2;
        let a = rng.gen_range(0.5..6.0);
        let b1 = rng.gen_range(0.5..6.0);
        let c1 = rng.gen_range(0.5..6.0);
        let rest_b: Vec<f64> = (1..r).map(|_| rng.gen_range(0.5..6.0)).collect();
        let mut y = vec![disk(&mut rng, 0.3)];
        y.extend(simplex(&mut rng, r - 1, 0.3));
        let b: Vec<f64> = std::iter::once(b1).chain(rest_b.iter().copied()).collect();
        let c: Vec<f64> = std::iter::once(c1).chain(rest_b.iter().copied()).collect();
        cases.push(Case {
            id: format!("decomposition/{t:04}"),
            inputs: json!({"a": a, "b": b, "c": c, "y": c64_vec_json(&y)}),
            gating: true,
            tol: opts.tol,
            eval: Box::new(move |p| {
                (
                    value(fa_decomposition_rhs(a, b1, c1, &y, p)),
                    value(appell_fa(a, &b, &c, &y, p)),
                )
            }),
        });
    }

    let mut rng = rng_for(opts.seed, 5);
    for t in 0..n {
        let a = rng.gen_range(0.5..6.0);
        let z = disk(&mut rng, 0.6);
        for (form, tag) in [
            (RelationForm::Gauss, "gauss"),
            (RelationForm::AsPrinted, "printed"),
        ] {
            cases.push(Case {
                id: format!("relation/{tag}/{t:04}"),
                inputs: json!({"a": a, "z": c64_json(z)}),
                gating: form == RelationForm::Gauss,
                tol: opts.relation_tol,
                eval: Box::new(move |p| match contiguous_relation_check(a, z, form, p) {
                    Ok((lhs, rhs)) => (Ok(rhs), Ok(lhs)),
                    Err(e) => (Err(e.clone()), Err(e)),
                }),
            });
        }
    }
    cases
}

fn pass_count<'a>(rows: impl Iterator<Item = &'a ReportRow>) -> (usize, usize) {
    rows.fold((0, 0), |(p, t), r| (p + r.pass as usize, t + 1))
}

/// Multisum vs ₂F₁, closed forms vs series, F_A collapse, decomposition, and
/// the contiguous relation, on seeded random parameters.
pub fn verify_identities(opts: &IdentityOptions) -> VerificationReport {
    let start = Instant::now();
    let cases = build_cases(opts);
    let evaluated: Vec<(bool, ReportRow)> = cases
        .par_iter()
        .map(|case| {
            let (lhs, rhs) = (case.eval)(&opts.policy);
            (
                case.gating,
                ReportRow::from_results(&case.id, case.inputs.clone(), lhs, rhs, case.tol),
            )
        })
        .collect();
    let (gating, info): (Vec<_>, Vec<_>) = evaluated.into_iter().partition(|(g, _)| *g);
    let rows: Vec<ReportRow> = gating.into_iter().map(|(_, r)| r).collect();
    let informational: Vec<ReportRow> = info.into_iter().map(|(_, r)| r).collect();

    let mut notes = Vec::new();
    for prefix in ["closed_iv/printed", "closed_v/printed", "relation/printed"] {
        let (p, t) = pass_count(
            informational
                .iter()
                .filter(|r| r.case_id.starts_with(prefix)),
        );
        let verdict = if p == t {
            "agree with"
        } else {
            "do not agree with"
        };
        notes.push(format!(
            "{prefix}: typeset form passes {p}/{t} trials; the typeset expressions {verdict} the direct series"
        ));
    }
    let ms = start.elapsed().as_millis() as u64;
    VerificationReport::new("identities", rows, informational, notes, ms)
}
