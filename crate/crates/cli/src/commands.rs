use std::fs;

use bergman_core::domains::{DomainSpec, PointPair};
use bergman_core::hypergeo::TruncationPolicy;
use bergman_core::kernels::{
    kernel_closed_d1_nu, kernel_closed_d2_nu, kernel_series_d1_nu, kernel_series_d2_nu,
    kernel_series_ellipsoid_nu, D2Form, OperatorWeights,
};
use bergman_core::norms::{norm_closed, norm_quadrature, MultiIndex};
use bergman_core::verify::{
    verify_identities, verify_kernels, verify_norms, IdentityOptions, KernelForm, KernelOptions,
    NormOptions, VerificationReport,
};
use bergman_core::{Complex64, Domain, Error, Kernel, Result};
use serde_json::json;

use crate::args::{
    DomainArg, DomainArgs, EvalArgs, FormArg, MethodArg, NormArgs, ReportArgs, ReportFormat,
    SeriesArgs, Suite, ValueFormat,
};
use crate::parse::{parse_complex_list, parse_index, parse_real_list};

/// Whether a command's checks all passed.
pub enum Outcome {
    Pass,
    Fail,
}

fn domain_spec(args: &DomainArgs) -> Result<Domain> {
    let p = args.p.as_deref().map(parse_real_list).transpose()?;
    match args.domain {
        DomainArg::D2 => Ok(DomainSpec::D2),
        DomainArg::D1 => {
            let p = match p.as_deref() {
                Some([p]) => *p,
                Some(_) => return Err(Error::Usage("d1 takes a single --p".into())),
                None => return Err(Error::Usage("d1 needs --p and --lambda".into())),
            };
            let lambda = args
                .lambda
                .ok_or_else(|| Error::Usage("d1 needs --p and --lambda".into()))?;
            DomainSpec::d1(p, lambda)
        }
        DomainArg::Ellipsoid => {
            let p = p.ok_or_else(|| Error::Usage("ellipsoid needs --p p1,...,pn".into()))?;
            DomainSpec::ellipsoid(p)
        }
    }
}

fn policy(args: &SeriesArgs) -> Result<TruncationPolicy> {
    TruncationPolicy::new(args.max_degree, args.tail_tol)
}

fn kernel_form(form: FormArg) -> KernelForm {
    match form {
        FormArg::Corrected => KernelForm::Corrected,
        FormArg::Printed => KernelForm::AsPrinted,
    }
}

fn fmt_complex(c: Complex64) -> String {
    format!("{:.16e}{:+.16e}j", c.re, c.im)
}

pub fn eval(args: &EvalArgs) -> Result<Outcome> {
    let spec = domain_spec(&args.domain)?;
    let nu = match (&args.nu, &args.z, &args.zeta) {
        (Some(nu), _, _) => parse_complex_list(nu)?,
        (None, Some(z), Some(zeta)) => {
            PointPair::new(parse_complex_list(z)?, parse_complex_list(zeta)?)?.nu()
        }
        _ => {
            return Err(Error::Usage(
                "give either --nu or both --z and --zeta".into(),
            ))
        }
    };
    if nu.len() != spec.dimension() {
        return Err(Error::Usage(format!(
            "{} needs {} components, got {}",
            spec.name(),
            spec.dimension(),
            nu.len()
        )));
    }
    let policy = policy(&args.series)?;
    let form = kernel_form(args.form);
    let value: Kernel = match (&spec, args.method) {
        (DomainSpec::D1 { p, lambda }, MethodArg::Closed) => {
            let weights = match form {
                KernelForm::Corrected => OperatorWeights::corrected(*p, *lambda),
                KernelForm::AsPrinted => OperatorWeights::as_printed(*p, *lambda),
            };
            kernel_closed_d1_nu(&nu, *p, *lambda, &weights)?
        }
        (DomainSpec::D1 { p, lambda }, MethodArg::Series) => {
            kernel_series_d1_nu(&nu, *p, *lambda, &policy)?
        }
        (DomainSpec::D2, MethodArg::Closed) => {
            let form = match form {
                KernelForm::Corrected => D2Form::Corrected,
                KernelForm::AsPrinted => D2Form::AsPrinted,
            };
            kernel_closed_d2_nu(&nu, form)?
        }
        (DomainSpec::D2, MethodArg::Series) => kernel_series_d2_nu(&nu, &policy)?,
        (DomainSpec::Ellipsoid { .. }, MethodArg::Closed) => {
            return Err(Error::Usage(
                "the ellipsoid kernel is only available as a series".into(),
            ))
        }
        (DomainSpec::Ellipsoid { p }, MethodArg::Series) => {
            kernel_series_ellipsoid_nu(&nu, p, &policy)?
        }
    };
    match args.format {
        ValueFormat::Text => {
            println!("value: {}", fmt_complex(value.value));
            println!("method: {}", value.method.name());
            if let Some(t) = value.tail_estimate {
                println!("tail_estimate: {t:e}");
            }
            if let Some(s) = value.shells_used {
                println!("shells_used: {s}");
            }
        }
        ValueFormat::Json => {
            let out = json!({
                "domain": spec.name(),
                "value": {"re": value.value.re, "im": value.value.im},
                "method": value.method.name(),
                "tail_estimate": value.tail_estimate,
                "shells_used": value.shells_used,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("finite values")
            );
        }
    }
    Ok(Outcome::Pass)
}

fn emit(report: &VerificationReport, args: &ReportArgs) -> Result<Outcome> {
    let text = match args.format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Csv => report.to_csv(),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
            let s = &report.summary;
            println!(
                "{}: {}/{} passed, max rel err {:e}, {} ms -> {}",
                report.suite,
                s.passed,
                s.total,
                s.max_rel_err,
                s.wall_time_ms,
                path.display()
            );
            for note in &report.notes {
                println!("note: {note}");
            }
        }
        None => println!("{text}"),
    }
    Ok(if report.all_passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

pub fn verify(suite: &Suite) -> Result<Outcome> {
    match suite {
        Suite::Identities {
            trials,
            seed,
            tol,
            relation_tol,
            max_degree,
            tail_tol,
            report,
        } => {
            let defaults = IdentityOptions::default();
            let opts = IdentityOptions {
                trials: *trials,
                seed: *seed,
                tol: tol.unwrap_or(defaults.tol),
                relation_tol: relation_tol.unwrap_or(defaults.relation_tol),
                policy: TruncationPolicy::new(*max_degree, *tail_tol)?,
            };
            emit(&verify_identities(&opts), report)
        }
        Suite::Norms {
            domain,
            max_index,
            tol,
            report,
        } => {
            let spec = match (domain.domain, &domain.p, domain.lambda) {
                // Without parameters, d1 runs the full (p, λ) grid.
                (DomainArg::D1, None, None) => DomainSpec::d1(1.0, 1.0)?,
                _ => domain_spec(domain)?,
            };
            let mut opts = match spec {
                DomainSpec::D1 { p, lambda } => {
                    let mut o = NormOptions::d1();
                    if domain.p.is_some() {
                        o.d1_params = vec![(p, lambda)];
                    }
                    o
                }
                _ => NormOptions::d2(),
            };
            if let Some(m) = max_index {
                opts.max_index = *m;
            }
            if let Some(t) = tol {
                opts.tol = *t;
            }
            emit(&verify_norms(&spec, &opts)?, report)
        }
        Suite::Kernels {
            domain,
            points,
            seed,
            margin,
            tol,
            form,
            series,
            report,
        } => {
            let spec = domain_spec(domain)?;
            let defaults = KernelOptions::default();
            let opts = KernelOptions {
                points: *points,
                seed: *seed,
                margin: *margin,
                tol: tol.unwrap_or(defaults.tol),
                form: kernel_form(*form),
                policy: policy(series)?,
                ..defaults
            };
            emit(&verify_kernels(&spec, &opts)?, report)
        }
    }
}

pub fn norm(args: &NormArgs) -> Result<Outcome> {
    let spec = domain_spec(&args.domain)?;
    let index = MultiIndex::new(parse_index(&args.alpha)?);
    let closed = norm_closed(&spec, &index)?;
    println!("norm: {closed:.16e}");
    if !args.oracle {
        return Ok(Outcome::Pass);
    }
    let oracle = norm_quadrature(&spec, &index)?;
    let rel = (closed - oracle).abs() / oracle.abs();
    println!("oracle: {oracle:.16e}");
    println!("rel_err: {rel:e}");
    Ok(if rel <= args.tol {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
