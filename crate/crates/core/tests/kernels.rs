use bergman_core::domains::{sample_pairs, DomainSpec, PointPair};
use bergman_core::hypergeo::TruncationPolicy;
use bergman_core::kernels::{
    d1_series_coefficient, d2_series_coefficient, g_closed_d1, g_series_d1, kernel_closed_d1,
    kernel_closed_d1_nu, kernel_closed_d2, kernel_closed_d2_nu, kernel_series_d1,
    kernel_series_d1_nu, kernel_series_d2, kernel_series_d2_nu, kernel_series_ellipsoid, D2Form,
    OperatorWeights,
};
use bergman_core::norms::{norm_closed, norm_quadrature, MultiIndex};
use bergman_core::numerics::{rel_err, DualComplex};
use bergman_core::verify::ball_kernel;
use bergman_core::{Complex64 as C, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn policy() -> TruncationPolicy {
    TruncationPolicy::new(400, 1e-10).unwrap()
}

/// `(ν, p, λ)` with `|ν₃| ≤ 0.15` whose absolutely summed series still has
/// ratio at most 0.5 in the `ν₁+ν₂` and `ν₄` directions, i.e. `|μ|` bounds
/// taken at the worst phase `ν₃ = −|ν₃|`.
fn d1_case() -> impl Strategy<Value = ([C; 4], f64, f64)> {
    (
        prop::sample::select(vec![1.0, 2.0, 0.5, 3.0]),
        prop::sample::select(vec![1.0, 2.0, 0.5, 4.0]),
        prop::collection::vec((0.0..1.0f64, -3.2..3.2f64), 4),
        0.0..1.0f64,
    )
        .prop_map(|(p, l, parts, split)| {
            let nu3 = C::from_polar(0.15 * parts[2].0, parts[2].1);
            let two_h = C::new(2.0 / (1.0 + (1.0 - 4.0 * nu3.norm()).sqrt()), 0.0);
            let r12 = 0.5 * parts[0].0 / two_h.powf(2.0 / p).norm();
            let r4 = 0.5 * parts[3].0 / two_h.powf(2.0 / l).norm();
            let nu = [
                C::from_polar(r12 * split, parts[0].1),
                C::from_polar(r12 * (1.0 - split), parts[1].1),
                nu3,
                C::from_polar(r4, parts[3].1),
            ];
            (nu, p, l)
        })
}

fn params() -> impl Strategy<Value = (f64, f64)> {
    (
        prop::sample::select(vec![1.0, 2.0, 0.5, 3.0]),
        prop::sample::select(vec![1.0, 2.0, 0.5, 4.0]),
    )
}

fn d2_nu() -> impl Strategy<Value = [C; 3]> {
    (
        0.05..0.8f64,
        0.0..1.0f64,
        0.0..0.8f64,
        prop::collection::vec(-3.2..3.2f64, 3),
    )
        .prop_map(|(r1, f2, f3, t)| {
            let n1 = C::from_polar(r1, t[0]);
            [
                n1,
                n1 * C::from_polar(f2 * (0.9 - r1).max(0.0), t[1]),
                n1 * C::from_polar(f3, t[2]),
            ]
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dual_gradient_matches_central_differences((nu, p, l) in d1_case()) {
        let vars = DualComplex::variables(nu);
        let g = g_closed_d1(&vars, p, l).unwrap();
        let h = 1e-5;
        for j in 0..4 {
            let eval = |d: f64| {
                let mut shifted = nu;
                shifted[j] += C::new(d, 0.0);
                g_closed_d1(&DualComplex::variables(shifted), p, l).unwrap().val
            };
            let fd = (eval(h) - eval(-h)) / (2.0 * h);
            prop_assert!(rel_err(g.grad[j], fd) < 1e-6 || (g.grad[j] - fd).norm() < 1e-8);
        }
    }

    #[test]
    fn closed_g_matches_series((nu, p, l) in d1_case()) {
        let vars = DualComplex::variables(nu);
        let closed = g_closed_d1(&vars, p, l).unwrap().val;
        let series = g_series_d1(&nu, p, l, &TruncationPolicy::new(2000, 1e-14).unwrap()).unwrap();
        prop_assert!(rel_err(closed, series) < 1e-10);
    }

    #[test]
    fn d1_closed_kernel_matches_series((nu, p, l) in d1_case()) {
        let closed = kernel_closed_d1_nu(&nu, p, l, &OperatorWeights::corrected(p, l)).unwrap().value;
        let series = kernel_series_d1_nu(&nu, p, l, &TruncationPolicy::new(2000, 1e-13).unwrap()).unwrap().value;
        prop_assert!(rel_err(closed, series) < 1e-9);
    }

    #[test]
    fn tighter_tail_moves_value_by_at_most_the_estimate(seed in any::<u64>(), (p, l) in params()) {
        let loose = TruncationPolicy::new(400, 1e-8).unwrap();
        let tight = TruncationPolicy::new(400, 5e-9).unwrap();
        let spec = DomainSpec::d1(p, l).unwrap();
        for pair in sample_pairs(&spec, seed, 3, 0.2).unwrap() {
            let a = kernel_series_d1(&pair, p, l, &loose).unwrap();
            let b = kernel_series_d1(&pair, p, l, &tight).unwrap();
            prop_assert!((a.value - b.value).norm() <= a.tail_estimate.unwrap());
        }
        for pair in sample_pairs(&DomainSpec::D2, seed, 3, 0.2).unwrap() {
            let a = kernel_series_d2(&pair, &loose).unwrap();
            let b = kernel_series_d2(&pair, &tight).unwrap();
            prop_assert!((a.value - b.value).norm() <= a.tail_estimate.unwrap());
        }
    }

    #[test]
    fn d2_closed_kernel_matches_series(nu in d2_nu()) {
        let closed = kernel_closed_d2_nu(&nu, D2Form::Corrected).unwrap().value;
        let series = kernel_series_d2_nu(&nu, &TruncationPolicy::new(2000, 1e-13).unwrap()).unwrap().value;
        prop_assert!(rel_err(closed, series) < 1e-9);
    }
}

#[test]
fn sampled_pairs_are_hermitian_and_positive_on_the_diagonal() {
    for (p, l) in [(1.0, 1.0), (2.0, 0.5)] {
        let spec = DomainSpec::d1(p, l).unwrap();
        for pair in sample_pairs(&spec, 11, 40, 0.2).unwrap() {
            let k = kernel_closed_d1(&pair, p, l).unwrap().value;
            let ks = kernel_closed_d1(&pair.swapped(), p, l).unwrap().value;
            assert!((k - ks.conj()).norm() <= 1e-12 * k.norm());
            let diag: bergman_core::Complex64 =
                kernel_closed_d1(&PointPair::diagonal(pair.z.clone()), p, l)
                    .unwrap()
                    .value;
            assert!(diag.re > 0.0 && diag.im.abs() <= 1e-10 * diag.re);
        }
    }
    for pair in sample_pairs(&DomainSpec::D2, 11, 40, 0.2).unwrap() {
        for k in [
            kernel_closed_d2(&pair, D2Form::Corrected).unwrap().value,
            kernel_series_d2(&pair, &policy()).unwrap().value,
        ] {
            let ks = kernel_closed_d2(&pair.swapped(), D2Form::Corrected)
                .unwrap()
                .value;
            assert!((k - ks.conj()).norm() <= 1e-8 * k.norm());
        }
        let diag: C = kernel_closed_d2(&PointPair::diagonal(pair.z.clone()), D2Form::Corrected)
            .unwrap()
            .value;
        assert!(diag.re > 0.0 && diag.im.abs() <= 1e-10 * diag.re);
    }
}

#[test]
fn d2_closed_kernel_matches_series_on_samples() {
    let pairs = sample_pairs(&DomainSpec::D2, 3, 60, 0.2).unwrap();
    for pair in pairs {
        let closed = kernel_closed_d2(&pair, D2Form::Corrected).unwrap().value;
        let series = kernel_series_d2(&pair, &TruncationPolicy::new(2000, 1e-13).unwrap())
            .unwrap()
            .value;
        assert!(rel_err(closed, series) < 1e-9, "{pair:?}");
    }
}

#[test]
fn d1_series_via_pairs_agrees_with_closed() {
    let spec = DomainSpec::d1(2.0, 2.0).unwrap();
    for pair in sample_pairs(&spec, 5, 30, 0.2).unwrap() {
        let closed = kernel_closed_d1(&pair, 2.0, 2.0).unwrap().value;
        let series = kernel_series_d1(&pair, 2.0, 2.0, &policy()).unwrap().value;
        assert!(rel_err(closed, series) < 1e-6);
    }
}

#[test]
fn d1_grouped_series_matches_plain_four_index_sum() {
    let nu = [
        C::new(0.06, 0.03),
        C::new(-0.04, 0.05),
        C::new(0.05, -0.03),
        C::new(0.1, 0.07),
    ];
    for (p, l) in [(1.0, 1.0), (2.0, 0.5), (0.5, 3.0)] {
        let mut brute = C::new(0.0, 0.0);
        let n = 40;
        for a1 in 0..n {
            for a2 in 0..n - a1 {
                for a3 in 0..n - a1 - a2 {
                    for a4 in 0..n - a1 - a2 - a3 {
                        let c = d1_series_coefficient(
                            &[a1 as i64, a2 as i64, a3 as i64, a4 as i64],
                            p,
                            l,
                        )
                        .unwrap();
                        brute += nu[0].powu(a1 as u32)
                            * nu[1].powu(a2 as u32)
                            * nu[2].powu(a3 as u32)
                            * nu[3].powu(a4 as u32)
                            * c;
                    }
                }
            }
        }
        let grouped = kernel_series_d1_nu(&nu, p, l, &TruncationPolicy::new(2000, 1e-14).unwrap())
            .unwrap()
            .value;
        assert!(
            rel_err(brute, grouped) < 1e-10,
            "p={p} λ={l}: {brute} vs {grouped}"
        );
    }
}

#[test]
fn coefficients_are_reciprocal_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..50 {
        let (p, l) = (rng.gen_range(0.3..4.0), rng.gen_range(0.3..4.0));
        let alpha: Vec<i64> = (0..4).map(|_| rng.gen_range(0..6)).collect();
        let spec = DomainSpec::d1(p, l).unwrap();
        let c: f64 = d1_series_coefficient(&alpha, p, l).unwrap();
        let n = norm_closed(&spec, &MultiIndex::new(alpha.clone())).unwrap();
        assert!((c * n - 1.0).abs() < 1e-12, "{alpha:?} p={p} λ={l}");
    }
    for _ in 0..50 {
        let (a2, a3) = (rng.gen_range(0..6usize), rng.gen_range(0..6usize));
        let k = rng.gen_range(0..8usize);
        let alpha1 = k as i64 - 2 - a2 as i64 - a3 as i64;
        let index = MultiIndex::new(vec![alpha1, a2 as i64, a3 as i64]);
        let c: f64 = d2_series_coefficient(k, a2, a3);
        let n = norm_quadrature(&DomainSpec::D2, &index).unwrap();
        assert!((c * n - 1.0).abs() < 1e-9, "{index}");
    }
}

#[test]
fn d1_value_is_continuous_across_nu3_zero() {
    let base = [
        C::new(0.1, 0.2),
        C::new(-0.15, 0.05),
        C::new(0.0, 0.0),
        C::new(0.3, -0.1),
    ];
    let w = OperatorWeights::corrected(1.5, 2.0);
    let at_zero = kernel_closed_d1_nu(&base, 1.5, 2.0, &w).unwrap().value;
    for eps in [1e-4, 1e-6, 1e-8, 1e-12] {
        let mut nu = base;
        nu[2] = C::new(eps, eps);
        let near = kernel_closed_d1_nu(&nu, 1.5, 2.0, &w).unwrap().value;
        assert!(rel_err(near, at_zero) < 100.0 * eps, "ε={eps}");
    }
}

#[test]
fn unit_ball_series_matches_closed_kernel() {
    let spec = DomainSpec::ellipsoid(vec![1.0, 1.0, 1.0]).unwrap();
    let policy = TruncationPolicy::new(2000, 1e-13).unwrap();
    for pair in sample_pairs(&spec, 8, 30, 0.2).unwrap() {
        let series = kernel_series_ellipsoid(&pair, &[1.0, 1.0, 1.0], &policy)
            .unwrap()
            .value;
        let nu = pair.nu();
        let s: C = nu.iter().sum();
        let expected = (C::new(1.0, 0.0) - s).powf(-4.0) * (6.0 / std::f64::consts::PI.powi(3));
        assert!(rel_err(series, expected) < 1e-9);
    }
    let pair =
        &sample_pairs(&DomainSpec::ellipsoid(vec![1.0, 1.0]).unwrap(), 1, 1, 0.2).unwrap()[0];
    let series = kernel_series_ellipsoid(pair, &[1.0, 1.0], &policy)
        .unwrap()
        .value;
    assert!(rel_err(series, ball_kernel(&pair.nu())) < 1e-9);
}

#[test]
fn region_violations_are_reported() {
    let far = [
        C::new(0.6, 0.0),
        C::new(0.6, 0.0),
        C::new(0.0, 0.0),
        C::new(0.0, 0.0),
    ];
    assert!(matches!(
        kernel_series_d1_nu(&far, 1.0, 1.0, &policy()),
        Err(Error::NonConvergence { .. })
    ));
    assert!(matches!(
        kernel_closed_d1_nu(&far, 1.0, 1.0, &OperatorWeights::corrected(1.0, 1.0)),
        Err(Error::Region(_))
    ));
    assert!(matches!(
        kernel_series_d2_nu(
            &[C::new(0.0, 0.0), C::new(0.1, 0.0), C::new(0.0, 0.0)],
            &policy()
        ),
        Err(Error::Usage(_))
    ));
}

#[test]
fn single_precision_smoke() {
    let nu = [
        num_complex::Complex::<f32>::new(0.1, 0.0),
        num_complex::Complex::new(0.05, 0.02),
        num_complex::Complex::new(0.01, 0.0),
        num_complex::Complex::new(0.2, -0.1),
    ];
    let w = OperatorWeights::corrected(1.0f32, 1.0);
    let closed = kernel_closed_d1_nu(&nu, 1.0f32, 1.0, &w).unwrap().value;
    let series = kernel_series_d1_nu(&nu, 1.0f32, 1.0, &TruncationPolicy::new(400, 1e-5).unwrap())
        .unwrap()
        .value;
    assert!((closed - series).norm() / closed.norm() < 1e-4);
}
