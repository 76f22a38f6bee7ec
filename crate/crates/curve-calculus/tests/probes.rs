//! Limit, continuity, and remainder probes on curves with known behavior.

use clifford_core::{BladeMask, Multivector};
use curve_calculus::{
    continuity_check, limit_probe, limit_probe_fn, remainder_xi, CurveExpr, CurveSampler,
    ProbeConfig, ProductStar, SamplerConfig, ScalarChain, ScalarPrimitive, Verdict,
};

fn e1() -> BladeMask {
    BladeMask::basis_vector(1)
}

/// `(sin λ / λ) · e1` in dim 1, undefined at λ = 0.
fn sinc_curve() -> CurveExpr {
    let sin = CurveExpr::scalar_times_blade(1, ScalarChain::single(ScalarPrimitive::Sin), e1());
    let inv = CurveExpr::scalar_times_blade(
        1,
        ScalarChain::single(ScalarPrimitive::Power(-1)),
        BladeMask::SCALAR,
    );
    CurveExpr::product(ProductStar::Geometric, sin, inv)
}

#[test]
fn classical_limit_of_sinc() {
    let report = limit_probe(&sinc_curve(), 0.0, &ProbeConfig::default());
    assert_eq!(report.verdict, Verdict::LimitExists);
    assert!(report.converged);
    assert!((&report.estimate - &Multivector::basis_blade(1, e1())).norm() < 1e-7);
    // Trace deltas strictly decrease.
    for pair in report.trace.windows(2) {
        assert!(pair[1].delta < pair[0].delta);
    }
}

#[test]
fn constant_curve_converges_immediately() {
    let value = Multivector::from_terms(2, [(BladeMask::SCALAR, 2.0), (e1(), -1.0)]);
    let report = limit_probe(
        &CurveExpr::constant(value.clone()),
        3.7,
        &ProbeConfig::default(),
    );
    assert_eq!(report.verdict, Verdict::LimitExists);
    assert!(report.converged);
    assert_eq!(report.estimate, value);
    assert!(report.trace.iter().skip(1).all(|s| s.norm_gap == 0.0));
}

#[test]
fn verdict_is_conjunction_of_coefficient_flags() {
    let mut sampler = CurveSampler::new(11, SamplerConfig::with_dim(3));
    for _ in 0..30 {
        let (curve, lambda0) = sampler.curve_at();
        let report = limit_probe(&curve, lambda0, &ProbeConfig::default());
        let conjunction = report.coefficients.iter().all(|c| c.converged);
        assert_eq!(
            report.verdict == Verdict::LimitExists,
            conjunction,
            "verdict/flags disagree at λ0={lambda0}"
        );
    }
}

#[test]
fn limit_laws_on_seeded_smooth_pairs() {
    let cfg = ProbeConfig::default();
    let mut sampler = CurveSampler::new(2211, SamplerConfig::with_dim(3));
    for trial in 0..25 {
        let (x, y, lambda0) = sampler.curve_pair_at();
        let lim_x = limit_probe(&x, lambda0, &cfg);
        let lim_y = limit_probe(&y, lambda0, &cfg);
        assert_eq!(lim_x.verdict, Verdict::LimitExists, "trial {trial}");
        assert_eq!(lim_y.verdict, Verdict::LimitExists, "trial {trial}");

        // Sum law.
        let lim_sum = limit_probe(&CurveExpr::sum(x.clone(), y.clone()), lambda0, &cfg);
        assert_eq!(lim_sum.verdict, Verdict::LimitExists);
        let gap = (&lim_sum.estimate - &(&lim_x.estimate + &lim_y.estimate)).norm();
        assert!(gap <= 1e-6 * (1.0 + lim_sum.estimate.norm()), "sum-law gap {gap}");

        // Product law for every star.
        for star in ProductStar::ALL {
            let combined = CurveExpr::product(star, x.clone(), y.clone());
            let lim_prod = limit_probe(&combined, lambda0, &cfg);
            assert_eq!(lim_prod.verdict, Verdict::LimitExists, "{}", star.name());
            let assembled = star.apply(&lim_x.estimate, &lim_y.estimate);
            let gap = (&lim_prod.estimate - &assembled).norm();
            assert!(
                gap <= 1e-6 * (1.0 + lim_prod.estimate.norm()),
                "{} law gap {gap}",
                star.name()
            );
        }

        // Scalar-multiple law with a continuous scalar factor.
        let phi = sampler.primitive();
        if phi.eval(lambda0).is_ok() {
            let scaled = CurveExpr::scalar_scale(phi.clone(), x.clone());
            let lim_scaled = limit_probe(&scaled, lambda0, &cfg);
            if lim_scaled.verdict == Verdict::LimitExists {
                let assembled = lim_x.estimate.scale(phi.eval(lambda0).unwrap());
                let gap = (&lim_scaled.estimate - &assembled).norm();
                assert!(gap <= 1e-6 * (1.0 + assembled.norm()), "scalar law gap {gap}");
            }
        }
    }
}

#[test]
fn step_function_diverges() {
    // Test-only step coefficient: sign(λ)·e1 has one-sided estimates
    // disagreeing by 2 in norm.
    let step = |lambda: f64| {
        Some(Multivector::from_terms(
            1,
            [(e1(), if lambda >= 0.0 { 1.0 } else { -1.0 })],
        ))
    };
    let report = limit_probe_fn(step, 1, 0.0, &ProbeConfig::default());
    assert_eq!(report.verdict, Verdict::Diverges);
    assert!(!report.converged);
    let trace = report
        .coefficients
        .iter()
        .find(|c| c.blade == e1())
        .unwrap();
    assert!(trace.diverged);
    assert!((trace.last_side_gap - 2.0).abs() < 1e-12);
}

#[test]
fn pole_blows_up() {
    // 1/λ · e1 at 0: averaged estimates cancel but the one-sided samples
    // explode, which must read as divergence, not a limit of zero.
    let inv = CurveExpr::scalar_times_blade(
        1,
        ScalarChain::single(ScalarPrimitive::Power(-1)),
        e1(),
    );
    let report = limit_probe(&inv, 0.0, &ProbeConfig::default());
    assert_eq!(report.verdict, Verdict::Diverges);
}

#[test]
fn out_of_domain_schedule_is_inconclusive() {
    // ln λ · e1 probed at −5: every sample point sits outside the domain.
    let curve =
        CurveExpr::scalar_times_blade(1, ScalarChain::single(ScalarPrimitive::Ln), e1());
    let report = limit_probe(&curve, -5.0, &ProbeConfig::default());
    assert_eq!(report.verdict, Verdict::Inconclusive);
    assert!(report.trace.is_empty());
}

#[test]
fn polynomial_curves_are_continuous() {
    let curve = CurveExpr::scalar_times_blade(
        2,
        ScalarChain::single(ScalarPrimitive::Polynomial(vec![1.0, -3.0, 0.5])),
        BladeMask::from_indices(&[1, 2]),
    );
    for lambda0 in [-2.0, -0.3, 0.0, 1.9] {
        let report = continuity_check(&curve, lambda0, &ProbeConfig::default()).unwrap();
        assert!(report.continuous, "not continuous at {lambda0}");
        assert!(report.gap < 1e-8);
    }
}

#[test]
fn step_function_is_not_continuous() {
    // Same step as above, assembled through the closure-based probe plus a
    // direct value comparison at 0.
    let step = |lambda: f64| {
        Some(Multivector::from_terms(
            1,
            [(e1(), if lambda >= 0.0 { 1.0 } else { -1.0 })],
        ))
    };
    let probe = limit_probe_fn(step, 1, 0.0, &ProbeConfig::default());
    assert_ne!(probe.verdict, Verdict::LimitExists);
}

#[test]
fn derivability_implies_continuity() {
    let mut sampler = CurveSampler::new(31, SamplerConfig::with_dim(3));
    for _ in 0..30 {
        let (curve, lambda0) = sampler.curve_at();
        assert!(curve.derivative_ad(lambda0).is_ok());
        let report = continuity_check(&curve, lambda0, &ProbeConfig::default()).unwrap();
        assert!(report.continuous, "derivable but not continuous at {lambda0}");
    }
}

#[test]
fn remainder_is_zero_at_the_base_point() {
    let mut sampler = CurveSampler::new(47, SamplerConfig::with_dim(2));
    let (curve, lambda0) = sampler.curve_at();
    let xi = remainder_xi(&curve, lambda0, lambda0).unwrap();
    assert!(xi.is_zero());
}

#[test]
fn remainder_of_linear_curve_vanishes_everywhere() {
    let curve = CurveExpr::scalar_times_blade(1, ScalarChain::identity(), e1());
    for lambda in [-2.0, -0.5, 0.1, 3.0] {
        let xi = remainder_xi(&curve, 1.0, lambda).unwrap();
        assert!(xi.norm() < 1e-12, "ξ({lambda}) = {xi}");
    }
}

#[test]
fn remainder_of_square_matches_hand_expansion() {
    // X = λ²e12 at λ0=1: (λ²-1)/(λ-1) - 2 = λ - 1, so ξ(1.5) = 0.5 e12.
    let curve = CurveExpr::scalar_times_blade(
        2,
        ScalarChain::single(ScalarPrimitive::Power(2)),
        BladeMask::from_indices(&[1, 2]),
    );
    let xi = remainder_xi(&curve, 1.0, 1.5).unwrap();
    let expected = Multivector::from_terms(2, [(BladeMask::from_indices(&[1, 2]), 0.5)]);
    assert!((&xi - &expected).norm() < 1e-12);
}

#[test]
fn remainder_shrinks_along_the_schedule() {
    let mut sampler = CurveSampler::new(53, SamplerConfig::with_dim(3));
    for _ in 0..20 {
        let (curve, lambda0) = sampler.tame_curve_at();
        let norms: Vec<f64> = (0..=20)
            .map(|k| {
                let h = 0.5f64.powi(k);
                remainder_xi(&curve, lambda0, lambda0 + h).unwrap().norm()
            })
            .collect();
        let first_below = norms
            .iter()
            .position(|&n| n < 1e-6)
            .expect("ξ never fell below tolerance");
        // Once below tolerance it stays below.
        assert!(norms[first_below..].iter().all(|&n| n < 1e-6));
        // Monotone decreasing on the tail above the tolerance, where the
        // h-linear term dominates floating-point noise.
        for k in 6..first_below {
            assert!(
                norms[k] <= norms[k - 1] * 1.001,
                "ξ grew at k={k}: {} > {}",
                norms[k],
                norms[k - 1]
            );
        }
    }
}
