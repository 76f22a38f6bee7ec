//! Seeded law-checking suites.
//!
//! Each trial derives its own RNG stream from the master seed and the trial
//! index, so any counterexample can be replayed in isolation: the summary
//! records the pretty-printed inputs, the evaluation point, both sides, and
//! the gap, and recomputing from the recorded text reproduces the gap
//! bit-identically.

use clifford_core::Multivector;
use curve_calculus::{
    continuity_check, default_fd_step, limit_probe, remainder_xi, trial_seed, CurveExpr,
    CurveSampler, ProbeConfig, ProductStar, SamplerConfig, Verdict,
};
use expr_dsl::pretty_print;

/// A law the CLI can exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Leibniz(ProductStar),
    SumRule,
    ChainRule,
    CauchySchwarz,
    Triangle,
    LimitLaws,
    Remainder,
    Continuity,
}

impl Law {
    pub fn parse(name: &str) -> Option<Law> {
        Some(match name {
            "sum-rule" => Law::SumRule,
            "chain-rule" => Law::ChainRule,
            "cauchy-schwarz" => Law::CauchySchwarz,
            "triangle" => Law::Triangle,
            "limit-laws" => Law::LimitLaws,
            "remainder" => Law::Remainder,
            "continuity" => Law::Continuity,
            _ => {
                let star_name = name.strip_prefix("leibniz:")?;
                let star = ProductStar::ALL
                    .into_iter()
                    .find(|s| s.name() == star_name)?;
                Law::Leibniz(star)
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Law::Leibniz(star) => format!("leibniz:{}", star.name()),
            Law::SumRule => "sum-rule".to_string(),
            Law::ChainRule => "chain-rule".to_string(),
            Law::CauchySchwarz => "cauchy-schwarz".to_string(),
            Law::Triangle => "triangle".to_string(),
            Law::LimitLaws => "limit-laws".to_string(),
            Law::Remainder => "remainder".to_string(),
            Law::Continuity => "continuity".to_string(),
        }
    }
}

/// Replayable counterexample.
#[derive(Debug, Clone)]
pub struct Failure {
    pub trial: usize,
    pub trial_seed: u64,
    /// Pretty-printed inputs (curves, factor primitives), in trial order.
    pub expressions: Vec<String>,
    pub lambda: f64,
    pub lhs: Multivector,
    pub rhs: Multivector,
    pub gap: f64,
    pub detail: String,
}

/// Suite outcome.
#[derive(Debug, Clone)]
pub struct CheckSummary {
    pub law: String,
    pub trials: usize,
    pub seed: u64,
    pub failures: Vec<Failure>,
    /// Largest gap observed across all trials, failing or not.
    pub max_gap: f64,
    /// Per-trial gap, for distribution plots.
    pub trial_gaps: Vec<f64>,
}

/// Tolerances shared by the suites.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerances {
    fn default() -> Tolerances {
        Tolerances {
            atol: 1e-9,
            rtol: 1e-6,
        }
    }
}

/// Runs `trials` seeded trials of one law at dimensions `1..=dim`.
pub fn run_check(law: Law, dim: usize, trials: usize, seed: u64, tol: Tolerances) -> CheckSummary {
    let mut summary = CheckSummary {
        law: law.name(),
        trials,
        seed,
        failures: Vec::new(),
        max_gap: 0.0,
        trial_gaps: Vec::with_capacity(trials),
    };
    for trial in 0..trials {
        let tseed = trial_seed(seed, trial as u64);
        let trial_dim = 1 + trial % dim.max(1);
        let outcome = run_trial(law, trial_dim, tseed, tol);
        summary.max_gap = summary.max_gap.max(outcome.gap);
        summary.trial_gaps.push(outcome.gap);
        if let Some(mut failure) = outcome.failure {
            failure.trial = trial;
            failure.trial_seed = tseed;
            summary.failures.push(failure);
        }
    }
    summary
}

struct TrialOutcome {
    gap: f64,
    failure: Option<Failure>,
}

impl TrialOutcome {
    fn pass(gap: f64) -> TrialOutcome {
        TrialOutcome { gap, failure: None }
    }

    fn fail(
        gap: f64,
        expressions: Vec<String>,
        lambda: f64,
        lhs: Multivector,
        rhs: Multivector,
        detail: impl Into<String>,
    ) -> TrialOutcome {
        TrialOutcome {
            gap,
            failure: Some(Failure {
                trial: 0,
                trial_seed: 0,
                expressions,
                lambda,
                lhs,
                rhs,
                gap,
                detail: detail.into(),
            }),
        }
    }
}

fn curve_sampler(dim: usize, seed: u64) -> CurveSampler {
    let cfg = SamplerConfig {
        max_depth: 6,
        ..SamplerConfig::with_dim(dim)
    };
    CurveSampler::new(seed, cfg)
}

fn run_trial(law: Law, dim: usize, tseed: u64, tol: Tolerances) -> TrialOutcome {
    match law {
        Law::Leibniz(star) => leibniz_trial(star, dim, tseed, tol),
        Law::SumRule => sum_rule_trial(dim, tseed, tol),
        Law::ChainRule => chain_rule_trial(dim, tseed, tol),
        Law::CauchySchwarz => cauchy_schwarz_trial(dim, tseed, tol),
        Law::Triangle => triangle_trial(dim, tseed, tol),
        Law::LimitLaws => limit_laws_trial(dim, tseed, tol),
        Law::Remainder => remainder_trial(dim, tseed),
        Law::Continuity => continuity_trial(dim, tseed),
    }
}

/// Both sides of the Leibniz identity for one product node, plus the
/// finite-difference arbiter. Exposed so counterexamples can be recomputed
/// from re-parsed expression text.
pub fn leibniz_sides(
    star: ProductStar,
    x: &CurveExpr,
    y: &CurveExpr,
    lambda: f64,
) -> Result<(Multivector, Multivector, Multivector), curve_calculus::EvalError> {
    let product = CurveExpr::product(star, x.clone(), y.clone());
    let lhs = product.derivative_symbolic().eval(lambda)?;
    let rhs = &star.apply(&x.derivative_symbolic().eval(lambda)?, &y.eval(lambda)?)
        + &star.apply(&x.eval(lambda)?, &y.derivative_symbolic().eval(lambda)?);
    let fd = product.derivative_fd(lambda, default_fd_step(lambda))?;
    Ok((lhs, rhs, fd))
}

fn leibniz_trial(star: ProductStar, dim: usize, tseed: u64, tol: Tolerances) -> TrialOutcome {
    let mut sampler = curve_sampler(dim, tseed);
    let (x, y, lambda) = sampler.curve_pair_at();
    let (lhs, rhs, fd) = match leibniz_sides(star, &x, &y, lambda) {
        Ok(sides) => sides,
        Err(e) => panic!("admissible trial failed to evaluate: {e}"),
    };
    let scale = 1.0 + lhs.norm();
    let gap_rule = (&lhs - &rhs).norm();
    let gap_fd = (&lhs - &fd).norm();
    let gap = gap_rule.max(gap_fd);
    if gap_rule <= tol.rtol * scale && gap_fd <= tol.rtol * scale {
        TrialOutcome::pass(gap)
    } else {
        TrialOutcome::fail(
            gap,
            vec![pretty_print(&x), pretty_print(&y)],
            lambda,
            lhs,
            rhs,
            format!("rule gap {gap_rule:e}, fd gap {gap_fd:e}"),
        )
    }
}

fn sum_rule_trial(dim: usize, tseed: u64, tol: Tolerances) -> TrialOutcome {
    let mut sampler = curve_sampler(dim, tseed);
    let (x, y, lambda) = sampler.curve_pair_at();
    let combined = CurveExpr::sum(x.clone(), y.clone());
    let lhs = combined.derivative_symbolic().eval(lambda).expect("admissible");
    let rhs = &x.derivative_symbolic().eval(lambda).expect("admissible")
        + &y.derivative_symbolic().eval(lambda).expect("admissible");
    let fd = combined
        .derivative_fd(lambda, default_fd_step(lambda))
        .expect("admissible");
    let scale = 1.0 + lhs.norm();
    let gap_rule = (&lhs - &rhs).norm();
    let gap_fd = (&lhs - &fd).norm();
    let gap = gap_rule.max(gap_fd);
    if gap_rule <= tol.rtol * scale && gap_fd <= tol.rtol * scale {
        TrialOutcome::pass(gap)
    } else {
        TrialOutcome::fail(
            gap,
            vec![pretty_print(&x), pretty_print(&y)],
            lambda,
            lhs,
            rhs,
            format!("rule gap {gap_rule:e}, fd gap {gap_fd:e}"),
        )
    }
}

fn chain_rule_trial(dim: usize, tseed: u64, tol: Tolerances) -> TrialOutcome {
    let mut sampler = curve_sampler(dim, tseed);
    // Resample until the reparametrized point is admissible for the curve.
    let (x, phi, lambda) = loop {
        let (x, lambda) = sampler.curve_at();
        let phi = sampler.primitive();
        let Ok(inner) = phi.eval(lambda) else { continue };
        let value_ok = x.eval(inner).map(|v| v.norm() <= 100.0).unwrap_or(false);
        let deriv_ok = x
            .derivative_ad(inner)
            .map(|d| d.norm() <= 100.0)
            .unwrap_or(false);
        if value_ok && deriv_ok {
            break (x, phi, lambda);
        }
    };
    let composed = CurveExpr::compose(x.clone(), phi.clone());
    let lhs = composed.derivative_symbolic().eval(lambda).expect("admissible");
    let inner = phi.eval(lambda).expect("checked");
    let slope = {
        let (c, d) = phi.derivative();
        c * d.eval(lambda).expect("checked")
    };
    let rhs = x
        .derivative_symbolic()
        .eval(inner)
        .expect("checked")
        .scale(slope);
    let scale = 1.0 + lhs.norm();
    let gap = (&lhs - &rhs).norm();
    if gap <= tol.rtol * scale {
        TrialOutcome::pass(gap)
    } else {
        TrialOutcome::fail(
            gap,
            vec![pretty_print(&composed), pretty_print(&x)],
            lambda,
            lhs,
            rhs,
            "chain rule mismatch",
        )
    }
}

fn cauchy_schwarz_trial(dim: usize, tseed: u64, tol: Tolerances) -> TrialOutcome {
    let mut sampler = curve_sampler(dim, tseed);
    let x = sampler.multivector(dim, 8);
    let y = sampler.multivector(dim, 8);
    let excess = x.scalar_product(&y).abs() - x.norm() * y.norm();
    if excess <= tol.atol {
        TrialOutcome::pass(excess.max(0.0))
    } else {
        TrialOutcome::fail(
            excess,
            vec![x.to_string(), y.to_string()],
            0.0,
            x,
            y,
            "Cauchy-Schwarz violated",
        )
    }
}

fn triangle_trial(dim: usize, tseed: u64, tol: Tolerances) -> TrialOutcome {
    let mut sampler = curve_sampler(dim, tseed);
    let x = sampler.multivector(dim, 8);
    let y = sampler.multivector(dim, 8);
    let excess = (&x + &y).norm() - (x.norm() + y.norm());
    if excess <= tol.atol {
        TrialOutcome::pass(excess.max(0.0))
    } else {
        TrialOutcome::fail(
            excess,
            vec![x.to_string(), y.to_string()],
            0.0,
            x,
            y,
            "triangle inequality violated",
        )
    }
}

/// Componentwise-limit semantics baked into the report: for a completed
/// probe, the limit-exists verdict must equal the conjunction of the
/// per-coefficient convergence flags (vacuously true for the zero curve).
/// A probe without enough in-domain samples may never claim a limit.
fn verdict_consistent(report: &curve_calculus::ProbeReport) -> bool {
    if report.trace.len() < 3 {
        return report.verdict != Verdict::LimitExists;
    }
    let conjunction = report.coefficients.iter().all(|c| c.converged);
    (report.verdict == Verdict::LimitExists) == conjunction
}

fn limit_laws_trial(dim: usize, tseed: u64, tol: Tolerances) -> TrialOutcome {
    let probe_cfg = ProbeConfig::default();
    let mut sampler = curve_sampler(dim, tseed);
    let (x, y, lambda0) = sampler.curve_pair_at();
    let lim_x = limit_probe(&x, lambda0, &probe_cfg);
    let lim_y = limit_probe(&y, lambda0, &probe_cfg);

    for (name, report) in [("x", &lim_x), ("y", &lim_y)] {
        if report.verdict != Verdict::LimitExists || !verdict_consistent(report) {
            return TrialOutcome::fail(
                f64::INFINITY,
                vec![pretty_print(&x), pretty_print(&y)],
                lambda0,
                report.estimate.clone(),
                Multivector::zero(dim),
                format!("operand `{name}` probe verdict {}", report.verdict.name()),
            );
        }
    }

    let mut worst: f64 = 0.0;
    let mut problem: Option<(String, Multivector, Multivector, f64)> = None;
    let mut consider = |name: &str, report: &curve_calculus::ProbeReport, assembled: Multivector| {
        let gap = (&report.estimate - &assembled).norm();
        worst = worst.max(gap);
        let within = gap <= tol.rtol * (1.0 + assembled.norm());
        if problem.is_none()
            && (!within
                || !verdict_consistent(report)
                || report.verdict != Verdict::LimitExists)
        {
            problem = Some((name.to_string(), report.estimate.clone(), assembled, gap));
        }
    };

    // Sum law (5.1a-style).
    let sum_probe = limit_probe(&CurveExpr::sum(x.clone(), y.clone()), lambda0, &probe_cfg);
    consider("sum", &sum_probe, &lim_x.estimate + &lim_y.estimate);

    // Scalar-multiple law with a continuous scalar factor.
    let phi = sampler.primitive();
    if let Ok(phi0) = phi.eval(lambda0) {
        let scaled = CurveExpr::scalar_scale(phi.clone(), x.clone());
        let scaled_probe = limit_probe(&scaled, lambda0, &probe_cfg);
        consider("scalar-multiple", &scaled_probe, lim_x.estimate.scale(phi0));
    }

    // Product law, cycling the star by trial seed.
    let star = ProductStar::ALL[(tseed % ProductStar::ALL.len() as u64) as usize];
    let prod_probe = limit_probe(
        &CurveExpr::product(star, x.clone(), y.clone()),
        lambda0,
        &probe_cfg,
    );
    consider(
        star.name(),
        &prod_probe,
        star.apply(&lim_x.estimate, &lim_y.estimate),
    );

    match problem {
        None => TrialOutcome::pass(worst),
        Some((name, lhs, rhs, gap)) => TrialOutcome::fail(
            gap,
            vec![pretty_print(&x), pretty_print(&y)],
            lambda0,
            lhs,
            rhs,
            format!("limit law `{name}` failed"),
        ),
    }
}

fn remainder_trial(dim: usize, tseed: u64) -> TrialOutcome {
    let mut sampler = curve_sampler(dim, tseed);
    let (curve, lambda0) = sampler.tame_curve_at();

    let at_base = remainder_xi(&curve, lambda0, lambda0).expect("admissible");
    if !at_base.is_zero() {
        return TrialOutcome::fail(
            at_base.norm(),
            vec![pretty_print(&curve)],
            lambda0,
            at_base,
            Multivector::zero(dim),
            "ξ(λ₀) not exactly zero",
        );
    }

    let h = 0.5f64.powi(20);
    let mut gap: f64 = 0.0;
    for sign in [1.0, -1.0] {
        match remainder_xi(&curve, lambda0, lambda0 + sign * h) {
            Ok(xi) => gap = gap.max(xi.norm()),
            Err(e) => panic!("admissible trial failed to evaluate: {e}"),
        }
    }
    if gap <= 1e-6 {
        TrialOutcome::pass(gap)
    } else {
        TrialOutcome::fail(
            gap,
            vec![pretty_print(&curve)],
            lambda0,
            Multivector::zero(dim),
            Multivector::zero(dim),
            format!("‖ξ(λ₀±2⁻²⁰)‖ = {gap:e} above 1e-6"),
        )
    }
}

fn continuity_trial(dim: usize, tseed: u64) -> TrialOutcome {
    let mut sampler = curve_sampler(dim, tseed);
    let (curve, lambda0) = sampler.curve_at();
    // Admissibility guarantees derivability; the probe must then agree.
    assert!(curve.derivative_ad(lambda0).is_ok());
    let report = continuity_check(&curve, lambda0, &ProbeConfig::default()).expect("admissible");
    if report.continuous {
        TrialOutcome::pass(report.gap)
    } else {
        TrialOutcome::fail(
            report.gap,
            vec![pretty_print(&curve)],
            lambda0,
            report.probe.estimate.clone(),
            report.value_at_point.clone(),
            format!("derivable but probe verdict {}", report.probe.verdict.name()),
        )
    }
}
