//! Numeric limit and continuity probes.
//!
//! The ε-δ clauses of the limit definition are not decidable by sampling, so
//! probes report *evidence*: a geometric δ-schedule is walked from both sides
//! of the target point, the two one-sided samples are averaged per step, and
//! convergence of the estimate sequence is judged per blade coefficient. The
//! overall verdict is exactly the conjunction of the per-coefficient flags —
//! a limit exists iff every ordinary coefficient limit exists — with jump
//! discontinuities caught by the one-sided disagreement and blowups by a
//! norm ceiling.

use clifford_core::{BladeMask, Multivector};

use crate::expr::CurveExpr;
use crate::scalar::EvalError;

/// Schedule and tolerances for a probe run.
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    /// First δ of the schedule `δ_k = delta0 · 2^{-k}`.
    pub delta0: f64,
    /// Number of schedule steps (`k = 0 .. steps`).
    pub steps: usize,
    /// Convergence tolerance on successive-estimate gaps.
    pub tol: f64,
    /// Relative tolerance on the final left/right disagreement; larger
    /// disagreement marks a jump (no limit).
    pub side_tol: f64,
    /// One-sided estimates beyond this magnitude count as divergence.
    pub blowup: f64,
    /// Relative tolerance for the continuity comparison against `X(λ₀)`.
    pub match_tol: f64,
}

impl Default for ProbeConfig {
    fn default() -> ProbeConfig {
        ProbeConfig {
            delta0: 0.5,
            steps: 21,
            tol: 1e-7,
            side_tol: 1e-4,
            blowup: 1e6,
            match_tol: 1e-6,
        }
    }
}

/// Probe outcome. Verdicts are numerical evidence, not proofs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    LimitExists,
    Diverges,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::LimitExists => "limit-exists",
            Verdict::Diverges => "diverges",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// One schedule step that evaluated on both sides.
#[derive(Debug, Clone)]
pub struct ProbeStep {
    pub delta: f64,
    /// Two-sided average `(X(λ₀+δ) + X(λ₀-δ)) / 2`.
    pub estimate: Multivector,
    /// `‖estimate_k - estimate_{k-1}‖`; infinite on the first step.
    pub norm_gap: f64,
    /// `‖X(λ₀+δ) - X(λ₀-δ)‖`.
    pub side_gap: f64,
}

/// Convergence evidence for a single blade coefficient.
#[derive(Debug, Clone)]
pub struct CoefficientTrace {
    pub blade: BladeMask,
    /// Last two successive-average gaps both below tolerance, sides in
    /// agreement, everything finite and bounded.
    pub converged: bool,
    /// Definitive divergence: persistent one-sided disagreement or blowup.
    pub diverged: bool,
    pub last_gap: f64,
    pub last_side_gap: f64,
}

/// Full record of a limit probe.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    /// Final averaged estimate (zero multivector when nothing evaluated).
    pub estimate: Multivector,
    pub trace: Vec<ProbeStep>,
    pub coefficients: Vec<CoefficientTrace>,
    /// All coefficients converged and the aggregate norm gaps closed.
    pub converged: bool,
    pub verdict: Verdict,
}

struct SidePair {
    delta: f64,
    left: Multivector,
    right: Multivector,
    average: Multivector,
}

/// Probes `lim_{λ→λ₀} f(λ)` for an arbitrary sampled function. Sample
/// points outside the domain return `None` and are skipped; if fewer than
/// three schedule steps survive the verdict is inconclusive.
pub fn limit_probe_fn(
    f: impl Fn(f64) -> Option<Multivector>,
    dim: usize,
    lambda0: f64,
    config: &ProbeConfig,
) -> ProbeReport {
    let mut pairs: Vec<SidePair> = Vec::with_capacity(config.steps);
    for k in 0..config.steps {
        let delta = config.delta0 * 0.5f64.powi(k as i32);
        let right = f(lambda0 + delta);
        let left = f(lambda0 - delta);
        if let (Some(left), Some(right)) = (left, right) {
            let average = (&left + &right).scale(0.5);
            pairs.push(SidePair {
                delta,
                left,
                right,
                average,
            });
        }
    }
    assemble_report(dim, pairs, config)
}

/// Probes `lim_{λ→λ₀} X(λ)` for a curve expression.
pub fn limit_probe(expr: &CurveExpr, lambda0: f64, config: &ProbeConfig) -> ProbeReport {
    limit_probe_fn(|x| expr.eval(x).ok(), expr.dim(), lambda0, config)
}

fn assemble_report(dim: usize, pairs: Vec<SidePair>, config: &ProbeConfig) -> ProbeReport {
    let trace: Vec<ProbeStep> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| ProbeStep {
            delta: p.delta,
            estimate: p.average.clone(),
            norm_gap: if i == 0 {
                f64::INFINITY
            } else {
                (&p.average - &pairs[i - 1].average).norm()
            },
            side_gap: (&p.right - &p.left).norm(),
        })
        .collect();

    if pairs.len() < 3 {
        let estimate = pairs
            .last()
            .map(|p| p.average.clone())
            .unwrap_or_else(|| Multivector::zero(dim));
        return ProbeReport {
            estimate,
            trace,
            coefficients: Vec::new(),
            converged: false,
            verdict: Verdict::Inconclusive,
        };
    }

    let last = &pairs[pairs.len() - 1];
    let prev = &pairs[pairs.len() - 2];
    let prev2 = &pairs[pairs.len() - 3];

    // Union of blades seen anywhere in the sampled sequence.
    let mut blades: Vec<BladeMask> = pairs
        .iter()
        .flat_map(|p| {
            p.left
                .terms()
                .chain(p.right.terms())
                .map(|(mask, _)| mask)
        })
        .collect();
    blades.sort();
    blades.dedup();

    let mut coefficients = Vec::with_capacity(blades.len());
    for blade in blades {
        let est = last.average.coefficient(blade);
        let gap1 = (est - prev.average.coefficient(blade)).abs();
        let gap2 = (prev.average.coefficient(blade) - prev2.average.coefficient(blade)).abs();
        let side_gap = (last.right.coefficient(blade) - last.left.coefficient(blade)).abs();

        let finite = est.is_finite()
            && last.left.coefficient(blade).is_finite()
            && last.right.coefficient(blade).is_finite();
        let sides_agree = side_gap <= config.side_tol * (1.0 + est.abs());
        let blown_up = last.left.coefficient(blade).abs() > config.blowup
            || last.right.coefficient(blade).abs() > config.blowup;

        let diverged = finite && (!sides_agree || blown_up);
        let converged =
            finite && sides_agree && !blown_up && gap1 < config.tol && gap2 < config.tol;
        coefficients.push(CoefficientTrace {
            blade,
            converged,
            diverged,
            last_gap: gap1,
            last_side_gap: side_gap,
        });
    }

    let all_converged = coefficients.iter().all(|c| c.converged);
    let any_diverged = coefficients.iter().any(|c| c.diverged);
    let norm_gaps_closed = trace[trace.len() - 1].norm_gap < config.tol
        && trace[trace.len() - 2].norm_gap < config.tol;

    let verdict = if all_converged {
        Verdict::LimitExists
    } else if any_diverged {
        Verdict::Diverges
    } else {
        Verdict::Inconclusive
    };

    ProbeReport {
        estimate: last.average.clone(),
        trace,
        coefficients,
        converged: all_converged && norm_gaps_closed,
        verdict,
    }
}

/// Continuity evidence: the limit probe plus the comparison against the
/// actual value at the point.
#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub probe: ProbeReport,
    pub value_at_point: Multivector,
    /// `‖estimate - X(λ₀)‖`.
    pub gap: f64,
    /// Limit exists and matches the value within `match_tol`.
    pub continuous: bool,
}

/// Checks `lim X(λ) = X(λ₀)` numerically. `λ₀` itself must be evaluable.
pub fn continuity_check(
    expr: &CurveExpr,
    lambda0: f64,
    config: &ProbeConfig,
) -> Result<ContinuityReport, EvalError> {
    let value_at_point = expr.eval(lambda0)?;
    let probe = limit_probe(expr, lambda0, config);
    let gap = (&probe.estimate - &value_at_point).norm();
    let continuous = probe.verdict == Verdict::LimitExists
        && gap <= config.match_tol * (1.0 + value_at_point.norm());
    Ok(ContinuityReport {
        probe,
        value_at_point,
        gap,
        continuous,
    })
}

/// First-order Taylor residual `ξ_{λ₀}(λ)`: the difference quotient minus
/// the derivative, and exactly zero at `λ = λ₀`. For a derivable curve it
/// vanishes continuously as `λ → λ₀`.
pub fn remainder_xi(expr: &CurveExpr, lambda0: f64, lambda: f64) -> Result<Multivector, EvalError> {
    if lambda == lambda0 {
        return Ok(Multivector::zero(expr.dim()));
    }
    let derivative = expr.derivative_ad(lambda0)?;
    let quotient = (&expr.eval(lambda)? - &expr.eval(lambda0)?).scale(1.0 / (lambda - lambda0));
    Ok(&quotient - &derivative)
}
