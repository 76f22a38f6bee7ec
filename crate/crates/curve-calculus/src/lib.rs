//! Calculus for multivector-valued functions of one real variable.
//!
//! Curves `λ ↦ X(λ)` are immutable expression DAGs over the Euclidean
//! Clifford algebra from `clifford_core`. Three independent differentiation
//! paths cross-validate each other:
//!
//! * [`CurveExpr::derivative_symbolic`] — exact rewrite rules (sum rule,
//!   order-preserving Leibniz rule on every product, scalar chain rule);
//! * [`CurveExpr::derivative_ad`] — dual-number forward mode, exact because
//!   all four products are bilinear;
//! * [`CurveExpr::derivative_fd`] — central finite differences, the
//!   independent numeric oracle.
//!
//! Limits and continuity are probed numerically along a geometric
//! δ-schedule; see [`probe`]. Probe verdicts are evidence, not proofs.

mod expr;
mod generator;
mod probe;
mod scalar;

pub use expr::{default_fd_step, CurveExpr, CurveKind, ProductStar};
pub use generator::{trial_seed, CurveSampler, SamplerConfig};
pub use probe::{
    continuity_check, limit_probe, limit_probe_fn, remainder_xi, CoefficientTrace,
    ContinuityReport, ProbeConfig, ProbeReport, ProbeStep, Verdict,
};
pub use scalar::{DualScalar, EvalError, ScalarChain, ScalarPrimitive};
