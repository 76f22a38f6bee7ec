//! Curves `λ ↦ X(λ)` as immutable expression DAGs.
//!
//! Nodes are shared through `Arc`, so cloning a curve or taking its symbolic
//! derivative (which reuses operands) stays cheap. Construction enforces a
//! single ambient dimension across the whole DAG; composition only admits a
//! scalar reparametrization inside, so curve-in-curve composition cannot be
//! expressed at all.

use std::sync::Arc;

use clifford_core::{BladeMask, Multivector};

use crate::scalar::{DualScalar, EvalError, ScalarChain, ScalarPrimitive};

/// The product placed on a [`CurveKind::Product`] node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductStar {
    Wedge,
    Scalar,
    LeftContraction,
    RightContraction,
    Geometric,
}

impl ProductStar {
    pub const ALL: [ProductStar; 5] = [
        ProductStar::Wedge,
        ProductStar::Scalar,
        ProductStar::LeftContraction,
        ProductStar::RightContraction,
        ProductStar::Geometric,
    ];

    /// Applies the product to evaluated operands. The scalar product lands
    /// in the grade-0 part of the result multivector.
    pub fn apply(self, x: &Multivector, y: &Multivector) -> Multivector {
        match self {
            ProductStar::Wedge => x.wedge(y),
            ProductStar::Scalar => Multivector::scalar(x.dim(), x.scalar_product(y)),
            ProductStar::LeftContraction => x.left_contraction(y),
            ProductStar::RightContraction => x.right_contraction(y),
            ProductStar::Geometric => x.geometric(y),
        }
    }

    /// Stable short name, also used by the CLI (`leibniz:<name>`).
    pub fn name(self) -> &'static str {
        match self {
            ProductStar::Wedge => "wedge",
            ProductStar::Scalar => "scalar",
            ProductStar::LeftContraction => "lcontr",
            ProductStar::RightContraction => "rcontr",
            ProductStar::Geometric => "geometric",
        }
    }
}

/// Node of a curve expression.
#[derive(Debug)]
pub enum CurveKind {
    /// Constant multivector.
    Constant(Multivector),
    /// `λ ↦ chain(λ) · e_blade`.
    ScalarTimesBlade { chain: ScalarChain, blade: BladeMask },
    /// Pointwise sum.
    Sum(CurveExpr, CurveExpr),
    /// Pointwise product under the node's star.
    Product {
        star: ProductStar,
        left: CurveExpr,
        right: CurveExpr,
    },
    /// `λ ↦ factor(λ) · X(λ)`, a scalar function times the curve.
    ScalarScale { factor: ScalarPrimitive, inner: CurveExpr },
    /// `λ ↦ X(φ(λ))`: scalar reparametrization inside a curve.
    Compose {
        inner: CurveExpr,
        reparam: ScalarPrimitive,
    },
}

/// A multivector-valued function of one real variable.
#[derive(Debug, Clone)]
pub struct CurveExpr {
    dim: usize,
    kind: Arc<CurveKind>,
}

impl CurveExpr {
    pub fn constant(value: Multivector) -> CurveExpr {
        CurveExpr {
            dim: value.dim(),
            kind: Arc::new(CurveKind::Constant(value)),
        }
    }

    pub fn zero(dim: usize) -> CurveExpr {
        CurveExpr::constant(Multivector::zero(dim))
    }

    /// `chain(λ) · e_blade` in an algebra of dimension `dim`.
    ///
    /// # Panics
    /// Panics if the blade does not fit the dimension.
    pub fn scalar_times_blade(dim: usize, chain: ScalarChain, blade: BladeMask) -> CurveExpr {
        assert!(
            blade.fits_dim(dim),
            "blade {blade} does not fit in dimension {dim}"
        );
        CurveExpr {
            dim,
            kind: Arc::new(CurveKind::ScalarTimesBlade { chain, blade }),
        }
    }

    /// The identity coefficient curve `λ ↦ λ` (times the scalar blade).
    pub fn variable(dim: usize) -> CurveExpr {
        CurveExpr::scalar_times_blade(dim, ScalarChain::identity(), BladeMask::SCALAR)
    }

    pub fn sum(left: CurveExpr, right: CurveExpr) -> CurveExpr {
        assert_eq!(
            left.dim, right.dim,
            "dimension mismatch between summands"
        );
        CurveExpr {
            dim: left.dim,
            kind: Arc::new(CurveKind::Sum(left, right)),
        }
    }

    pub fn product(star: ProductStar, left: CurveExpr, right: CurveExpr) -> CurveExpr {
        assert_eq!(
            left.dim, right.dim,
            "dimension mismatch between product operands"
        );
        CurveExpr {
            dim: left.dim,
            kind: Arc::new(CurveKind::Product { star, left, right }),
        }
    }

    pub fn scalar_scale(factor: ScalarPrimitive, inner: CurveExpr) -> CurveExpr {
        CurveExpr {
            dim: inner.dim,
            kind: Arc::new(CurveKind::ScalarScale { factor, inner }),
        }
    }

    pub fn compose(inner: CurveExpr, reparam: ScalarPrimitive) -> CurveExpr {
        CurveExpr {
            dim: inner.dim,
            kind: Arc::new(CurveKind::Compose { inner, reparam }),
        }
    }

    /// Composes with a whole scalar chain by nesting [`CurveKind::Compose`]
    /// nodes, innermost chain link applied first.
    pub fn compose_chain(inner: CurveExpr, chain: &ScalarChain) -> CurveExpr {
        chain
            .links()
            .iter()
            .rev()
            .fold(inner, |acc, prim| CurveExpr::compose(acc, prim.clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    /// Evaluates the curve at `lambda`.
    pub fn eval(&self, lambda: f64) -> Result<Multivector, EvalError> {
        match self.kind() {
            CurveKind::Constant(x) => Ok(x.clone()),
            CurveKind::ScalarTimesBlade { chain, blade } => {
                let coeff = chain.eval(lambda)?;
                Ok(Multivector::from_terms(self.dim, [(*blade, coeff)]))
            }
            CurveKind::Sum(a, b) => Ok(&a.eval(lambda)? + &b.eval(lambda)?),
            CurveKind::Product { star, left, right } => {
                Ok(star.apply(&left.eval(lambda)?, &right.eval(lambda)?))
            }
            CurveKind::ScalarScale { factor, inner } => {
                Ok(inner.eval(lambda)?.scale(factor.eval(lambda)?))
            }
            CurveKind::Compose { inner, reparam } => inner.eval(reparam.eval(lambda)?),
        }
    }

    /// Symbolic derivative as a new curve: the sum rule on sums, the
    /// order-preserving Leibniz rule `X'∗Y + X∗Y'` on every product node,
    /// and `(X∘φ)' = φ'·(X'∘φ)` on compositions.
    pub fn derivative_symbolic(&self) -> CurveExpr {
        match self.kind() {
            CurveKind::Constant(_) => CurveExpr::zero(self.dim),
            CurveKind::ScalarTimesBlade { chain, blade } => {
                chain_derivative(self.dim, chain, *blade)
            }
            CurveKind::Sum(a, b) => {
                CurveExpr::sum(a.derivative_symbolic(), b.derivative_symbolic())
            }
            CurveKind::Product { star, left, right } => CurveExpr::sum(
                CurveExpr::product(*star, left.derivative_symbolic(), right.clone()),
                CurveExpr::product(*star, left.clone(), right.derivative_symbolic()),
            ),
            CurveKind::ScalarScale { factor, inner } => {
                let scaled_sub = CurveExpr::scalar_scale(
                    factor.clone(),
                    inner.derivative_symbolic(),
                );
                if matches!(factor, ScalarPrimitive::Const(_)) {
                    // φ' ≡ 0 for a constant factor.
                    return scaled_sub;
                }
                let (coef, dfactor) = factor.derivative();
                CurveExpr::sum(
                    scale_by_const(
                        coef,
                        CurveExpr::scalar_scale(dfactor, inner.clone()),
                    ),
                    scaled_sub,
                )
            }
            CurveKind::Compose { inner, reparam } => {
                let (coef, dreparam) = reparam.derivative();
                CurveExpr::scalar_scale(
                    dreparam,
                    scale_by_const(
                        coef,
                        CurveExpr::compose(inner.derivative_symbolic(), reparam.clone()),
                    ),
                )
            }
        }
    }

    /// Forward-mode derivative at one point: evaluates the DAG with
    /// `λ = (lambda, 1)` carrying every coefficient as a dual number. All
    /// four products are bilinear, so the dual lift is exact.
    pub fn derivative_ad(&self, lambda: f64) -> Result<Multivector, EvalError> {
        Ok(self.eval_dual(DualScalar::variable(lambda))?.deriv)
    }

    fn eval_dual(&self, t: DualScalar) -> Result<DualMultivector, EvalError> {
        match self.kind() {
            CurveKind::Constant(x) => Ok(DualMultivector {
                value: x.clone(),
                deriv: Multivector::zero(self.dim),
            }),
            CurveKind::ScalarTimesBlade { chain, blade } => {
                let coeff = chain.eval_dual(t)?;
                Ok(DualMultivector {
                    value: Multivector::from_terms(self.dim, [(*blade, coeff.value)]),
                    deriv: Multivector::from_terms(self.dim, [(*blade, coeff.deriv)]),
                })
            }
            CurveKind::Sum(a, b) => {
                let (a, b) = (a.eval_dual(t)?, b.eval_dual(t)?);
                Ok(DualMultivector {
                    value: &a.value + &b.value,
                    deriv: &a.deriv + &b.deriv,
                })
            }
            CurveKind::Product { star, left, right } => {
                let (l, r) = (left.eval_dual(t)?, right.eval_dual(t)?);
                Ok(DualMultivector {
                    value: star.apply(&l.value, &r.value),
                    deriv: &star.apply(&l.deriv, &r.value) + &star.apply(&l.value, &r.deriv),
                })
            }
            CurveKind::ScalarScale { factor, inner } => {
                let s = factor.eval_dual(t)?;
                let x = inner.eval_dual(t)?;
                Ok(DualMultivector {
                    value: x.value.scale(s.value),
                    deriv: &x.deriv.scale(s.value) + &x.value.scale(s.deriv),
                })
            }
            CurveKind::Compose { inner, reparam } => inner.eval_dual(reparam.eval_dual(t)?),
        }
    }

    /// Central finite difference `(X(λ+h) - X(λ-h)) / 2h`: the engine kept
    /// independent of the symbolic and dual paths so it can arbitrate them.
    pub fn derivative_fd(&self, lambda: f64, h: f64) -> Result<Multivector, EvalError> {
        assert!(h > 0.0, "finite-difference step must be positive");
        let plus = self.eval(lambda + h)?;
        let minus = self.eval(lambda - h)?;
        Ok((&plus - &minus).scale(1.0 / (2.0 * h)))
    }
}

/// Coefficient-wise dual-number lift of a multivector value.
struct DualMultivector {
    value: Multivector,
    deriv: Multivector,
}

/// Default central-difference step: `max(1, |λ|) · ε^{1/3}` balances
/// truncation against rounding.
pub fn default_fd_step(lambda: f64) -> f64 {
    lambda.abs().max(1.0) * f64::EPSILON.cbrt()
}

fn scale_by_const(coef: f64, expr: CurveExpr) -> CurveExpr {
    if coef == 1.0 {
        expr
    } else {
        CurveExpr::scalar_scale(ScalarPrimitive::Const(coef), expr)
    }
}

/// Derivative of `λ ↦ chain(λ)·e_blade`. A chain of length one uses its
/// primitive's exact rule; longer chains peel the outermost link and emit
/// `f'(u(λ)) · u'(λ) · e_blade` as a product of scalar curves.
fn chain_derivative(dim: usize, chain: &ScalarChain, blade: BladeMask) -> CurveExpr {
    let (inner, outer) = chain.split_outer();
    let (coef, douter) = outer.derivative();
    if chain.is_single() {
        return scale_by_const(
            coef,
            CurveExpr::scalar_times_blade(dim, ScalarChain::single(douter), blade),
        );
    }
    let outer_part =
        CurveExpr::scalar_times_blade(dim, inner.then(douter), blade);
    let inner_part = CurveExpr::scalar_times_blade(dim, inner, BladeMask::SCALAR)
        .derivative_symbolic();
    scale_by_const(
        coef,
        CurveExpr::product(ProductStar::Geometric, outer_part, inner_part),
    )
}
