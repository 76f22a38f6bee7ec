//! Validation and lowering of parse trees into curve expressions.

use curve_calculus::{CurveExpr, ProductStar, ScalarChain, ScalarPrimitive};

use crate::error::{ErrorCode, ParseError};
use crate::parser::{ParseTree, TreeKind, TreeNode};
use crate::token::{BinOp, FuncName};

use clifford_core::Multivector;

pub fn lower(tree: &ParseTree, dim: usize) -> Result<CurveExpr, ParseError> {
    lower_node(&tree.root, dim)
}

fn lower_node(node: &TreeNode, dim: usize) -> Result<CurveExpr, ParseError> {
    match &node.kind {
        TreeKind::Number(value) => Ok(CurveExpr::constant(Multivector::scalar(dim, *value))),
        TreeKind::Var => Ok(CurveExpr::variable(dim)),
        TreeKind::Blade(mask) => Ok(CurveExpr::constant(Multivector::basis_blade(dim, *mask))),
        TreeKind::Paren(inner) => lower_node(inner, dim),
        // Negated literals fold into the constant so printing is stable.
        TreeKind::Negate(inner) => match &inner.kind {
            TreeKind::Number(value) => {
                Ok(CurveExpr::constant(Multivector::scalar(dim, -value)))
            }
            _ => Ok(CurveExpr::scalar_scale(
                ScalarPrimitive::Const(-1.0),
                lower_node(inner, dim)?,
            )),
        },
        TreeKind::BinOp { op, left, right } => {
            let l = lower_node(left, dim)?;
            let r = lower_node(right, dim)?;
            Ok(match op {
                BinOp::Add => CurveExpr::sum(l, r),
                BinOp::Sub => CurveExpr::sum(
                    l,
                    CurveExpr::scalar_scale(ScalarPrimitive::Const(-1.0), r),
                ),
                BinOp::Wedge => CurveExpr::product(ProductStar::Wedge, l, r),
                BinOp::Times => CurveExpr::product(ProductStar::Geometric, l, r),
                BinOp::ScalarDot => CurveExpr::product(ProductStar::Scalar, l, r),
                BinOp::LeftContr => CurveExpr::product(ProductStar::LeftContraction, l, r),
                BinOp::RightContr => CurveExpr::product(ProductStar::RightContraction, l, r),
            })
        }
        TreeKind::Call { func, args } => lower_call(node, *func, args, dim),
    }
}

fn lower_call(
    node: &TreeNode,
    func: FuncName,
    args: &[TreeNode],
    dim: usize,
) -> Result<CurveExpr, ParseError> {
    match func {
        FuncName::Sin | FuncName::Cos | FuncName::Exp | FuncName::Ln => {
            expect_arity(node, func, args, 1)?;
            let chain = to_chain(&args[0])?;
            let outer = match func {
                FuncName::Sin => ScalarPrimitive::Sin,
                FuncName::Cos => ScalarPrimitive::Cos,
                FuncName::Exp => ScalarPrimitive::Exp,
                _ => ScalarPrimitive::Ln,
            };
            Ok(scalar_curve(dim, chain.then(outer)))
        }
        FuncName::Pow => {
            expect_arity(node, func, args, 2)?;
            let chain = to_chain(&args[0])?;
            let exponent = signed_integer(&args[1])?;
            Ok(scalar_curve(dim, chain.then(ScalarPrimitive::Power(exponent))))
        }
        FuncName::Poly => {
            if args.len() < 2 {
                return Err(ParseError::new(
                    node.span,
                    ErrorCode::Arity,
                    "`poly` needs coefficients followed by an argument expression",
                ));
            }
            let coeffs = args[..args.len() - 1]
                .iter()
                .map(signed_number)
                .collect::<Result<Vec<f64>, ParseError>>()?;
            let chain = to_chain(&args[args.len() - 1])?;
            Ok(scalar_curve(
                dim,
                chain.then(ScalarPrimitive::Polynomial(coeffs)),
            ))
        }
        FuncName::Compose => {
            expect_arity(node, func, args, 2)?;
            let curve = lower_node(&args[0], dim)?;
            let chain = to_chain(&args[1]).map_err(|mut e| {
                e.message = format!(
                    "compose reparametrization must be a scalar function of t: {}",
                    e.message
                );
                e
            })?;
            Ok(CurveExpr::compose_chain(curve, &chain))
        }
    }
}

fn scalar_curve(dim: usize, chain: ScalarChain) -> CurveExpr {
    CurveExpr::scalar_times_blade(dim, chain, clifford_core::BladeMask::SCALAR)
}

fn expect_arity(
    node: &TreeNode,
    func: FuncName,
    args: &[TreeNode],
    want: usize,
) -> Result<(), ParseError> {
    if args.len() == want {
        Ok(())
    } else {
        Err(ParseError::new(
            node.span,
            ErrorCode::Arity,
            format!("`{}` takes {want} argument(s), got {}", func.name(), args.len()),
        ))
    }
}

/// Interprets a subtree as a scalar composition chain in `t`. This is the
/// shape required for function arguments and reparametrizations; anything
/// touching blades or sums is rejected with the node's span.
fn to_chain(node: &TreeNode) -> Result<ScalarChain, ParseError> {
    match &node.kind {
        TreeKind::Var => Ok(ScalarChain::identity()),
        TreeKind::Number(value) => Ok(ScalarChain::single(ScalarPrimitive::Const(*value))),
        TreeKind::Paren(inner) => to_chain(inner),
        // -f(t) is the chain of f followed by the polynomial -x; negated
        // literals fold into the constant.
        TreeKind::Negate(inner) => match &inner.kind {
            TreeKind::Number(value) => {
                Ok(ScalarChain::single(ScalarPrimitive::Const(-value)))
            }
            _ => Ok(to_chain(inner)?.then(ScalarPrimitive::Polynomial(vec![0.0, -1.0]))),
        },
        TreeKind::Call { func, args } => match func {
            FuncName::Sin | FuncName::Cos | FuncName::Exp | FuncName::Ln => {
                expect_arity(node, *func, args, 1)?;
                let chain = to_chain(&args[0])?;
                Ok(match func {
                    FuncName::Sin => chain.then(ScalarPrimitive::Sin),
                    FuncName::Cos => chain.then(ScalarPrimitive::Cos),
                    FuncName::Exp => chain.then(ScalarPrimitive::Exp),
                    _ => chain.then(ScalarPrimitive::Ln),
                })
            }
            FuncName::Pow => {
                expect_arity(node, *func, args, 2)?;
                let chain = to_chain(&args[0])?;
                let exponent = signed_integer(&args[1])?;
                Ok(chain.then(ScalarPrimitive::Power(exponent)))
            }
            FuncName::Poly => {
                if args.len() < 2 {
                    return Err(ParseError::new(
                        node.span,
                        ErrorCode::Arity,
                        "`poly` needs coefficients followed by an argument expression",
                    ));
                }
                let coeffs = args[..args.len() - 1]
                    .iter()
                    .map(signed_number)
                    .collect::<Result<Vec<f64>, ParseError>>()?;
                let chain = to_chain(&args[args.len() - 1])?;
                Ok(chain.then(ScalarPrimitive::Polynomial(coeffs)))
            }
            FuncName::Compose => Err(ParseError::new(
                node.span,
                ErrorCode::NonScalarArgument,
                "`compose` cannot appear inside a scalar chain",
            )),
        },
        _ => Err(ParseError::new(
            node.span,
            ErrorCode::NonScalarArgument,
            "expected a scalar function of t (built from t, numbers, sin, cos, exp, ln, pow, poly)",
        )),
    }
}

fn signed_number(node: &TreeNode) -> Result<f64, ParseError> {
    match &node.kind {
        TreeKind::Number(value) => Ok(*value),
        TreeKind::Negate(inner) => Ok(-signed_number(inner)?),
        TreeKind::Paren(inner) => signed_number(inner),
        _ => Err(ParseError::new(
            node.span,
            ErrorCode::NumberExpected,
            "expected a numeric literal",
        )),
    }
}

fn signed_integer(node: &TreeNode) -> Result<i32, ParseError> {
    let value = signed_number(node)?;
    if value.fract() == 0.0 && value.abs() <= i32::MAX as f64 {
        Ok(value as i32)
    } else {
        Err(ParseError::new(
            node.span,
            ErrorCode::NumberExpected,
            format!("exponent must be an integer, got {value}"),
        ))
    }
}
