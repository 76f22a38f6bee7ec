//! Fully parenthesized pretty-printing of curve expressions.
//!
//! Every binary node prints inside its own parentheses, so re-parsing is
//! trivially unambiguous, and numbers print in shortest round-trip form so
//! re-lowered expressions evaluate bit-identically.

use clifford_core::{BladeMask, Multivector};
use curve_calculus::{CurveExpr, CurveKind, ProductStar, ScalarPrimitive};

pub fn pretty_print(expr: &CurveExpr) -> String {
    match expr.kind() {
        CurveKind::Constant(value) => constant_text(value),
        CurveKind::ScalarTimesBlade { chain, blade } => {
            let coeff = chain_text(chain.links());
            if *blade == BladeMask::SCALAR {
                coeff
            } else {
                format!("({coeff} * {})", blade.label())
            }
        }
        CurveKind::Sum(a, b) => format!("({} + {})", pretty_print(a), pretty_print(b)),
        CurveKind::Product { star, left, right } => format!(
            "({} {} {})",
            pretty_print(left),
            star_symbol(*star),
            pretty_print(right)
        ),
        CurveKind::ScalarScale { factor, inner } => format!(
            "({} * {})",
            chain_text(std::slice::from_ref(factor)),
            pretty_print(inner)
        ),
        CurveKind::Compose { inner, reparam } => format!(
            "compose({}, {})",
            pretty_print(inner),
            chain_text(std::slice::from_ref(reparam))
        ),
    }
}

fn star_symbol(star: ProductStar) -> &'static str {
    match star {
        ProductStar::Wedge => "^",
        ProductStar::Scalar => ".",
        ProductStar::LeftContraction => "_|",
        ProductStar::RightContraction => "|_",
        ProductStar::Geometric => "*",
    }
}

fn constant_text(value: &Multivector) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = value
        .terms()
        .map(|(mask, coeff)| {
            if mask == BladeMask::SCALAR {
                number(coeff)
            } else if coeff == 1.0 {
                mask.label()
            } else {
                format!("({} * {})", number(coeff), mask.label())
            }
        })
        .collect();
    // Left-associated like the parser rebuilds sums, so printing is stable.
    terms
        .into_iter()
        .reduce(|acc, term| format!("({acc} + {term})"))
        .expect("at least one term")
}

/// Renders a composition chain innermost-out, starting from `t`.
fn chain_text(links: &[ScalarPrimitive]) -> String {
    let mut text = "t".to_string();
    for (i, link) in links.iter().enumerate() {
        text = match link {
            ScalarPrimitive::Identity => text,
            // A leading constant swallows the variable; a later one must
            // keep its argument (and its domain) in the output.
            ScalarPrimitive::Const(c) if i == 0 => number(*c),
            ScalarPrimitive::Const(c) => format!("poly({}, {text})", number(*c)),
            ScalarPrimitive::Sin => format!("sin({text})"),
            ScalarPrimitive::Cos => format!("cos({text})"),
            ScalarPrimitive::Exp => format!("exp({text})"),
            ScalarPrimitive::Ln => format!("ln({text})"),
            ScalarPrimitive::Power(p) => format!("pow({text}, {p})"),
            ScalarPrimitive::Polynomial(coeffs) => {
                let list: Vec<String> = coeffs.iter().map(|&c| number(c)).collect();
                format!("poly({}, {text})", list.join(", "))
            }
        };
    }
    text
}

/// Shortest representation that parses back to the same `f64`.
fn number(x: f64) -> String {
    format!("{x:?}")
}
