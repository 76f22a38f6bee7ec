//! Grammar behavior: precedence, the mixing rule, validator errors.

use clifford_core::{BladeMask, Multivector};
use curve_calculus::{CurveExpr, CurveKind, ProductStar};
use expr_dsl::{parse, parse_curve, ErrorCode};

fn eval(text: &str, dim: usize, lambda: f64) -> Multivector {
    parse_curve(text, dim).unwrap().eval(lambda).unwrap()
}

#[test]
fn coefficient_star_binds_tighter_than_wedge() {
    // (t·e1) ∧ (t²·e2), a wedge of two scalar-scaled blades.
    let curve = parse_curve("t*e1 ^ t*t*e2", 3).unwrap();
    match curve.kind() {
        CurveKind::Product { star, .. } => assert_eq!(*star, ProductStar::Wedge),
        other => panic!("expected top-level wedge, got {other:?}"),
    }
    let value = curve.eval(2.0).unwrap();
    assert_eq!(
        value,
        Multivector::from_terms(3, [(BladeMask::from_indices(&[1, 2]), 8.0)])
    );
}

#[test]
fn wedge_of_equal_blades_is_zero() {
    assert!(eval("e1 ^ e1", 2, 1.0).is_zero());
}

#[test]
fn mixing_true_products_requires_parens() {
    let err = parse_curve("e1 ^ e2 * e3", 3).unwrap_err();
    assert_eq!(err.code, ErrorCode::MixedProducts);
    // The offending operand is `e2 * e3`.
    assert_eq!((err.span.start, err.span.end), (5, 12));

    let err = parse_curve("e1 ^ e2 . e3", 3).unwrap_err();
    assert_eq!(err.code, ErrorCode::MixedProducts);

    // Parenthesized, both are fine.
    assert!(parse_curve("e1 ^ (e2 * e3)", 3).is_ok());
    assert!(parse_curve("(e1 ^ e2) . e3", 3).is_ok());
}

#[test]
fn same_product_operator_chains_left_associative() {
    assert!(parse_curve("e1 ^ e2 ^ e3", 3).is_ok());
    assert_eq!(
        eval("e1 ^ e2 ^ e3", 3, 0.0),
        Multivector::basis_blade(3, BladeMask::from_indices(&[1, 2, 3]))
    );
    // Pure geometric chains are one tier run, no mixing involved.
    assert_eq!(
        eval("e1 * e2 * e1", 3, 0.0),
        Multivector::basis_blade(3, BladeMask::basis_vector(2)).scale(-1.0)
    );
}

#[test]
fn contraction_operators_parse() {
    assert_eq!(
        eval("e1 _| e12", 2, 0.0),
        Multivector::basis_blade(2, BladeMask::basis_vector(2))
    );
    assert!(eval("e12 _| e1", 2, 0.0).is_zero());
    assert_eq!(
        eval("e12 |_ e2", 2, 0.0),
        Multivector::basis_blade(2, BladeMask::basis_vector(1))
    );
}

#[test]
fn scalar_dot_product_lands_in_grade_zero() {
    let value = eval("(2*e1 + 3*e12) . (e1 + e12)", 2, 0.0);
    assert_eq!(value, Multivector::scalar(2, 5.0));
}

#[test]
fn unary_minus_binds_tighter_than_products() {
    let value = eval("-e1 ^ e2", 2, 0.0);
    assert_eq!(
        value,
        Multivector::basis_blade(2, BladeMask::from_indices(&[1, 2])).scale(-1.0)
    );
}

#[test]
fn rotor_expression_parses() {
    let curve = parse_curve("cos(t) + sin(t)*e12", 2).unwrap();
    assert_eq!(curve.eval(0.0).unwrap(), Multivector::scalar(2, 1.0));
    let half_pi = std::f64::consts::FRAC_PI_2;
    let at_quarter_turn = curve.eval(half_pi).unwrap();
    assert!(
        (&at_quarter_turn
            - &Multivector::from_terms(
                2,
                [(BladeMask::from_indices(&[1, 2]), 1.0), (BladeMask::SCALAR, half_pi.cos())]
            ))
        .norm()
            < 1e-15
    );
}

#[test]
fn compose_builtin_lowers_to_composition_node() {
    let curve = parse_curve("compose(t*t*e1, sin(t))", 1).unwrap();
    assert!(matches!(curve.kind(), CurveKind::Compose { .. }));
    // sin(2)² e1.
    let expected = 2.0f64.sin() * 2.0f64.sin();
    assert!(
        (curve.eval(2.0).unwrap().coefficient(BladeMask::basis_vector(1)) - expected).abs()
            < 1e-15
    );
}

#[test]
fn compose_rejects_non_scalar_inner() {
    let err = parse_curve("compose(e1, e2)", 2).unwrap_err();
    assert_eq!(err.code, ErrorCode::NonScalarArgument);
    // Span points at the second argument.
    assert_eq!((err.span.start, err.span.end), (12, 14));
}

#[test]
fn function_arguments_must_be_scalar_chains() {
    let err = parse_curve("sin(e1)", 2).unwrap_err();
    assert_eq!(err.code, ErrorCode::NonScalarArgument);
    let err = parse_curve("sin(t + e1)", 2).unwrap_err();
    assert_eq!(err.code, ErrorCode::NonScalarArgument);
    // Nested chains are fine.
    assert!(parse_curve("sin(cos(exp(t)))", 1).is_ok());
    assert!(parse_curve("pow(sin(t), 3)", 1).is_ok());
    assert!(parse_curve("poly(1, -2, 0.5, sin(t))", 1).is_ok());
}

#[test]
fn pow_exponent_must_be_integral() {
    let err = parse_curve("pow(t, 1.5)", 1).unwrap_err();
    assert_eq!(err.code, ErrorCode::NumberExpected);
    assert!(parse_curve("pow(t, -2)", 1).is_ok());
}

#[test]
fn blade_out_of_dimension_is_rejected() {
    let err = parse_curve("e12", 1).unwrap_err();
    assert_eq!(err.code, ErrorCode::BladeIndex);
}

#[test]
fn unbalanced_parens_are_reported() {
    let err = parse_curve("(t + e1", 2).unwrap_err();
    assert_eq!(err.code, ErrorCode::UnbalancedParens);
    let err = parse_curve("sin(t", 1).unwrap_err();
    assert_eq!(err.code, ErrorCode::UnbalancedParens);
}

#[test]
fn trailing_input_is_rejected() {
    let err = parse_curve("t t", 1).unwrap_err();
    assert_eq!(err.code, ErrorCode::UnexpectedToken);
}

#[test]
fn error_spans_stay_inside_the_input() {
    for text in ["e1 ^ e2 * e3", "sin(e1)", "(t", "t )", "e31", "e9", "2 & 3"] {
        if let Err(err) = parse_curve(text, 3) {
            assert!(err.span.start <= err.span.end);
            assert!(err.span.end <= text.len(), "span escapes input for {text:?}");
        } else {
            panic!("{text:?} unexpectedly parsed");
        }
    }
}

#[test]
fn identical_input_yields_identical_trees() {
    let a = parse("t*e1 ^ pow(t, 2)*e2 + compose(t*e1, sin(t))", 3).unwrap();
    let b = parse("t*e1 ^ pow(t, 2)*e2 + compose(t*e1, sin(t))", 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn subtraction_lowers_to_negated_sum() {
    let value = eval("e1 - e1", 2, 0.0);
    assert!(value.is_zero());
    let value = eval("2 - 0.5", 2, 0.0);
    assert_eq!(value, Multivector::scalar(2, 1.5));
}

#[test]
fn scalar_star_groups_allowed_in_product_chains() {
    // Each `*`-group has at most one non-scalar factor.
    assert!(parse_curve("sin(t)*e1 ^ cos(t)*e2", 2).is_ok());
    assert!(parse_curve("2*e1 . 3*e1", 2).is_ok());
    let value = eval("2*e1 . 3*e1", 2, 0.0);
    assert_eq!(value, Multivector::scalar(2, 6.0));
}

fn zero_curve() -> CurveExpr {
    CurveExpr::constant(Multivector::zero(2))
}

#[test]
fn pretty_print_examples() {
    assert_eq!(expr_dsl::pretty_print(&zero_curve()), "0");
    let wedge = CurveExpr::product(
        ProductStar::Wedge,
        CurveExpr::constant(Multivector::basis_blade(2, BladeMask::basis_vector(1))),
        CurveExpr::constant(Multivector::basis_blade(2, BladeMask::basis_vector(2))),
    );
    assert_eq!(expr_dsl::pretty_print(&wedge), "(e1 ^ e2)");
}
