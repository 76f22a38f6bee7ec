//! Property checks for the algebra laws: norm inequalities, bilinearity,
//! associativity, vector identities, and the contraction/geometric-product
//! consistency table.

use clifford_core::{BladeMask, Multivector};
use proptest::prelude::*;

const ATOL: f64 = 1e-9;

/// Random multivector of the given dimension with coefficients in [-1, 1].
fn arb_multivector(dim: usize) -> impl Strategy<Value = Multivector> {
    let blades = 1u16 << dim;
    prop::collection::vec((0..blades, -1.0f64..1.0), 0..=(blades as usize).min(8)).prop_map(
        move |pairs| {
            Multivector::from_terms(dim, pairs.into_iter().map(|(m, c)| (BladeMask(m), c)))
        },
    )
}

fn arb_dim_and_pair() -> impl Strategy<Value = (Multivector, Multivector)> {
    (1usize..=6).prop_flat_map(|dim| (arb_multivector(dim), arb_multivector(dim)))
}

fn arb_dim_and_triple() -> impl Strategy<Value = (Multivector, Multivector, Multivector)> {
    (1usize..=6)
        .prop_flat_map(|dim| (arb_multivector(dim), arb_multivector(dim), arb_multivector(dim)))
}

fn arb_vector(dim: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-1.0f64..1.0, dim).prop_map(|c| Multivector::vector(&c))
}

type Product = fn(&Multivector, &Multivector) -> Multivector;

const PRODUCTS: [(&str, Product); 4] = [
    ("wedge", |x, y| x.wedge(y)),
    ("geometric", |x, y| x.geometric(y)),
    ("left_contraction", |x, y| x.left_contraction(y)),
    ("right_contraction", |x, y| x.right_contraction(y)),
];

proptest! {
    #[test]
    fn scalar_product_positive_definite((x, _) in arb_dim_and_pair()) {
        let q = x.scalar_product(&x);
        prop_assert!(q >= 0.0);
        prop_assert_eq!(q == 0.0, x.is_zero());
    }

    #[test]
    fn cauchy_schwarz((x, y) in arb_dim_and_pair()) {
        prop_assert!(x.scalar_product(&y).abs() <= x.norm() * y.norm() + ATOL);
    }

    #[test]
    fn triangle_inequality((x, y) in arb_dim_and_pair()) {
        prop_assert!((&x + &y).norm() <= x.norm() + y.norm() + ATOL);
    }

    #[test]
    fn products_are_bilinear((x, y, z) in arb_dim_and_triple(), alpha in -2.0f64..2.0) {
        for (name, star) in PRODUCTS {
            let left = star(&(&x + &y.scale(alpha)), &z);
            let right = &star(&x, &z) + &star(&y, &z).scale(alpha);
            prop_assert!((&left - &right).norm() <= ATOL, "{name} not linear in lhs");

            let left = star(&z, &(&x + &y.scale(alpha)));
            let right = &star(&z, &x) + &star(&z, &y).scale(alpha);
            prop_assert!((&left - &right).norm() <= ATOL, "{name} not linear in rhs");
        }
        // Scalar product is bilinear into the reals.
        let lhs = (&x + &y.scale(alpha)).scalar_product(&z);
        let rhs = x.scalar_product(&z) + alpha * y.scalar_product(&z);
        prop_assert!((lhs - rhs).abs() <= ATOL);
    }

    #[test]
    fn wedge_and_geometric_associative((x, y, z) in arb_dim_and_triple()) {
        let lhs = x.wedge(&y).wedge(&z);
        let rhs = x.wedge(&y.wedge(&z));
        prop_assert!((&lhs - &rhs).norm() <= ATOL);

        let lhs = x.geometric(&y).geometric(&z);
        let rhs = x.geometric(&y.geometric(&z));
        prop_assert!((&lhs - &rhs).norm() <= ATOL);
    }

    #[test]
    fn grade_partition_is_exact((x, _) in arb_dim_and_pair()) {
        let mut sum = Multivector::zero(x.dim());
        for k in 0..=x.dim() {
            sum = &sum + &x.grade_project(k);
        }
        prop_assert_eq!(sum, x);
    }

    #[test]
    fn scalar_product_equals_scalar_part_of_reversed_product((x, y) in arb_dim_and_pair()) {
        let via_blades = x.scalar_product(&y);
        let via_geometric = x.reversion().geometric(&y).coefficient(BladeMask::SCALAR);
        prop_assert!((via_blades - via_geometric).abs() <= ATOL);
    }
}

proptest! {
    #[test]
    fn vector_wedge_antisymmetry((u, v) in (2usize..=6).prop_flat_map(|d| (arb_vector(d), arb_vector(d)))) {
        prop_assert!((&u.wedge(&v) + &v.wedge(&u)).norm() <= ATOL);
        prop_assert!(u.wedge(&u).norm() <= ATOL);
    }

    #[test]
    fn vector_geometric_splits_into_dot_and_wedge((u, v) in (2usize..=6).prop_flat_map(|d| (arb_vector(d), arb_vector(d)))) {
        let dot = Multivector::scalar(u.dim(), u.scalar_product(&v));
        let split = &dot + &u.wedge(&v);
        prop_assert!((&u.geometric(&v) - &split).norm() <= ATOL);
    }
}

#[test]
fn contraction_consistent_with_graded_geometric_product() {
    // Exhaustive over all blade pairs up to dim 5: e_A ⌟ e_B equals the
    // grade |B|-|A| part of e_A e_B, and the right contraction mirrors it.
    for dim in 1..=5usize {
        for a in 0..(1u16 << dim) {
            for b in 0..(1u16 << dim) {
                let ea = Multivector::basis_blade(dim, BladeMask(a));
                let eb = Multivector::basis_blade(dim, BladeMask(b));
                let product = ea.geometric(&eb);

                let expected_left = match BladeMask(b).grade().checked_sub(BladeMask(a).grade()) {
                    Some(k) => product.grade_project(k),
                    None => Multivector::zero(dim),
                };
                assert_eq!(
                    ea.left_contraction(&eb),
                    expected_left,
                    "left contraction mismatch at {a:b} ⌟ {b:b}"
                );

                let expected_right = match BladeMask(a).grade().checked_sub(BladeMask(b).grade()) {
                    Some(k) => product.grade_project(k),
                    None => Multivector::zero(dim),
                };
                assert_eq!(
                    ea.right_contraction(&eb),
                    expected_right,
                    "right contraction mismatch at {a:b} ⌞ {b:b}"
                );
            }
        }
    }
}

#[test]
fn wedge_is_top_grade_part_of_geometric_product() {
    for dim in 1..=5usize {
        for a in 0..(1u16 << dim) {
            for b in 0..(1u16 << dim) {
                let ea = Multivector::basis_blade(dim, BladeMask(a));
                let eb = Multivector::basis_blade(dim, BladeMask(b));
                let grade_sum = BladeMask(a).grade() + BladeMask(b).grade();
                let expected = if grade_sum <= dim {
                    ea.geometric(&eb).grade_project(grade_sum)
                } else {
                    Multivector::zero(dim)
                };
                assert_eq!(ea.wedge(&eb), expected);
            }
        }
    }
}
