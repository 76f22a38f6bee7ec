//! Sparse multivectors over a Euclidean algebra of dimension `n ≤ 12`.
//!
//! A multivector is a finite map from canonical blades to nonzero `f64`
//! coefficients. Exact zeros are dropped at construction, so structural
//! equality (`==`) is well defined: equal dimension and identical term sets.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::blade::{canonical_sign, BladeMask, MAX_DIM};

/// Sparse graded element of `⋀V` over `ℝⁿ`.
///
/// Operations taking two multivectors panic on dimension mismatch; callers
/// construct operands from a single ambient dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<BladeMask, f64>,
}

impl Multivector {
    /// The zero multivector of the given dimension.
    ///
    /// # Panics
    /// Panics unless `1 <= dim <= 12`.
    pub fn zero(dim: usize) -> Multivector {
        assert!(
            (1..=MAX_DIM).contains(&dim),
            "algebra dimension {dim} out of range 1..={MAX_DIM}"
        );
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// A grade-0 multivector with the given scalar value.
    pub fn scalar(dim: usize, value: f64) -> Multivector {
        Multivector::from_terms(dim, [(BladeMask::SCALAR, value)])
    }

    /// The unit basis blade `e_mask`.
    ///
    /// # Panics
    /// Panics if the mask does not fit in `dim`.
    pub fn basis_blade(dim: usize, mask: BladeMask) -> Multivector {
        Multivector::from_terms(dim, [(mask, 1.0)])
    }

    /// A grade-1 vector from its components (`components.len()` is the
    /// dimension).
    pub fn vector(components: &[f64]) -> Multivector {
        Multivector::from_terms(
            components.len(),
            components
                .iter()
                .enumerate()
                .map(|(i, &c)| (BladeMask::basis_vector(i + 1), c)),
        )
    }

    /// Builds a multivector from `(blade, coefficient)` pairs. Coefficients
    /// on the same blade accumulate; exact-zero results are dropped.
    ///
    /// # Panics
    /// Panics if `dim` is out of range or any mask does not fit in `dim`.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (BladeMask, f64)>,
    ) -> Multivector {
        let mut mv = Multivector::zero(dim);
        for (mask, coeff) in terms {
            assert!(
                mask.fits_dim(dim),
                "blade {mask} does not fit in dimension {dim}"
            );
            mv.accumulate(mask, coeff);
        }
        mv
    }

    fn accumulate(&mut self, mask: BladeMask, coeff: f64) {
        let entry = self.terms.entry(mask).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            self.terms.remove(&mask);
        }
    }

    /// Ambient algebra dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True for the canonical zero multivector.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored `(blade, coefficient)` pairs in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeMask, f64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Coefficient on one blade (0 when absent).
    pub fn coefficient(&self, mask: BladeMask) -> f64 {
        self.terms.get(&mask).copied().unwrap_or(0.0)
    }

    fn assert_same_dim(&self, other: &Multivector) {
        assert!(
            self.dim == other.dim,
            "dimension mismatch: {} vs {}",
            self.dim,
            other.dim
        );
    }

    /// Every coefficient multiplied by `factor`; `0` yields the zero
    /// multivector.
    pub fn scale(&self, factor: f64) -> Multivector {
        Multivector::from_terms(self.dim, self.terms().map(|(m, c)| (m, c * factor)))
    }

    /// Exterior product. Blades sharing a factor wedge to zero; disjoint
    /// blades multiply with the canonical reordering sign.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        self.assert_same_dim(other);
        let mut out = Multivector::zero(self.dim);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a.0 & b.0 == 0 {
                    out.accumulate(BladeMask(a.0 | b.0), canonical_sign(a, b) as f64 * ca * cb);
                }
            }
        }
        out
    }

    /// Clifford (geometric) product under the Euclidean metric:
    /// `e_A e_B = canonical_sign(A,B) · e_{A xor B}`.
    pub fn geometric(&self, other: &Multivector) -> Multivector {
        self.assert_same_dim(other);
        let mut out = Multivector::zero(self.dim);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.accumulate(BladeMask(a.0 ^ b.0), canonical_sign(a, b) as f64 * ca * cb);
            }
        }
        out
    }

    /// Euclidean scalar product: sum of coefficient products over shared
    /// blades. Symmetric and positive definite.
    pub fn scalar_product(&self, other: &Multivector) -> f64 {
        self.assert_same_dim(other);
        // Iterate the sparser side.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms()
            .map(|(m, c)| c * large.coefficient(m))
            .fold(0.0, |acc, term| acc + term)
    }

    /// Left contraction: `e_A ⌟ e_B` is zero unless `A ⊆ B`, otherwise the
    /// grade-`|B|-|A|` part of the geometric product.
    pub fn left_contraction(&self, other: &Multivector) -> Multivector {
        self.assert_same_dim(other);
        let mut out = Multivector::zero(self.dim);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a.0 & !b.0 == 0 {
                    out.accumulate(BladeMask(a.0 ^ b.0), canonical_sign(a, b) as f64 * ca * cb);
                }
            }
        }
        out
    }

    /// Right contraction: mirror of the left, nonzero only when `B ⊆ A`.
    pub fn right_contraction(&self, other: &Multivector) -> Multivector {
        self.assert_same_dim(other);
        let mut out = Multivector::zero(self.dim);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if b.0 & !a.0 == 0 {
                    out.accumulate(BladeMask(a.0 ^ b.0), canonical_sign(a, b) as f64 * ca * cb);
                }
            }
        }
        out
    }

    /// Keeps exactly the terms of grade `k`.
    ///
    /// # Panics
    /// Panics if `k > dim`.
    pub fn grade_project(&self, k: usize) -> Multivector {
        assert!(k <= self.dim, "grade {k} out of range 0..={}", self.dim);
        Multivector::from_terms(
            self.dim,
            self.terms().filter(|(m, _)| m.grade() == k),
        )
    }

    /// Grade involution table for reversion: each grade-`k` term picks up
    /// `(-1)^{k(k-1)/2}`.
    pub fn reversion(&self) -> Multivector {
        Multivector::from_terms(
            self.dim,
            self.terms().map(|(m, c)| {
                let k = m.grade();
                let sign = if (k * (k.saturating_sub(1)) / 2) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                (m, sign * c)
            }),
        )
    }

    /// Norm `‖X‖ = √(X·X)`; zero exactly for the zero multivector.
    pub fn norm(&self) -> f64 {
        self.scalar_product(self).sqrt()
    }

    /// True when every stored coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.terms().all(|(_, c)| c.is_finite())
    }
}

impl Add for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: &Multivector) -> Multivector {
        self.assert_same_dim(rhs);
        Multivector::from_terms(self.dim, self.terms().chain(rhs.terms()))
    }
}

impl Sub for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &Multivector) -> Multivector {
        self.assert_same_dim(rhs);
        Multivector::from_terms(
            self.dim,
            self.terms().chain(rhs.terms().map(|(m, c)| (m, -c))),
        )
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl fmt::Display for Multivector {
    /// Terms in ascending mask order, e.g. `3 + 2 e1 - 0.5 e12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (mask, coeff) in self.terms() {
            let (negative, mag) = if coeff < 0.0 {
                (true, -coeff)
            } else {
                (false, coeff)
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if mask == BladeMask::SCALAR {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                write!(f, "{mask}")?;
            } else {
                write!(f, "{mag} {mask}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: usize, indices: &[usize]) -> Multivector {
        Multivector::basis_blade(dim, BladeMask::from_indices(indices))
    }

    #[test]
    fn add_distinct_blades() {
        let sum = &e(2, &[1]) + &e(2, &[2]);
        assert_eq!(sum, Multivector::vector(&[1.0, 1.0]));
    }

    #[test]
    fn add_cancellation_drops_term() {
        let sum = &e(2, &[1]) + &e(2, &[1]).scale(-1.0);
        assert!(sum.is_zero());
        assert_eq!(sum.terms().count(), 0);
    }

    #[test]
    fn add_mixed_grades() {
        let x = Multivector::from_terms(
            2,
            [(BladeMask::SCALAR, 2.0), (BladeMask::from_indices(&[1, 2]), 3.0)],
        );
        let y = Multivector::from_terms(
            2,
            [(BladeMask::SCALAR, 1.0), (BladeMask::basis_vector(1), 1.0)],
        );
        let expected = Multivector::from_terms(
            2,
            [
                (BladeMask::SCALAR, 3.0),
                (BladeMask::basis_vector(1), 1.0),
                (BladeMask::from_indices(&[1, 2]), 3.0),
            ],
        );
        assert_eq!(&x + &y, expected);
    }

    #[test]
    fn scale_zero_gives_zero() {
        let x = &e(2, &[1]) + &e(2, &[1, 2]);
        assert!(x.scale(0.0).is_zero());
    }

    #[test]
    fn scale_identity_and_negation() {
        let x = &e(2, &[1]).scale(3.0) + &e(2, &[1, 2]);
        assert_eq!(x.scale(1.0), x);
        assert_eq!(e(2, &[2]).scale(3.0).scale(-2.0), e(2, &[2]).scale(-6.0));
    }

    #[test]
    fn wedge_kills_shared_factor() {
        let x = &e(2, &[1]) + &e(2, &[2]);
        assert_eq!(x.wedge(&e(2, &[2])), e(2, &[1, 2]));
    }

    #[test]
    fn wedge_antisymmetric_on_vectors() {
        assert_eq!(e(2, &[2]).wedge(&e(2, &[1])), e(2, &[1, 2]).scale(-1.0));
    }

    #[test]
    fn wedge_distributes() {
        // (1+e1) ∧ (1+e2) = 1 + e1 + e2 + e12, by hand distribution.
        let x = &Multivector::scalar(2, 1.0) + &e(2, &[1]);
        let y = &Multivector::scalar(2, 1.0) + &e(2, &[2]);
        let expected = Multivector::from_terms(
            2,
            [
                (BladeMask::SCALAR, 1.0),
                (BladeMask::basis_vector(1), 1.0),
                (BladeMask::basis_vector(2), 1.0),
                (BladeMask::from_indices(&[1, 2]), 1.0),
            ],
        );
        assert_eq!(x.wedge(&y), expected);
    }

    #[test]
    fn geometric_unit_squares() {
        assert_eq!(e(2, &[1]).geometric(&e(2, &[1])), Multivector::scalar(2, 1.0));
        assert_eq!(e(2, &[1]).geometric(&e(2, &[2])), e(2, &[1, 2]));
        assert_eq!(
            e(2, &[1, 2]).geometric(&e(2, &[1, 2])),
            Multivector::scalar(2, -1.0)
        );
    }

    #[test]
    fn scalar_product_orthonormal_sum() {
        let x = &e(2, &[1]).scale(2.0) + &e(2, &[1, 2]).scale(3.0);
        let y = &e(2, &[1]) + &e(2, &[1, 2]);
        assert_eq!(x.scalar_product(&y), 5.0);
        assert_eq!(e(2, &[1]).scalar_product(&e(2, &[1, 2])), 0.0);
        let z = &(&Multivector::scalar(2, 1.0) + &e(2, &[1])) + &e(2, &[1, 2]);
        assert_eq!(z.scalar_product(&z), 3.0);
    }

    #[test]
    fn left_contraction_examples() {
        // e1 ⌟ e12 = e2, via the grade-projected geometric product oracle.
        let oracle = e(2, &[1]).geometric(&e(2, &[1, 2])).grade_project(1);
        assert_eq!(e(2, &[1]).left_contraction(&e(2, &[1, 2])), oracle);
        assert_eq!(e(2, &[1]).left_contraction(&e(2, &[1, 2])), e(2, &[2]));
        // Grade would be negative.
        assert!(e(2, &[1, 2]).left_contraction(&e(2, &[1])).is_zero());
        // Scalar unit is a left identity.
        let x = &e(2, &[2]).scale(0.5) + &e(2, &[1, 2]).scale(-2.0);
        assert_eq!(Multivector::scalar(2, 1.0).left_contraction(&x), x);
    }

    #[test]
    fn right_contraction_mirrors_left() {
        assert_eq!(e(2, &[1, 2]).right_contraction(&e(2, &[2])), e(2, &[1]));
        assert!(e(2, &[1]).right_contraction(&e(2, &[1, 2])).is_zero());
    }

    #[test]
    fn grade_project_examples() {
        let x = Multivector::from_terms(
            2,
            [
                (BladeMask::SCALAR, 3.0),
                (BladeMask::basis_vector(1), 2.0),
                (BladeMask::from_indices(&[1, 2]), 1.0),
            ],
        );
        assert_eq!(x.grade_project(1), e(2, &[1]).scale(2.0));
        assert!(e(2, &[1, 2]).grade_project(0).is_zero());
    }

    #[test]
    fn grades_partition() {
        let x = Multivector::from_terms(
            3,
            [
                (BladeMask::SCALAR, 1.0),
                (BladeMask::basis_vector(2), 1.0),
                (BladeMask::from_indices(&[1, 2, 3]), 5.0),
            ],
        );
        let mut sum = Multivector::zero(3);
        for k in 0..=3 {
            sum = &sum + &x.grade_project(k);
        }
        assert_eq!(sum, x);
    }

    #[test]
    fn reversion_grade_signs() {
        assert_eq!(e(3, &[1]).reversion(), e(3, &[1]));
        assert_eq!(e(3, &[1, 2]).reversion(), e(3, &[1, 2]).scale(-1.0));
        let x = Multivector::from_terms(
            3,
            [
                (BladeMask::SCALAR, 1.0),
                (BladeMask::from_indices(&[1, 2]), 1.0),
                (BladeMask::from_indices(&[1, 2, 3]), 1.0),
            ],
        );
        let expected = Multivector::from_terms(
            3,
            [
                (BladeMask::SCALAR, 1.0),
                (BladeMask::from_indices(&[1, 2]), -1.0),
                (BladeMask::from_indices(&[1, 2, 3]), -1.0),
            ],
        );
        assert_eq!(x.reversion(), expected);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(Multivector::zero(2).norm(), 0.0);
        let x = &(&Multivector::scalar(2, 1.0) + &e(2, &[1])) + &e(2, &[1, 2]);
        assert!((x.norm() - 3f64.sqrt()).abs() < 1e-15);
        for k in 0..64 {
            let lambda = -3.0 + 0.1 * k as f64;
            let rotor = Multivector::from_terms(
                2,
                [
                    (BladeMask::SCALAR, lambda.cos()),
                    (BladeMask::from_indices(&[1, 2]), lambda.sin()),
                ],
            );
            assert!((rotor.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn add_rejects_dim_mismatch() {
        let _ = &Multivector::zero(2) + &Multivector::zero(3);
    }

    #[test]
    #[should_panic(expected = "dimension mismatch")]
    fn wedge_rejects_dim_mismatch() {
        let _ = e(2, &[1]).wedge(&e(3, &[1]));
    }

    #[test]
    #[should_panic(expected = "grade 3 out of range")]
    fn grade_project_rejects_out_of_range() {
        let _ = Multivector::zero(2).grade_project(3);
    }

    #[test]
    #[should_panic(expected = "does not fit in dimension")]
    fn from_terms_rejects_oversized_mask() {
        let _ = Multivector::from_terms(2, [(BladeMask::from_indices(&[3]), 1.0)]);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn dim_zero_rejected() {
        let _ = Multivector::zero(0);
    }

    #[test]
    fn display_ascending_mask_order() {
        let x = Multivector::from_terms(
            2,
            [
                (BladeMask::SCALAR, 3.0),
                (BladeMask::basis_vector(1), -2.0),
                (BladeMask::from_indices(&[1, 2]), 0.5),
            ],
        );
        assert_eq!(x.to_string(), "3 - 2 e1 + 0.5 e12");
        assert_eq!(Multivector::zero(2).to_string(), "0");
        assert_eq!(e(2, &[1]).to_string(), "e1");
    }
}
