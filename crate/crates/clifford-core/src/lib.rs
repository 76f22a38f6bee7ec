//! Finite-dimensional Euclidean Clifford algebra kernel.
//!
//! Multivectors are immutable sparse values: a map from canonical basis
//! blades (bitmask-encoded, ascending factor order) to nonzero `f64`
//! coefficients. The module provides the exterior, Clifford, scalar, and
//! left/right contraction products, grade projection, reversion, and the
//! Euclidean norm `‖X‖ = √(X·X)`.
//!
//! All operations are pure functions of their inputs; values can be shared
//! or sent across threads freely.

mod blade;
mod multivector;

pub use blade::{canonical_sign, BladeMask, MAX_DIM};
pub use multivector::Multivector;
