//! Exact arithmetic over the rationals and GF(p^m), and dense exact linear
//! algebra (rank, kernel, solve) used throughout the crate.

mod field;
mod matrix;
mod rational;

pub use field::{is_prime, Elem, FieldSpec, MAX_EXTENSION_DEGREE};
pub use matrix::{Echelon, Matrix, SpanTracker, Vector};
pub use rational::{ParseRationalError, Rational};

/// Rank of `m` over its field.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Basis of the right null space of `m` in reduced-echelon order.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

/// One solution of `m x = b`, or `None` when inconsistent.
pub fn solve(m: &Matrix, b: &[Elem]) -> crate::Result<Option<Vector>> {
    m.solve(b)
}
