//! Dense linear algebra over GF(2), GF(4) and GF(16).
//!
//! Matrices are stored bit-sliced: every row holds `e` bit-planes of packed
//! `u64` words, so GF(2) row operations are plain word XORs and the larger
//! fields reduce to a handful of XORs per plane.

mod echelon;
mod field;
mod matrix;
mod poly;
mod text;
mod vector;

use thiserror::Error;

pub use echelon::{spin, subspace_intersection, subspace_sum, EchelonBasis};
pub use field::FieldSpec;
pub use matrix::FFMatrix;
pub use poly::Poly;
pub use text::{matrix_from_lines, matrix_from_text, matrix_to_text};
pub use vector::FFVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("unsupported field degree {0} (expected 1, 2 or 4)")]
    UnsupportedField(u8),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("shape mismatch in {op}: {lhs:?} vs {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is singular")]
    Singular,
    #[error("malformed matrix text: {0}")]
    Parse(String),
}

pub(crate) fn shape_check(
    op: &'static str,
    ok: bool,
    lhs: (usize, usize),
    rhs: (usize, usize),
) -> Result<(), Gf2Error> {
    if ok {
        Ok(())
    } else {
        Err(Gf2Error::ShapeMismatch { op, lhs, rhs })
    }
}
