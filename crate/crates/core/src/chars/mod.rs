//! Exact ordinary character theory: cyclotomic integers, Dixon–Schneider
//! tables, the principal 2-block, and generalised decomposition matrices.

mod block;
mod cyclotomic;
mod dixon;
mod gendec;
mod verify;

use thiserror::Error;

pub use block::{principal_block, PrincipalBlock};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic, MAX_ORDER};
pub use dixon::{dixon_prime, dixon_table, CharacterTable, ClassInfo};
pub use gendec::{check_case_parameters, gendec_build, GenDecCase, GenDecColumn, GenDecMatrix, GenDecRow, Section};
pub use verify::{
    delta_signs, delta_signs_from, expected_delta_signs, gendec_verify, gendec_verify_matrix, infer_q, BlockData, ColumnCheck,
    ColumnSource, DeltaSigns, RowMatch, VerificationReport,
};

use crate::groups::{FusionLabel, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("root order {0} is outside 1..=2520")]
    UnsupportedOrder(u32),
    #[error("root orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(i64, u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no prime found for exponent {0}")]
    NoSuitablePrime(u64),
    #[error("group of order {0} exceeds the character table limit")]
    GroupTooLarge(usize),
    #[error("central character of row {row} is not integral at class {class}")]
    NonIntegralCentralCharacter { row: usize, class: usize },
    #[error("case parameters: {0}")]
    CaseParameterMismatch(String),
    #[error("fusion case {found} does not match the case's {expected}")]
    WrongFusionCase { expected: FusionLabel, found: FusionLabel },
    #[error("cannot determine signs: {0}")]
    SignAmbiguity(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T> = std::result::Result<T, CharError>;
