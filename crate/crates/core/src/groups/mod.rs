//! Permutation groups of the corpus and their 2-local structure.

mod group;
mod oddfield;
mod perm;
mod spec;
mod sylow;
mod witness;

use thiserror::Error;

pub use group::{ConjugacyClass, FiniteGroup, ProductInfo};
pub use oddfield::OddField;
pub use perm::Permutation;
pub use spec::{borel_subgroup, construct, construct_str, direct_product, psl2_subgroup, GroupSpec, MAX_Q};
pub use sylow::{
    align_frame, diagonal, dihedral_frame, embed_left, embed_right, involution_fusion, sylow2, sylow2_dihedral,
    sylow2_dihedral_with, FusionCase, FusionLabel, SylowDihedralFrame,
};
pub use witness::{frobenius_sylow_witness, WitnessReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("degenerate spec: {0}")]
    DegenerateSpec(String),
    #[error("cannot parse group spec {0}")]
    Parse(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),
    #[error("{0} is not a subgroup")]
    NotASubgroup(String),
    #[error("Sylow 2-subgroup is not dihedral of order >= 8: {0}")]
    NotDihedralSylow(String),
    #[error("involution class count {0} is not 1, 2 or 3")]
    InconsistentCount(usize),
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("2-part {0} of |PSL2(r^m)| is smaller than 8")]
    DefectTooSmall(u64),
    #[error("{0} is not built from psl2 or pgl2")]
    WrongFamily(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal error: {0}")]
    Internal(String),
}
