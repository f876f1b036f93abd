//! Modular representations over GF(2), GF(4) and GF(16): modules, homomorphism
//! spaces, the meataxe, indecomposable decomposition, Scott modules, Loewy
//! series, Brauer quotients and transport through bimodules.

mod brauer;
mod decompose;
mod fixture;
mod hecke;
mod hom;
mod library;
mod loewy;
mod meataxe;
mod module;
mod perm;
mod transport;

use thiserror::Error;

use crate::gf2::Gf2Error;
use crate::groups::GroupError;

pub use brauer::{
    brauer_audit, brauer_quotient, fixed_points, p_subgroup_classes, relative_trace, AuditRow, AuditVerdict,
    BrauerQuotient,
};
pub use decompose::{analyze_endomorphisms, indecomposable_summands, EndAnalysis, Summand};
pub use fixture::{module_from_text, module_to_text};
pub use hom::{find_isomorphism, hom, intertwines, is_isomorphic, is_summand_of};
pub use library::{lies_in_principal_block, SimpleEntry, SimpleLibrary};
pub use loewy::{loewy_series, radical, socle, socle_series, LoewySeries};
pub use meataxe::{composition_factors, is_absolutely_irreducible, is_irreducible};
pub use module::GModule;
pub use perm::{orbital_endomorphisms, perm_module, relative_syzygy, scott_module, PermModule, ScottModule};
pub use transport::{
    is_projective, is_projective_free_criterion, is_projective_higman, strip_projective, tensor_over_left,
    transport_simple, right_factor, TransportResult, HIGMAN_MAX_DIM,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("simple library is missing a composition factor: {0}")]
    IncompleteLibrary(String),
    #[error("subgroup of order {0} is not a 2-group")]
    NotPSubgroup(usize),
    #[error("bimodule side mismatch: {0}")]
    SideMismatch(String),
    #[error("matrices do not define a representation: {0}")]
    NotRepresentation(String),
    #[error("randomised search did not converge: {0}")]
    NoConvergence(String),
    #[error("cannot parse module: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linear(#[from] Gf2Error),
}

pub type Result<T> = std::result::Result<T, RepError>;

pub(crate) fn check_dim(what: &str, dim: usize) -> Result<()> {
    let cap = crate::config::limits().max_module_dim;
    if dim > cap {
        return Err(RepError::CapExceeded(format!("{what} has dimension {dim} > {cap}")));
    }
    Ok(())
}

pub(crate) fn rng() -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(crate::config::seed())
}
