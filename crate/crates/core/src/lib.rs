//! Computational workbench for principal 2-blocks with dihedral defect groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: dense matrices and polynomials over GF(2), GF(4), GF(16);
//! - [`groups`]: permutation groups (dihedral, PSL₂(q), PGL₂(q), alternating,
//!   symmetric, direct products), Sylow 2-frames and involution fusion;
//! - [`repmod`]: modules, homomorphism spaces, the meataxe, Scott modules,
//!   Loewy series, Brauer constructions and transport across bimodules;
//! - [`chars`]: exact cyclotomic arithmetic, Dixon–Schneider character tables,
//!   principal blocks and generalised decomposition matrices.

pub mod chars;
pub mod config;
pub mod gf2;
pub mod groups;
pub mod repmod;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/scott-and-brauer.md")]
    mod scott_and_brauer {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/decomposition-matrices.md")]
    mod decomposition_matrices {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
