use std::sync::Arc;

use serde::Serialize;

use super::{fixed_points, indecomposable_summands, is_irreducible, GModule, RepError, Result, Summand};
use crate::gf2::{FFMatrix, FFVec};
use crate::groups::{embed_left, embed_right, sylow2, FiniteGroup};

/// Largest dimension for which Higman's criterion is solved directly.
pub const HIGMAN_MAX_DIM: usize = 40;

/// Higman's criterion over a Sylow 2-subgroup `p`: `M` is projective iff
/// `Σ_{g∈P} ρ(g)⁻¹ φ ρ(g) = 1` has a solution `φ`.
pub fn is_projective_higman(m: &GModule, p: &FiniteGroup) -> Result<bool> {
    let d = m.dim();
    if d == 0 {
        return Ok(true);
    }
    let field = m.field();
    // vec(AφB) = vec(φ)·(Aᵀ ⊗ B) with row-major vec.
    let mut op = FFMatrix::zeros(field, d * d, d * d);
    for g in p.elements() {
        let a = m.action(&g.inverse())?.transpose();
        let b = m.action(&g)?;
        op = op.add(&a.kron(&b)?)?;
    }
    let mut target = FFVec::zeros(field, d * d);
    for i in 0..d {
        target.set(i * d + i, 1);
    }
    let target = FFMatrix::from_vecs(field, d * d, &[target]);
    Ok(op.solve_left(&target).is_ok())
}

/// `M` is projective iff its restriction to a Sylow 2-subgroup `P` is free,
/// iff `dim M = |P| · dim M^P`.
pub fn is_projective_free_criterion(m: &GModule, p: &FiniteGroup) -> Result<bool> {
    Ok(m.dim() == p.enumerate()? * fixed_points(m, p)?.rows())
}

pub fn is_projective(m: &GModule) -> Result<bool> {
    let p = sylow2(m.group())?;
    if m.dim() <= HIGMAN_MAX_DIM {
        is_projective_higman(m, &p)
    } else {
        is_projective_free_criterion(m, &p)
    }
}

/// Splits `m` into its non-projective summands and the dimensions of the
/// projective ones.
pub fn strip_projective(m: &GModule) -> Result<(Vec<Summand>, Vec<usize>)> {
    let mut core = Vec::new();
    let mut proj = Vec::new();
    for s in indecomposable_summands(m, None)? {
        if is_projective(&s.module)? {
            proj.push(s.module.dim());
        } else {
            core.push(s);
        }
    }
    Ok((core, proj))
}

/// `S ⊗_{kG} M` for a module `M` over `G × G′` and a `G`-module `S`, as a
/// right `G′`-module. The left `G`-action on `M` is `g·m = m·(g⁻¹, 1)`.
pub fn tensor_over_left(mbim: &GModule, s: &GModule) -> Result<GModule> {
    let info = mbim
        .group()
        .product_info()
        .ok_or_else(|| RepError::SideMismatch(format!("{} is not a direct product", mbim.group().name())))?;
    let (left, right) = (info.left.clone(), info.right.clone());
    if s.group().generators() != left.generators() {
        return Err(RepError::SideMismatch(format!(
            "module is over {}, bimodule left factor is {}",
            s.group().name(),
            left.name()
        )));
    }
    let field = s.field().join(mbim.field());
    let (s, mbim) = (s.embed(field)?, mbim.embed(field)?);
    let (ds, dm) = (s.dim(), mbim.dim());
    super::check_dim("tensor space", ds * dm)?;
    let id_s = FFMatrix::identity(field, ds);
    let id_m = FFMatrix::identity(field, dm);
    let mut relations = FFMatrix::zeros(field, 0, ds * dm);
    for (g, rho_s) in left.generators().iter().zip(s.generators()) {
        let act = mbim.action(&embed_left(&g.inverse(), right.degree()))?;
        let rel = rho_s.kron(&id_m)?.add(&id_s.kron(&act)?)?;
        relations = relations.vstack(&rel)?.row_space();
    }
    let gens = right
        .generators()
        .iter()
        .map(|h| Ok(id_s.kron(&mbim.action(&embed_right(h, left.degree()))?)?))
        .collect::<Result<Vec<_>>>()?;
    let full = GModule::new(right.clone(), field, ds * dm, gens)?;
    if relations.rows() == 0 {
        return Ok(full);
    }
    Ok(full.quotient(&relations)?.0)
}

/// Image of a module under `− ⊗_{kG} M` with projective summands removed.
#[derive(Clone, Debug)]
pub struct TransportResult {
    pub full_dim: usize,
    pub projective_dims: Vec<usize>,
    pub core: Option<GModule>,
    pub core_summands: usize,
    pub simple: bool,
    pub indecomposable: bool,
}

#[derive(Serialize)]
struct TransportJson<'a> {
    full_dim: usize,
    projective_dims: &'a [usize],
    core_dim: usize,
    core_summands: usize,
    simple: bool,
    indecomposable: bool,
}

impl Serialize for TransportResult {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        TransportJson {
            full_dim: self.full_dim,
            projective_dims: &self.projective_dims,
            core_dim: self.core.as_ref().map_or(0, GModule::dim),
            core_summands: self.core_summands,
            simple: self.simple,
            indecomposable: self.indecomposable,
        }
        .serialize(ser)
    }
}

pub fn transport_simple(mbim: &GModule, s: &GModule) -> Result<TransportResult> {
    let image = tensor_over_left(mbim, s)?;
    let (core_parts, projective_dims) = strip_projective(&image)?;
    let core_summands = core_parts.len();
    let core = core_parts
        .into_iter()
        .map(|p| p.module)
        .reduce(|a, b| a.direct_sum(&b).expect("same group"));
    let simple = core_summands == 1 && is_irreducible(core.as_ref().expect("one part"))?;
    Ok(TransportResult {
        full_dim: image.dim(),
        projective_dims,
        core,
        core_summands,
        simple,
        indecomposable: core_summands == 1,
    })
}

/// The group a transported module lives over.
pub fn right_factor(mbim: &GModule) -> Option<Arc<FiniteGroup>> {
    mbim.group().product_info().map(|i| i.right.clone())
}
