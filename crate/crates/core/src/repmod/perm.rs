use std::sync::Arc;

use super::decompose::split_filtered;
use super::hecke::{Hecke, Orbitals};
use super::{check_dim, hom, GModule, RepError, Result};
use crate::gf2::{FFMatrix, FieldSpec};
use crate::groups::FiniteGroup;

/// The permutation module on the right cosets `Hx`, with its point action.
#[derive(Clone, Debug)]
pub struct PermModule {
    pub module: GModule,
    /// Image of each coset under each group generator.
    pub points: Vec<Vec<usize>>,
    /// Least element index of each coset; cosets are ordered by it.
    pub reps: Vec<usize>,
}

/// Scott module as a summand of a permutation module.
#[derive(Clone, Debug)]
pub struct ScottModule {
    pub module: GModule,
    /// Basis rows inside `perm.module`.
    pub basis: FFMatrix,
    pub perm: PermModule,
    pub residue_degree: usize,
}

pub fn perm_module(g: &Arc<FiniteGroup>, h: &FiniteGroup, field: FieldSpec) -> Result<PermModule> {
    if !h.is_subgroup_of(g) {
        return Err(RepError::NotASubgroup(h.name().to_string()));
    }
    let n = g.enumerate()?;
    let hn = h.enumerate()?;
    check_dim("permutation module", n / hn)?;
    let hs: Vec<_> = h.elements().collect();
    let mut label = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        let xp = g.element(x);
        for e in &hs {
            let y = g.index_of(&e.mul(&xp)).expect("subgroup element");
            label[y] = reps.len();
        }
        reps.push(x);
    }
    let points: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|gen| {
            reps.iter()
                .map(|&x| label[g.index_of(&g.element(x).mul(gen)).expect("closed")])
                .collect()
        })
        .collect();
    let module = GModule::from_point_action(g.clone(), field, &points)?;
    Ok(PermModule { module, points, reps })
}

/// Basis of the endomorphism ring of a permutation module: one 0/1 matrix
/// per orbit of the group on ordered pairs of points.
pub fn orbital_endomorphisms(pm: &PermModule) -> Result<Vec<FFMatrix>> {
    let orb = Orbitals::compute(&pm.points, pm.reps.len())?;
    Ok(dense_orbitals(&orb, pm.module.field()))
}

fn dense_orbitals(orb: &Orbitals, field: FieldSpec) -> Vec<FFMatrix> {
    let n = orb.n;
    let mut mats = vec![FFMatrix::zeros(field, n, n); orb.count()];
    for (p, &o) in orb.labels.iter().enumerate() {
        mats[o as usize].set(p / n, p % n, 1);
    }
    mats
}

/// The Scott module `Sc(G, H)`: the summand of `k_H↑G` with the trivial
/// module in its top.
pub fn scott_module(g: &Arc<FiniteGroup>, h: &FiniteGroup, field: FieldSpec) -> Result<ScottModule> {
    let perm = perm_module(g, h, field)?;
    let orb = Orbitals::compute(&perm.points, perm.reps.len())?;
    // Over GF(2) the sparse Hecke algebra is both smaller and faster; the
    // dense orbital matrices remain for the extension fields.
    if field == FieldSpec::GF2 {
        scott_via_hecke(g, perm, &orb)
    } else {
        let end = dense_orbitals(&orb, field);
        drop(orb);
        scott_via_orbitals(g, perm, end)
    }
}

/// Split the permutation module with its dense orbital basis, refining only
/// pieces on which the augmentation is nonzero.
fn scott_via_orbitals(g: &Arc<FiniteGroup>, perm: PermModule, end: Vec<FFMatrix>) -> Result<ScottModule> {
    let augmented = |b: &FFMatrix| (0..b.rows()).any(|r| b.row(r).coordinate_sum() != 0);
    let mut parts = split_filtered(&perm.module, Some(end), &augmented)?;
    if parts.len() != 1 {
        return Err(RepError::NoConvergence(format!(
            "{} summands carry the augmentation",
            parts.len()
        )));
    }
    let part = parts.pop().expect("one part");
    let module = part.module;
    check_trivial_hom(g, &module)?;
    Ok(ScottModule {
        module,
        basis: part.basis,
        perm,
        residue_degree: part.residue_degree,
    })
}

fn scott_via_hecke(g: &Arc<FiniteGroup>, perm: PermModule, orb: &Orbitals) -> Result<ScottModule> {
    let algebra = Hecke::new(orb);
    let e = algebra.scott_idempotent(256)?;
    drop(algebra);
    let basis = orb.expand(&e).row_space();
    check_dim("Scott module", basis.rows())?;
    let (module, basis) = perm.module.submodule(&basis)?;
    check_trivial_hom(g, &module)?;
    Ok(ScottModule {
        module,
        basis,
        perm,
        residue_degree: 1,
    })
}

fn check_trivial_hom(g: &Arc<FiniteGroup>, module: &GModule) -> Result<()> {
    let k = GModule::trivial(g.clone(), module.field());
    let (down, up) = (hom(module, &k)?.len(), hom(&k, module)?.len());
    if down != 1 || up != 1 {
        return Err(RepError::NoConvergence(format!(
            "Scott summand has Hom to/from trivial of dimensions {down}/{up}"
        )));
    }
    Ok(())
}

/// `Ω_H(k_G)`: the kernel of the augmentation `Sc(G, H) → k`.
pub fn relative_syzygy(g: &Arc<FiniteGroup>, h: &FiniteGroup, field: FieldSpec) -> Result<GModule> {
    let sc = scott_module(g, h, field)?;
    let rows: Vec<Vec<u8>> = (0..sc.basis.rows())
        .map(|r| vec![sc.basis.row(r).coordinate_sum()])
        .collect();
    let eps = FFMatrix::from_rows(field, &rows)?;
    let kernel = eps.left_nullspace();
    if kernel.rows() == 0 {
        return Ok(GModule::new(g.clone(), field, 0, vec![FFMatrix::zeros(field, 0, 0); g.generators().len()])?);
    }
    Ok(sc.module.submodule(&kernel)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{borel_subgroup, construct_str, sylow2};

    fn group(s: &str) -> Arc<FiniteGroup> {
        Arc::new(construct_str(s).unwrap())
    }

    #[test]
    fn permutation_module_dimensions() {
        let s4 = group("pgl2:3");
        let p = sylow2(&s4).unwrap();
        assert_eq!(perm_module(&s4, &p, FieldSpec::GF2).unwrap().module.dim(), 3);
        let g = group("psl2:7");
        let b = borel_subgroup(&g).unwrap();
        assert_eq!(b.order(), 21);
        let pm = perm_module(&g, &b, FieldSpec::GF2).unwrap();
        assert_eq!(pm.module.dim(), 8);
        pm.module.check_representation(16).unwrap();
        let whole = perm_module(&g, &g, FieldSpec::GF2).unwrap();
        assert_eq!(whole.module.dim(), 1);
    }

    #[test]
    fn orbitals_commute_with_action() {
        let g = group("psl2:7");
        let b = borel_subgroup(&g).unwrap();
        let pm = perm_module(&g, &b, FieldSpec::GF2).unwrap();
        let end = orbital_endomorphisms(&pm).unwrap();
        // 2-transitive: two orbitals.
        assert_eq!(end.len(), 2);
        assert_eq!(end.len(), hom(&pm.module, &pm.module).unwrap().len());
        for a in &end {
            for x in pm.module.generators() {
                assert_eq!(a.mul(x).unwrap(), x.mul(a).unwrap());
            }
        }
    }

    #[test]
    fn scott_modules_of_small_cases() {
        let g = group("psl2:7");
        let b = borel_subgroup(&g).unwrap();
        assert_eq!(scott_module(&g, &b, FieldSpec::GF2).unwrap().module.dim(), 8);
        let whole = scott_module(&g, &g, FieldSpec::GF2).unwrap();
        assert_eq!(whole.module.dim(), 1);
        let d8 = group("d:8");
        let frame = crate::groups::sylow2_dihedral(&d8).unwrap();
        let klein = d8.subgroup("<z,t>", vec![frame.z.clone(), frame.t.clone()]).unwrap();
        let sc = scott_module(&d8, &klein, FieldSpec::GF2).unwrap();
        assert_eq!(sc.module.dim(), 2);
    }

    #[test]
    fn hecke_path_agrees_with_dense_path() {
        let g = group("psl2:7");
        let frame = crate::groups::sylow2_dihedral(&g).unwrap();
        let subgroups = [
            g.subgroup("<t>", vec![frame.t.clone()]).unwrap(),
            g.subgroup("<z,t>", vec![frame.z.clone(), frame.t.clone()]).unwrap(),
            sylow2(&g).unwrap(),
        ];
        for h in &subgroups {
            let perm = perm_module(&g, h, FieldSpec::GF2).unwrap();
            let orb = Orbitals::compute(&perm.points, perm.reps.len()).unwrap();
            let dense = scott_via_orbitals(&g, perm.clone(), dense_orbitals(&orb, FieldSpec::GF2)).unwrap();
            let sparse = scott_via_hecke(&g, perm, &orb).unwrap();
            assert_eq!(sparse.module.dim(), dense.module.dim(), "{}", h.name());
            assert!(crate::repmod::is_isomorphic(&sparse.module, &dense.module).unwrap());
        }
    }

    #[test]
    fn relative_syzygy_has_codimension_one() {
        let g = group("psl2:7");
        let b = borel_subgroup(&g).unwrap();
        assert_eq!(relative_syzygy(&g, &b, FieldSpec::GF2).unwrap().dim(), 7);
    }
}
