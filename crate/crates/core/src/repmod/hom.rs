use rand::Rng;

use super::{rng, GModule, RepError, Result};
use crate::gf2::{EchelonBasis, FFMatrix, FFVec};

/// Basis of `Hom_G(M, N)` as `dim M × dim N` matrices (`v ↦ v·φ`).
///
/// Spins a basis of `M` from standard vectors. Every basis vector carries a
/// matrix whose rows are its images under the still-free parameters; each
/// linear dependency found while spinning cuts the parameter space down.
pub fn hom(m: &GModule, n: &GModule) -> Result<Vec<FFMatrix>> {
    if m.group().generators() != n.group().generators() {
        return Err(RepError::NotRepresentation("modules for different groups".into()));
    }
    let field = m.field().join(n.field());
    let (m, n) = (m.embed(field)?, n.embed(field)?);
    let (dm, dn) = (m.dim(), n.dim());
    if dm == 0 || dn == 0 {
        return Ok(Vec::new());
    }
    let mut basis = EchelonBasis::new(field, dm);
    // ys[j]: s × dn, row t = image of basis row j under parameter t.
    let mut ys: Vec<FFMatrix> = Vec::new();
    let mut s = 0usize;
    let mut next_unit = 0usize;
    let mut queue = 0usize;
    let combine = |ys: &[FFMatrix], start: FFMatrix, coeffs: &[u8]| -> FFMatrix {
        let mut acc = start;
        for (l, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                acc = acc.add(&ys[l].scale(c)).expect("shape");
            }
        }
        acc
    };
    loop {
        if queue == basis.dim() {
            if basis.dim() == dm {
                break;
            }
            while basis.contains(&FFVec::unit(field, dm, next_unit)) {
                next_unit += 1;
            }
            let e = FFVec::unit(field, dm, next_unit);
            let ins = basis.insert(&e);
            let (_, lambda) = ins.new_row.expect("independent");
            for y in ys.iter_mut() {
                *y = y.vstack(&FFMatrix::zeros(field, dn, dn))?;
            }
            s += dn;
            let fresh = FFMatrix::zeros(field, s - dn, dn).vstack(&FFMatrix::identity(field, dn))?;
            // e = λ·b_new + Σ c_l b_l, so b_new = (e − Σ c_l b_l)/λ.
            let y = combine(&ys, fresh, &ins.coeffs).scale(field.inv(lambda));
            ys.push(y);
            continue;
        }
        let j = queue;
        queue += 1;
        let bj = basis.rows()[j].clone();
        for (gm, gn) in m.generators().iter().zip(n.generators()) {
            let w = gm.mul_vec(&bj);
            let image = ys[j].mul(gn)?;
            let ins = basis.insert(&w);
            let c = combine(&ys, image, &ins.coeffs);
            match ins.new_row {
                Some((_, lambda)) => ys.push(c.scale(field.inv(lambda))),
                None => {
                    if c.is_zero() {
                        continue;
                    }
                    let t = c.left_nullspace();
                    // s may drop to 0 here; later generators can add parameters.
                    s = t.rows();
                    for y in ys.iter_mut() {
                        *y = t.mul(y)?;
                    }
                }
            }
        }
    }
    let binv = basis.matrix().inverse()?;
    let mut out = Vec::with_capacity(s);
    for t in 0..s {
        let rows: Vec<FFVec> = ys.iter().map(|y| y.row(t)).collect();
        let y = FFMatrix::from_vecs(field, dn, &rows);
        out.push(binv.mul(&y)?);
    }
    Ok(out)
}

/// Whether `phi` commutes with the two actions.
pub fn intertwines(m: &GModule, n: &GModule, phi: &FFMatrix) -> bool {
    m.generators()
        .iter()
        .zip(n.generators())
        .all(|(a, b)| a.mul(phi).ok() == phi.mul(b).ok())
}

fn is_nilpotent(a: &FFMatrix) -> bool {
    let mut p = a.clone();
    let mut k = 1;
    while k < a.rows() {
        p = p.mul(&p).expect("square");
        k *= 2;
    }
    p.is_zero()
}

/// Whether the indecomposable module `a` is a direct summand of `b`.
///
/// For indecomposable `a`, `a | b` exactly when some composite
/// `a → b → a` of basis homomorphisms lies outside the radical of the local
/// ring `End(a)`, that is, is not nilpotent.
pub fn is_summand_of(a: &GModule, b: &GModule) -> Result<bool> {
    if a.dim() > b.dim() {
        return Ok(false);
    }
    let there = hom(a, b)?;
    if there.is_empty() {
        return Ok(false);
    }
    let back = hom(b, a)?;
    for f in &there {
        for g in &back {
            if !is_nilpotent(&f.mul(g)?) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// An invertible intertwiner `a → b`, if one is found. Random combinations
/// of a Hom basis are tried; a failure after many tries is reported as
/// `None`, which for indecomposable modules is conclusive via
/// [`is_summand_of`].
pub fn find_isomorphism(a: &GModule, b: &GModule) -> Result<Option<FFMatrix>> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    if a.dim() == 0 {
        return Ok(Some(FFMatrix::zeros(a.field(), 0, 0)));
    }
    let basis = hom(a, b)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for f in &basis {
        if f.rank() == a.dim() {
            return Ok(Some(f.clone()));
        }
    }
    let field = basis[0].field();
    let mut rng = rng();
    for _ in 0..64 {
        let mut acc = FFMatrix::zeros(field, a.dim(), b.dim());
        for f in &basis {
            let c = rng.random_range(0..field.order()) as u8;
            if c != 0 {
                acc = acc.add(&f.scale(c))?;
            }
        }
        if acc.rank() == a.dim() {
            return Ok(Some(acc));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(a: &GModule, b: &GModule) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf2::FieldSpec;
    use crate::groups::construct_str;

    fn natural(spec: &str) -> GModule {
        GModule::natural(Arc::new(construct_str(spec).unwrap()), FieldSpec::GF2).unwrap()
    }

    /// Direct oracle: solve the linear system `ρ_M(g) φ = φ ρ_N(g)` over all
    /// `dim M · dim N` unknowns.
    fn hom_dim_oracle(m: &GModule, n: &GModule) -> usize {
        let (dm, dn) = (m.dim(), n.dim());
        let f = m.field();
        let mut rows = Vec::new();
        for (a, b) in m.generators().iter().zip(n.generators()) {
            // Column (i, j) of the constraint: (aφ − φb)_{ij}.
            for i in 0..dm {
                for j in 0..dn {
                    let mut row = vec![0u8; dm * dn];
                    for k in 0..dm {
                        row[k * dn + j] ^= a.get(i, k);
                    }
                    for k in 0..dn {
                        row[i * dn + k] ^= b.get(k, j);
                    }
                    rows.push(row);
                }
            }
        }
        let sys = FFMatrix::from_rows(f, &rows).unwrap();
        dm * dn - sys.rank()
    }

    #[test]
    fn end_of_natural_modules_matches_linear_system() {
        for spec in ["pgl2:3", "d:8", "psl2:7"] {
            let m = natural(spec);
            let h = hom(&m, &m).unwrap();
            assert_eq!(h.len(), hom_dim_oracle(&m, &m), "{spec}");
            for phi in &h {
                assert!(intertwines(&m, &m, phi));
            }
        }
    }

    #[test]
    fn hom_into_and_out_of_trivial() {
        let m = natural("psl2:7");
        let k = GModule::trivial(m.group().clone(), FieldSpec::GF2);
        assert_eq!(hom(&m, &k).unwrap().len(), 1);
        assert_eq!(hom(&k, &m).unwrap().len(), 1);
        assert_eq!(hom(&k, &k).unwrap().len(), 1);
    }

    #[test]
    fn maps_vanishing_on_the_first_cyclic_piece() {
        // e_0 lies in the 6-dimensional simple, which has no map to k.
        let m = natural("a:7");
        let ones = FFMatrix::from_rows(FieldSpec::GF2, &[vec![1; 7]]).unwrap();
        let (six, _) = m.quotient(&ones).unwrap();
        let k = GModule::trivial(m.group().clone(), FieldSpec::GF2);
        let sum = six.direct_sum(&k).unwrap();
        assert_eq!(hom(&sum, &k).unwrap().len(), 1);
        assert_eq!(hom(&sum, &k).unwrap().len(), hom_dim_oracle(&sum, &k));
        assert_eq!(hom(&sum, &sum).unwrap().len(), hom_dim_oracle(&sum, &sum));
    }

    #[test]
    fn trivial_summand_detection() {
        // PSL2(7) on 8 points: 8 = 1 + 7 fails in characteristic 2 since 2 | 8.
        let m = natural("psl2:7");
        let k = GModule::trivial(m.group().clone(), FieldSpec::GF2);
        assert!(!is_summand_of(&k, &m).unwrap());
        // S4 on 4 points with a trivial module added: k is a summand.
        let s = natural("pgl2:3");
        let k4 = GModule::trivial(s.group().clone(), FieldSpec::GF2);
        assert!(is_summand_of(&k4, &s.direct_sum(&k4).unwrap()).unwrap());
    }

    #[test]
    fn isomorphism_with_dual_of_permutation_module() {
        let m = natural("psl2:7");
        let iso = find_isomorphism(&m, &m.dual()).unwrap().expect("self-dual");
        assert!(intertwines(&m, &m.dual(), &iso));
        assert_eq!(iso.rank(), 8);
    }
}
