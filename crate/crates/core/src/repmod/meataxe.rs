use rand::Rng;

use super::{hom, rng, GModule, RepError, Result};
use crate::gf2::{spin, FFMatrix};

const ATTEMPTS: usize = 300;

fn random_algebra_element(rng: &mut impl Rng, gens: &[FFMatrix]) -> FFMatrix {
    let field = gens[0].field();
    let n = gens[0].rows();
    let mut acc = FFMatrix::identity(field, n).scale(rng.random_range(0..field.order()) as u8);
    let terms = rng.random_range(2..5);
    for _ in 0..terms {
        let len = rng.random_range(1..4);
        let mut w = gens[rng.random_range(0..gens.len())].clone();
        for _ in 1..len {
            w = w.mul(&gens[rng.random_range(0..gens.len())]).expect("square");
        }
        let c = rng.random_range(1..field.order()) as u8;
        acc = acc.add(&w.scale(c)).expect("shape");
    }
    acc
}

/// A proper nonzero submodule (echelon basis), or `None` when the module is
/// irreducible over its field. Irreducibility is certified by Norton's
/// criterion on a random algebra element.
pub(crate) fn find_submodule(m: &GModule) -> Result<Option<FFMatrix>> {
    let d = m.dim();
    if d <= 1 {
        return Ok(None);
    }
    let gens = m.generators();
    let gens_t: Vec<FFMatrix> = gens.iter().map(FFMatrix::transpose).collect();
    let mut rng = rng();
    for _ in 0..ATTEMPTS {
        let a = random_algebra_element(&mut rng, gens);
        let mut factors = a.charpoly().factor();
        factors.sort_by_key(|(f, _)| f.degree());
        for (f, _) in &factors {
            let fa = a.eval_poly(f);
            let null = fa.left_nullspace();
            let u = spin(&null.select_rows(&[0]), gens)?;
            if u.rows() < d {
                return Ok(Some(u));
            }
            if null.rows() == f.degree().unwrap_or(0) {
                let null_t = fa.transpose().left_nullspace();
                let w = spin(&null_t.select_rows(&[0]), &gens_t)?;
                if w.rows() < d {
                    return Ok(Some(w.nullspace().rref().matrix));
                }
                return Ok(None);
            }
        }
    }
    Err(RepError::NoConvergence(format!(
        "meataxe on a module of dimension {d} after {ATTEMPTS} random elements"
    )))
}

pub fn is_irreducible(m: &GModule) -> Result<bool> {
    Ok(m.dim() > 0 && find_submodule(m)?.is_none())
}

/// Irreducible with endomorphism ring equal to the scalars.
pub fn is_absolutely_irreducible(m: &GModule) -> Result<bool> {
    Ok(is_irreducible(m)? && hom(m, m)?.len() == 1)
}

/// Composition factors over the module's own field, which need not be
/// absolutely irreducible. Order follows the splitting, not dimension.
pub fn composition_factors(m: &GModule) -> Result<Vec<GModule>> {
    super::check_dim("module to chop", m.dim())?;
    let mut stack = vec![m.clone()];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match find_submodule(&x)? {
            Some(u) => {
                stack.push(x.quotient(&u)?.0);
                stack.push(x.submodule(&u)?.0);
            }
            None => out.push(x),
        }
    }
    Ok(out)
}
