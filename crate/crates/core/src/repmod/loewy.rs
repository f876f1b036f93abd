use serde::{Deserialize, Serialize};

use super::{hom, GModule, RepError, Result, SimpleLibrary};
use crate::gf2::FFMatrix;

/// Layers of a radical or socle series, top first. Each layer lists simple
/// labels with multiplicity, sorted by (dimension, label).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoewySeries {
    pub layers: Vec<Vec<String>>,
}

impl LoewySeries {
    pub fn length(&self) -> usize {
        self.layers.len()
    }

    pub fn total_dim(&self, lib: &SimpleLibrary) -> usize {
        self.layers
            .iter()
            .flatten()
            .map(|l| lib.dim_of(l).unwrap_or(0))
            .sum()
    }

    /// Layers written as `1 | 3a+3b | 1`.
    pub fn display(&self) -> String {
        self.layers
            .iter()
            .map(|l| l.join("+"))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// Intersection of the kernels of all homomorphisms to library simples,
/// with the top layer.
fn radical_with_top(m: &GModule, lib: &SimpleLibrary) -> Result<(FFMatrix, Vec<String>)> {
    let mut stacked: Option<FFMatrix> = None;
    let mut top = Vec::new();
    for s in lib.simples() {
        let maps = hom(m, &s.module)?;
        for phi in maps {
            top.push(s.label.clone());
            stacked = Some(match stacked {
                None => phi,
                Some(acc) => acc.hstack(&phi)?,
            });
        }
    }
    let rad = match stacked {
        None => FFMatrix::identity(m.field(), m.dim()),
        Some(k) => k.left_nullspace(),
    };
    if m.dim() > 0 && rad.rows() == m.dim() {
        return Err(RepError::IncompleteLibrary(format!(
            "no library simple is a quotient of a module of dimension {}",
            m.dim()
        )));
    }
    lib.sort_labels(&mut top);
    Ok((rad, top))
}

/// Radical of `m` as echelon basis rows. The library must already contain
/// every composition factor.
pub fn radical(m: &GModule, lib: &SimpleLibrary) -> Result<FFMatrix> {
    let m = m.embed(lib.field())?;
    Ok(radical_with_top(&m, lib)?.0.rref().matrix)
}

/// Sum of the images of all homomorphisms from library simples, with the
/// socle layer.
fn socle_with_layer(m: &GModule, lib: &SimpleLibrary) -> Result<(FFMatrix, Vec<String>)> {
    let mut images: Option<FFMatrix> = None;
    let mut layer = Vec::new();
    for s in lib.simples() {
        for phi in hom(&s.module, m)? {
            layer.push(s.label.clone());
            images = Some(match images {
                None => phi,
                Some(acc) => acc.vstack(&phi)?,
            });
        }
    }
    if m.dim() > 0 && images.is_none() {
        return Err(RepError::IncompleteLibrary(format!(
            "no library simple embeds in a module of dimension {}",
            m.dim()
        )));
    }
    lib.sort_labels(&mut layer);
    let soc = images.map_or_else(|| FFMatrix::zeros(m.field(), 0, m.dim()), |x| x.row_space());
    Ok((soc, layer))
}

pub fn socle(m: &GModule, lib: &SimpleLibrary) -> Result<FFMatrix> {
    let m = m.embed(lib.field())?;
    Ok(socle_with_layer(&m, lib)?.0)
}

/// Radical series. Composition factors are chopped first so the library is
/// complete and over a large enough field.
pub fn loewy_series(m: &GModule, lib: &SimpleLibrary) -> Result<LoewySeries> {
    lib.chop(m)?;
    let mut cur = m.embed(lib.field())?;
    let mut layers = Vec::new();
    while cur.dim() > 0 {
        let (rad, top) = radical_with_top(&cur, lib)?;
        layers.push(top);
        cur = if rad.rows() == 0 {
            GModule::new(cur.group().clone(), cur.field(), 0, vec![FFMatrix::zeros(cur.field(), 0, 0); cur.generators().len()])?
        } else {
            cur.submodule(&rad)?.0
        };
    }
    Ok(LoewySeries { layers })
}

/// Socle series, listed top first like [`loewy_series`].
pub fn socle_series(m: &GModule, lib: &SimpleLibrary) -> Result<LoewySeries> {
    lib.chop(m)?;
    let mut cur = m.embed(lib.field())?;
    let mut layers = Vec::new();
    while cur.dim() > 0 {
        let (soc, layer) = socle_with_layer(&cur, lib)?;
        layers.push(layer);
        cur = cur.quotient(&soc)?.0;
    }
    layers.reverse();
    Ok(LoewySeries { layers })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf2::FieldSpec;
    use crate::groups::{borel_subgroup, construct_str};
    use crate::repmod::scott_module;

    #[test]
    fn psl2_7_borel_scott_is_k_ss_k() {
        let g = Arc::new(construct_str("psl2:7").unwrap());
        let b = borel_subgroup(&g).unwrap();
        let sc = scott_module(&g, &b, FieldSpec::GF2).unwrap();
        let lib = SimpleLibrary::new(g, FieldSpec::GF2).unwrap();
        let series = loewy_series(&sc.module, &lib).unwrap();
        assert_eq!(series.display(), "1 | 3a+3b | 1");
        assert_eq!(series.total_dim(&lib), 8);
        assert_eq!(socle_series(&sc.module, &lib).unwrap(), series);
    }

    #[test]
    fn simple_module_has_one_layer() {
        let g = Arc::new(construct_str("a:7").unwrap());
        let m = GModule::natural(g.clone(), FieldSpec::GF2).unwrap();
        let ones = FFMatrix::from_rows(FieldSpec::GF2, &[vec![1; 7]]).unwrap();
        let (six, _) = m.quotient(&ones).unwrap();
        let lib = SimpleLibrary::new(g, FieldSpec::GF2).unwrap();
        let series = loewy_series(&six, &lib).unwrap();
        assert_eq!(series.layers, vec![vec!["6a".to_string()]]);
    }

    #[test]
    fn direct_sum_of_natural_module_pieces() {
        // A7 on 7 points is k ⊕ 6: semisimple, one layer.
        let g = Arc::new(construct_str("a:7").unwrap());
        let m = GModule::natural(g.clone(), FieldSpec::GF2).unwrap();
        let lib = SimpleLibrary::new(g, FieldSpec::GF2).unwrap();
        let series = loewy_series(&m, &lib).unwrap();
        assert_eq!(series.display(), "1+6a");
        assert_eq!(radical(&m, &lib).unwrap().rows(), 0);
        assert_eq!(socle(&m, &lib).unwrap().rows(), 7);
    }
}
