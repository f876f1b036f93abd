use rand::Rng;

use super::{check_dim, hom, rng, GModule, RepError, Result};
use crate::gf2::{EchelonBasis, FFMatrix, FFVec, Poly};

/// What a search through an endomorphism algebra found.
#[derive(Clone, Debug)]
pub enum EndAnalysis {
    /// An endomorphism whose characteristic polynomial has at least two
    /// distinct irreducible factors, with one of them and its multiplicity.
    Split { element: FFMatrix, factor: Poly, multiplicity: usize },
    /// The algebra is local: the ideal generated by the nilpotent parts
    /// found is nilpotent with quotient a field of this degree.
    Local { residue_degree: usize },
}

/// An indecomposable summand: its basis rows in the ambient module, the
/// module structure in those coordinates and the degree of `End/J` over
/// the ground field.
#[derive(Clone, Debug)]
pub struct Summand {
    pub basis: FFMatrix,
    pub module: GModule,
    pub residue_degree: usize,
}

fn flatten(m: &FFMatrix) -> FFVec {
    let (r, c) = m.shape();
    let mut v = FFVec::zeros(m.field(), r * c);
    for i in 0..r {
        for (j, x) in m.row(i).nonzeros() {
            v.set(i * c + j, x);
        }
    }
    v
}

fn span_of(mats: impl IntoIterator<Item = FFMatrix>, n: usize, field: crate::gf2::FieldSpec) -> (EchelonBasis, Vec<FFMatrix>) {
    let mut basis = EchelonBasis::new(field, n * n);
    let mut kept = Vec::new();
    for m in mats {
        if basis.insert(&flatten(&m)).new_row.is_some() {
            kept.push(m);
        }
    }
    (basis, kept)
}

/// Two-sided ideal generated by `gens` in the algebra spanned by `alg`.
fn ideal_closure(gens: &[FFMatrix], alg: &[FFMatrix]) -> Vec<FFMatrix> {
    let n = alg[0].rows();
    let field = alg[0].field();
    let mut basis = EchelonBasis::new(field, n * n);
    let mut members: Vec<FFMatrix> = Vec::new();
    let push = |m: FFMatrix, basis: &mut EchelonBasis, members: &mut Vec<FFMatrix>| {
        if !m.is_zero() && basis.insert(&flatten(&m)).new_row.is_some() {
            members.push(m);
        }
    };
    for g in gens {
        push(g.clone(), &mut basis, &mut members);
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i].clone();
        for a in alg {
            push(x.mul(a).expect("square"), &mut basis, &mut members);
            push(a.mul(&x).expect("square"), &mut basis, &mut members);
        }
        i += 1;
    }
    members
}

fn ideal_is_nilpotent(ideal: &[FFMatrix]) -> bool {
    if ideal.is_empty() {
        return true;
    }
    let n = ideal[0].rows();
    let field = ideal[0].field();
    let mut power: Vec<FFMatrix> = ideal.to_vec();
    let mut dim = power.len();
    loop {
        let products = power.iter().flat_map(|p| ideal.iter().map(move |x| p.mul(x).expect("square")));
        let (_, next) = span_of(products.filter(|m| !m.is_zero()), n, field);
        if next.is_empty() {
            return true;
        }
        if next.len() >= dim {
            return false;
        }
        dim = next.len();
        power = next;
    }
}

fn random_element(rng: &mut impl Rng, basis: &[FFMatrix]) -> FFMatrix {
    let field = basis[0].field();
    let mut acc = FFMatrix::zeros(field, basis[0].rows(), basis[0].cols());
    for b in basis {
        let c = rng.random_range(0..field.order()) as u8;
        if c != 0 {
            acc = acc.add(&b.scale(c)).expect("shape");
        }
    }
    acc
}

/// Searches the algebra spanned by `end` (a basis of an endomorphism ring,
/// containing the identity in its span) for a splitting element or a
/// certificate that the algebra is local.
pub fn analyze_endomorphisms(end: &[FFMatrix]) -> Result<EndAnalysis> {
    if end.is_empty() {
        return Err(RepError::NotRepresentation("empty endomorphism basis".into()));
    }
    if end.len() == 1 {
        return Ok(EndAnalysis::Local { residue_degree: 1 });
    }
    let mut rng = rng();
    let mut nilpotent_parts: Vec<FFMatrix> = Vec::new();
    let mut best_degree = 0usize;
    let tries = 40;
    for attempt in 0..end.len() + tries {
        let a = if attempt < end.len() {
            end[attempt].clone()
        } else {
            random_element(&mut rng, end)
        };
        let factors = a.charpoly().factor();
        if factors.len() >= 2 {
            let (factor, multiplicity) = factors[0].clone();
            return Ok(EndAnalysis::Split {
                element: a,
                factor,
                multiplicity,
            });
        }
        let (f, _) = &factors[0];
        best_degree = best_degree.max(f.degree().unwrap_or(0));
        let nil = a.eval_poly(f);
        if !nil.is_zero() {
            nilpotent_parts.push(nil);
        }
        let checkpoint = attempt + 1 == end.len() || (attempt >= end.len() && (attempt - end.len()) % 8 == 7);
        if checkpoint {
            let ideal = ideal_closure(&nilpotent_parts, end);
            if end.len() == ideal.len() + best_degree && ideal_is_nilpotent(&ideal) {
                return Ok(EndAnalysis::Local {
                    residue_degree: best_degree,
                });
            }
        }
    }
    Err(RepError::NoConvergence(format!(
        "endomorphism algebra of dimension {} neither split nor certified local",
        end.len()
    )))
}

/// Restricts endomorphisms of `M = U ⊕ W` to `U`, given echelon bases.
fn restrict_endomorphisms(end: &[FFMatrix], u: &FFMatrix, w: &FFMatrix) -> Result<Vec<FFMatrix>> {
    let k = u.rows();
    let c = u.vstack(w)?;
    let cinv = c.inverse()?;
    let proj = cinv.select_cols(&(0..k).collect::<Vec<_>>());
    let mats = end
        .iter()
        .map(|a| Ok(u.mul(a)?.mul(&proj)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(span_of(mats, k, u.field()).1)
}

struct Piece {
    basis: FFMatrix,
    module: GModule,
    end: Vec<FFMatrix>,
}

/// Splits `m` into indecomposable summands using its endomorphism ring
/// (computed when `end` is `None`). Pieces failing `keep` are dropped
/// without further splitting; `keep` sees basis rows in `m`'s coordinates.
pub(crate) fn split_filtered(
    m: &GModule,
    end: Option<Vec<FFMatrix>>,
    keep: &dyn Fn(&FFMatrix) -> bool,
) -> Result<Vec<Summand>> {
    check_dim("module to decompose", m.dim())?;
    let end = match end {
        Some(e) => e,
        None => hom(m, m)?,
    };
    let mut out = Vec::new();
    let mut stack = vec![Piece {
        basis: FFMatrix::identity(m.field(), m.dim()),
        module: m.clone(),
        end,
    }];
    while let Some(piece) = stack.pop() {
        match analyze_endomorphisms(&piece.end)? {
            EndAnalysis::Local { residue_degree } => out.push(Summand {
                basis: piece.basis,
                module: piece.module,
                residue_degree,
            }),
            EndAnalysis::Split {
                element,
                factor,
                multiplicity,
            } => {
                let b = element.eval_poly(&factor).pow(multiplicity as u64);
                let ker = b.left_nullspace().rref().matrix;
                let im = b.row_space();
                for (u, w) in [(&ker, &im), (&im, &ker)] {
                    let ambient = u.mul(&piece.basis)?;
                    if !keep(&ambient) {
                        continue;
                    }
                    let (module, _) = piece.module.submodule(u)?;
                    let end = restrict_endomorphisms(&piece.end, u, w)?;
                    stack.push(Piece {
                        basis: ambient,
                        module,
                        end,
                    });
                }
            }
        }
    }
    out.sort_by_key(|s| std::cmp::Reverse(s.module.dim()));
    Ok(out)
}

/// All indecomposable summands of `m`, largest first.
pub fn indecomposable_summands(m: &GModule, end: Option<Vec<FFMatrix>>) -> Result<Vec<Summand>> {
    split_filtered(m, end, &|_| true)
}
