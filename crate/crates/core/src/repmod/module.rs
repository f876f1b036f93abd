use std::sync::Arc;

use rand::Rng;

use super::{check_dim, rng, RepError, Result};
use crate::gf2::{FFMatrix, FieldSpec};
use crate::groups::{FiniteGroup, Permutation};

/// A finite-dimensional right module for a permutation group, given by one
/// invertible matrix per group generator. Vectors are rows and `v·g` is
/// `v * gens[i]`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    field: FieldSpec,
    dim: usize,
    gens: Vec<FFMatrix>,
}

impl GModule {
    /// Builds a module from generator matrices, checking shapes, fields and
    /// invertibility but not the group relations.
    pub fn new(group: Arc<FiniteGroup>, field: FieldSpec, dim: usize, gens: Vec<FFMatrix>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(RepError::NotRepresentation(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        for m in &gens {
            if m.shape() != (dim, dim) || m.field() != field {
                return Err(RepError::NotRepresentation(format!(
                    "matrix of shape {:?} over {} in a {dim}-dimensional module over {field}",
                    m.shape(),
                    m.field()
                )));
            }
            if m.rank() != dim {
                return Err(RepError::NotRepresentation("singular generator matrix".into()));
            }
        }
        Ok(GModule { group, field, dim, gens })
    }

    /// Like [`GModule::new`], and also checks `ρ(a)ρ(b) = ρ(ab)` on random
    /// pairs and `ρ(g)^{|g|} = 1` on the generators.
    pub fn new_checked(group: Arc<FiniteGroup>, field: FieldSpec, dim: usize, gens: Vec<FFMatrix>) -> Result<Self> {
        let m = Self::new(group, field, dim, gens)?;
        m.check_representation(16)?;
        Ok(m)
    }

    pub fn trivial(group: Arc<FiniteGroup>, field: FieldSpec) -> Self {
        let gens = vec![FFMatrix::identity(field, 1); group.generators().len()];
        GModule { group, field, dim: 1, gens }
    }

    /// Permutation module on a set, one image table per group generator.
    pub fn from_point_action(group: Arc<FiniteGroup>, field: FieldSpec, images: &[Vec<usize>]) -> Result<Self> {
        let dim = images.first().map_or(0, Vec::len);
        check_dim("permutation module", dim)?;
        let gens = images.iter().map(|im| FFMatrix::permutation(field, im)).collect();
        Self::new(group, field, dim, gens)
    }

    /// The natural permutation module of the group on its domain.
    pub fn natural(group: Arc<FiniteGroup>, field: FieldSpec) -> Result<Self> {
        let images: Vec<Vec<usize>> = group
            .generators()
            .iter()
            .map(|g| (0..group.degree()).map(|x| g.apply(x)).collect())
            .collect();
        Self::from_point_action(group, field, &images)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[FFMatrix] {
        &self.gens
    }

    /// Matrix of a word in the generators (left to right).
    pub fn action_word(&self, word: &[usize]) -> FFMatrix {
        let mut m = FFMatrix::identity(self.field, self.dim);
        for &i in word {
            m = m.mul(&self.gens[i]).expect("square");
        }
        m
    }

    pub fn action(&self, g: &Permutation) -> Result<FFMatrix> {
        Ok(self.action_word(&self.group.word_of(g)?))
    }

    pub fn action_index(&self, i: usize) -> FFMatrix {
        self.action_word(&self.group.word(i))
    }

    /// Matrices of every group element, indexed like the element table.
    pub fn all_actions(&self) -> Result<Vec<FFMatrix>> {
        let n = self.group.enumerate()?;
        let cells = n.saturating_mul(self.dim * self.dim);
        if cells > 1 << 28 {
            return Err(RepError::CapExceeded(format!("{n} matrices of dimension {}", self.dim)));
        }
        let mut out: Vec<Option<FFMatrix>> = vec![None; n];
        for (i, link) in self.group.spanning_tree() {
            let m = match link {
                None => FFMatrix::identity(self.field, self.dim),
                Some((p, g)) => out[p].as_ref().expect("parent first").mul(&self.gens[g])?,
            };
            out[i] = Some(m);
        }
        Ok(out.into_iter().map(|m| m.expect("all visited")).collect())
    }

    pub fn check_representation(&self, samples: usize) -> Result<()> {
        let n = self.group.enumerate()?;
        for (g, m) in self.group.generators().iter().zip(&self.gens) {
            if !m.pow(g.order()).is_identity() {
                return Err(RepError::NotRepresentation(format!("generator {g} has the wrong order")));
            }
        }
        let mut rng = rng();
        for _ in 0..samples {
            let a = rng.random_range(0..n);
            let b = rng.random_range(0..n);
            let ab = self.group.mul_index(a, b);
            if self.action_index(a).mul(&self.action_index(b))? != self.action_index(ab) {
                return Err(RepError::NotRepresentation(format!("relation fails on elements {a}, {b}")));
            }
        }
        Ok(())
    }

    /// Contragredient module: `g` acts by the inverse transpose.
    pub fn dual(&self) -> GModule {
        let gens = self
            .gens
            .iter()
            .map(|m| m.inverse().expect("invertible").transpose())
            .collect();
        GModule { gens, ..self.clone() }
    }

    pub fn tensor(&self, other: &GModule) -> Result<GModule> {
        self.same_group(other)?;
        let field = self.field.join(other.field);
        let (a, b) = (self.embed(field)?, other.embed(field)?);
        check_dim("tensor product", a.dim * b.dim)?;
        let gens = a
            .gens
            .iter()
            .zip(&b.gens)
            .map(|(x, y)| x.kron(y))
            .collect::<std::result::Result<_, _>>()?;
        Ok(GModule {
            group: self.group.clone(),
            field,
            dim: a.dim * b.dim,
            gens,
        })
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.same_group(other)?;
        let field = self.field.join(other.field);
        let (a, b) = (self.embed(field)?, other.embed(field)?);
        let gens = a
            .gens
            .iter()
            .zip(&b.gens)
            .map(|(x, y)| block_diag(x, y))
            .collect();
        Ok(GModule {
            group: self.group.clone(),
            field,
            dim: a.dim + b.dim,
            gens,
        })
    }

    pub fn embed(&self, field: FieldSpec) -> Result<GModule> {
        if field == self.field {
            return Ok(self.clone());
        }
        let gens = self
            .gens
            .iter()
            .map(|m| m.embed(field))
            .collect::<std::result::Result<_, _>>()?;
        Ok(GModule { field, gens, ..self.clone() })
    }

    fn same_group(&self, other: &GModule) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group.generators() == other.group.generators() {
            Ok(())
        } else {
            Err(RepError::NotRepresentation(format!(
                "modules for different groups {} and {}",
                self.group.name(),
                other.group.name()
            )))
        }
    }

    /// Whether the row space of `basis` is stable under the action.
    pub fn is_submodule(&self, basis: &FFMatrix) -> bool {
        let u = basis.rref().matrix;
        self.gens.iter().all(|g| {
            let img = u.mul(g).expect("shape");
            u.solve_left(&img).is_ok()
        })
    }

    /// The submodule spanned by the rows of `basis`, in the coordinates of
    /// its reduced echelon basis (returned alongside).
    pub fn submodule(&self, basis: &FFMatrix) -> Result<(GModule, FFMatrix)> {
        let u = basis.rref().matrix;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                u.solve_left(&u.mul(g)?)
                    .map_err(|_| RepError::NotRepresentation("subspace is not a submodule".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = GModule {
            group: self.group.clone(),
            field: self.field,
            dim: u.rows(),
            gens,
        };
        Ok((m, u))
    }

    /// The quotient by the submodule spanned by `basis`. Quotient
    /// coordinates are the non-pivot columns of the echelon basis, which are
    /// returned alongside.
    pub fn quotient(&self, basis: &FFMatrix) -> Result<(GModule, Vec<usize>)> {
        if !self.is_submodule(basis) {
            return Err(RepError::NotRepresentation("subspace is not a submodule".into()));
        }
        let r = basis.rref();
        let u = r.matrix;
        let keep: Vec<usize> = (0..self.dim).filter(|c| !r.pivots.contains(c)).collect();
        let u_keep = u.select_cols(&keep);
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows = g.select_rows(&keep);
                let correction = rows.select_cols(&r.pivots).mul(&u_keep)?;
                Ok(rows.select_cols(&keep).add(&correction)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = GModule {
            group: self.group.clone(),
            field: self.field,
            dim: keep.len(),
            gens,
        };
        Ok((m, keep))
    }

    /// Restriction to a subgroup given on the same domain.
    pub fn restrict(&self, sub: Arc<FiniteGroup>) -> Result<GModule> {
        if sub.degree() != self.group.degree() {
            return Err(RepError::NotASubgroup(sub.name().to_string()));
        }
        self.restrict_via(sub, |h| h.clone())
    }

    /// Restriction along an injective homomorphism into the module's group,
    /// given on generators of `target` by `map`.
    pub fn restrict_via(&self, target: Arc<FiniteGroup>, map: impl Fn(&Permutation) -> Permutation) -> Result<GModule> {
        let gens = target
            .generators()
            .iter()
            .map(|h| {
                let img = map(h);
                self.action(&img)
                    .map_err(|_| RepError::NotASubgroup(format!("{} is not in {}", img, self.group.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            group: target,
            field: self.field,
            dim: self.dim,
            gens,
        })
    }
}

pub(crate) fn block_diag(a: &FFMatrix, b: &FFMatrix) -> FFMatrix {
    let f = a.field();
    let top = a.hstack(&FFMatrix::zeros(f, a.rows(), b.cols())).expect("rows");
    let bottom = FFMatrix::zeros(f, b.rows(), a.cols()).hstack(b).expect("rows");
    top.vstack(&bottom).expect("cols")
}
