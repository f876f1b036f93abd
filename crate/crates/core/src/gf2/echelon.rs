use super::{shape_check, FFMatrix, FFVec, FieldSpec, Gf2Error};

/// Incrementally built semi-echelon basis: each stored row has a pivot entry
/// equal to 1 and vanishes at the pivots of all earlier rows.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    len: usize,
    rows: Vec<FFVec>,
    pivots: Vec<usize>,
}

/// Outcome of inserting a vector: its coordinates against the rows present
/// before insertion, plus the new row's index and scale if it was independent.
#[derive(Clone, Debug)]
pub struct Insertion {
    pub coeffs: Vec<u8>,
    pub new_row: Option<(usize, u8)>,
}

impl EchelonBasis {
    pub fn new(field: FieldSpec, len: usize) -> Self {
        EchelonBasis {
            field,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &FFMatrix) -> Self {
        let mut b = Self::new(m.field(), m.cols());
        for r in 0..m.rows() {
            b.insert(&m.row(r));
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> &[FFVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Returns `(remainder, coeffs)` with `v = sum coeffs[i] * rows[i] + remainder`
    /// and the remainder zero at every pivot.
    pub fn reduce(&self, v: &FFVec) -> (FFVec, Vec<u8>) {
        let mut r = v.clone();
        let mut coeffs = vec![0u8; self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = r.get(p);
            if c != 0 {
                r.axpy(c, row);
                coeffs[i] = c;
            }
        }
        (r, coeffs)
    }

    pub fn contains(&self, v: &FFVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    pub fn insert(&mut self, v: &FFVec) -> Insertion {
        let (mut r, coeffs) = self.reduce(v);
        let new_row = r.first_nonzero().map(|p| {
            let lambda = r.get(p);
            r.scale(self.field.inv(lambda));
            self.rows.push(r);
            self.pivots.push(p);
            (self.rows.len() - 1, lambda)
        });
        Insertion { coeffs, new_row }
    }

    /// Stored rows as a matrix (semi-echelon, insertion order).
    pub fn matrix(&self) -> FFMatrix {
        FFMatrix::from_vecs(self.field, self.len, &self.rows)
    }

    /// Canonical reduced echelon basis of the span.
    pub fn canonical(&self) -> FFMatrix {
        self.matrix().rref().matrix
    }
}

/// Smallest subspace containing `vectors` and stable under every action
/// (right multiplication), returned in reduced echelon form.
pub fn spin(vectors: &FFMatrix, actions: &[FFMatrix]) -> Result<FFMatrix, Gf2Error> {
    let n = vectors.cols();
    for a in actions {
        shape_check("spin", a.rows() == n && a.cols() == n, vectors.shape(), a.shape())?;
        if a.field() != vectors.field() {
            return Err(Gf2Error::FieldMismatch(vectors.field(), a.field()));
        }
    }
    Ok(spin_basis(vectors, actions).canonical())
}

pub(crate) fn spin_basis(vectors: &FFMatrix, actions: &[FFMatrix]) -> EchelonBasis {
    let mut basis = EchelonBasis::new(vectors.field(), vectors.cols());
    for r in 0..vectors.rows() {
        basis.insert(&vectors.row(r));
    }
    let mut next = 0;
    while next < basis.dim() {
        let v = basis.rows()[next].clone();
        for a in actions {
            basis.insert(&a.mul_vec(&v));
        }
        next += 1;
    }
    basis
}

pub fn subspace_sum(u: &FFMatrix, w: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
    Ok(u.vstack(w)?.rref().matrix)
}

/// Intersection of the row spaces of `u` and `w`.
pub fn subspace_intersection(u: &FFMatrix, w: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
    let u = u.rref().matrix;
    let w = w.rref().matrix;
    let stacked = u.vstack(&w)?;
    let null = stacked.left_nullspace();
    let coeffs = null.select_cols(&(0..u.rows()).collect::<Vec<_>>());
    Ok(coeffs.mul(&u)?.rref().matrix)
}
