use std::fmt;

use super::vector::{axpy, first_nonzero, for_each_nonzero, get_entry, scale_in_place, set_entry, words_for};
use super::{shape_check, FFVec, FieldSpec, Gf2Error, Poly};

/// Dense matrix over GF(2^e).
///
/// Row `r` occupies `data[r * e * wpr .. (r + 1) * e * wpr]`, plane `k` of
/// that row being the `k`-th bit of every entry packed into `wpr` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    wpr: usize,
    data: Vec<u64>,
}

/// Reduced row-echelon form with the list of pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FFMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FFMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        FFMatrix {
            rows,
            cols,
            field,
            wpr,
            data: vec![0; rows * wpr * field.degree() as usize],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u8>]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            shape_check("from_rows", r.len() == cols, (i, r.len()), (rows.len(), cols))?;
            for (j, &v) in r.iter().enumerate() {
                if v as usize >= field.order() {
                    return Err(Gf2Error::Parse(format!("entry {v} outside {field}")));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn from_vecs(field: FieldSpec, cols: usize, vecs: &[FFVec]) -> Self {
        let mut m = Self::zeros(field, vecs.len(), cols);
        for (i, v) in vecs.iter().enumerate() {
            debug_assert_eq!(v.len(), cols);
            debug_assert_eq!(v.field(), field);
            m.row_words_mut(i).copy_from_slice(&v.data);
        }
        m
    }

    /// Permutation matrix sending basis vector `i` to basis vector `images[i]`
    /// (so `e_i * P = e_{images[i]}`).
    pub fn permutation(field: FieldSpec, images: &[usize]) -> Self {
        let mut m = Self::zeros(field, images.len(), images.len());
        for (i, &j) in images.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    fn e(&self) -> usize {
        self.field.degree() as usize
    }

    #[inline]
    fn stride(&self) -> usize {
        self.wpr * self.e()
    }

    #[inline]
    pub(crate) fn row_words(&self, r: usize) -> &[u64] {
        let s = self.stride();
        &self.data[r * s..(r + 1) * s]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        let s = self.stride();
        &mut self.data[r * s..(r + 1) * s]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        debug_assert!(r < self.rows && c < self.cols);
        get_entry(self.e(), self.wpr, self.row_words(r), c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(r < self.rows && c < self.cols);
        let (e, wpr) = (self.e(), self.wpr);
        set_entry(e, wpr, self.row_words_mut(r), c, v)
    }

    pub fn row(&self, r: usize) -> FFVec {
        FFVec::from_words(self.field, self.cols, self.row_words(r).to_vec())
    }

    pub fn set_row(&mut self, r: usize, v: &FFVec) {
        debug_assert_eq!(v.len(), self.cols);
        self.row_words_mut(r).copy_from_slice(&v.data);
    }

    pub fn row_vecs(&self) -> Vec<FFVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    /// `row[dst] += c * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: u8) {
        assert_ne!(dst, src);
        let s = self.stride();
        let (field, wpr) = (self.field, self.wpr);
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        axpy(field, wpr, a, b, c, 0);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride();
        for i in 0..s {
            self.data.swap(a * s + i, b * s + i);
        }
    }

    pub fn scale_row(&mut self, r: usize, c: u8) {
        let (field, wpr) = (self.field, self.wpr);
        scale_in_place(field, wpr, self.row_words_mut(r), c);
    }

    fn same_field(&self, other: &FFMatrix) -> Result<(), Gf2Error> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Gf2Error::FieldMismatch(self.field, other.field))
        }
    }

    pub fn add(&self, other: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
        self.same_field(other)?;
        shape_check("add", self.shape() == other.shape(), self.shape(), other.shape())?;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= *b;
        }
        Ok(out)
    }

    pub fn scale(&self, c: u8) -> FFMatrix {
        let mut out = self.clone();
        for r in 0..self.rows {
            out.scale_row(r, c);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
        self.same_field(other)?;
        shape_check("mul", self.cols == other.rows, self.shape(), other.shape())?;
        if self.field == FieldSpec::GF2 && self.cols >= 64 && self.rows >= 32 {
            return Ok(self.mul_gf2_tables(other));
        }
        let mut out = FFMatrix::zeros(self.field, self.rows, other.cols);
        let e = self.e();
        let (field, owpr) = (self.field, other.wpr);
        for r in 0..self.rows {
            let dst = {
                let s = out.stride();
                &mut out.data[r * s..(r + 1) * s]
            };
            for_each_nonzero(e, self.wpr, self.row_words(r), |j, a| {
                axpy(field, owpr, dst, other.row_words(j), a, 0);
            });
        }
        Ok(out)
    }

    /// GF(2) product using 8-row lookup tables of `other` (the "four Russians"
    /// trick): each byte of a row of `self` selects one precomputed XOR.
    fn mul_gf2_tables(&self, other: &FFMatrix) -> FFMatrix {
        let mut out = FFMatrix::zeros(FieldSpec::GF2, self.rows, other.cols);
        let ow = other.wpr;
        let mut table = vec![0u64; 256 * ow];
        for chunk in 0..self.cols.div_ceil(8) {
            let base = chunk * 8;
            let width = (self.cols - base).min(8);
            for idx in 1usize..(1 << width) {
                let low = idx.trailing_zeros() as usize;
                let prev = idx & (idx - 1);
                let (head, tail) = table.split_at_mut(idx * ow);
                let src = other.row_words(base + low);
                let dst = &mut tail[..ow];
                let prev_row = &head[prev * ow..(prev + 1) * ow];
                for w in 0..ow {
                    dst[w] = prev_row[w] ^ src[w];
                }
            }
            let (word, shift) = (base / 64, base % 64);
            for r in 0..self.rows {
                let byte = ((self.data[r * self.wpr + word] >> shift) & 0xff) as usize;
                if byte == 0 {
                    continue;
                }
                let t = &table[byte * ow..(byte + 1) * ow];
                let d = &mut out.data[r * ow..(r + 1) * ow];
                for w in 0..ow {
                    d[w] ^= t[w];
                }
            }
        }
        out
    }

    /// Row vector times matrix, `v * self`.
    pub fn mul_vec(&self, v: &FFVec) -> FFVec {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = FFVec::zeros(self.field, self.cols);
        let e = self.e();
        for_each_nonzero(e, v.wpr, &v.data, |j, a| {
            axpy(self.field, self.wpr, &mut out.data, self.row_words(j), a, 0);
        });
        out
    }

    pub fn transpose(&self) -> FFMatrix {
        let mut out = FFMatrix::zeros(self.field, self.cols, self.rows);
        let e = self.e();
        for r in 0..self.rows {
            for_each_nonzero(e, self.wpr, self.row_words(r), |c, v| out.set(c, r, v));
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> FFMatrix {
        let mut base = self.clone();
        let mut acc = FFMatrix::identity(self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("square");
            }
        }
        acc
    }

    /// Row echelon reduction in place. Returns pivot columns; the first
    /// `pivots.len()` rows are the reduced nonzero rows.
    fn reduce_in_place(&mut self, full: bool) -> Vec<usize> {
        let e = self.e();
        let (field, wpr, s) = (self.field, self.wpr, self.stride());
        let mut pivots = Vec::new();
        let mut rank = 0;
        let mut col = 0;
        while rank < self.rows && col < self.cols {
            let mut best: Option<(usize, usize)> = None;
            for r in rank..self.rows {
                if let Some(c) = first_nonzero(e, wpr, self.row_words(r), col) {
                    if best.is_none_or(|(bc, _)| c < bc) {
                        best = Some((c, r));
                        if c == col {
                            break;
                        }
                    }
                }
            }
            let Some((c, r)) = best else { break };
            col = c;
            self.swap_rows(rank, r);
            let lead = self.get(rank, col);
            if lead != 1 {
                self.scale_row(rank, field.inv(lead));
            }
            let from = col / 64;
            let pivot_row = self.row_words(rank).to_vec();
            let start = if full { 0 } else { rank + 1 };
            for r2 in start..self.rows {
                if r2 == rank {
                    continue;
                }
                let v = get_entry(e, wpr, &self.data[r2 * s..(r2 + 1) * s], col);
                if v != 0 {
                    axpy(field, wpr, &mut self.data[r2 * s..(r2 + 1) * s], &pivot_row, v, from);
                }
            }
            pivots.push(col);
            rank += 1;
            col += 1;
        }
        pivots
    }

    /// Reduced row-echelon form; zero rows are dropped.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(true);
        m.truncate_rows(pivots.len());
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(false).len()
    }

    fn truncate_rows(&mut self, n: usize) {
        let s = self.stride();
        self.rows = n;
        self.data.truncate(n * s);
    }

    /// Echelon-normalised basis of `{v : self * v^T = 0}`, returned as rows.
    pub fn nullspace(&self) -> FFMatrix {
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = FFMatrix::zeros(self.field, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (i, &p) in rr.pivots.iter().enumerate() {
                let v = rr.matrix.get(i, f);
                if v != 0 {
                    out.set(k, p, v);
                }
            }
        }
        out.rref().matrix
    }

    /// Echelon-normalised basis of `{x : x * self = 0}`.
    pub fn left_nullspace(&self) -> FFMatrix {
        self.transpose().nullspace()
    }

    /// Returns `(T, R, pivots)` with `T * self = R` in reduced echelon form
    /// (all rows kept, so `T` is invertible).
    pub fn rref_with_transform(&self) -> (FFMatrix, FFMatrix, Vec<usize>) {
        let mut m = self.hstack(&FFMatrix::identity(self.field, self.rows)).expect("same rows");
        let pivots = m.reduce_left_block(self.cols);
        let r = m.select_cols(&(0..self.cols).collect::<Vec<_>>());
        let t = m.select_cols(&(self.cols..self.cols + self.rows).collect::<Vec<_>>());
        (t, r, pivots)
    }

    fn reduce_left_block(&mut self, ncols: usize) -> Vec<usize> {
        let e = self.e();
        let (field, wpr, s) = (self.field, self.wpr, self.stride());
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            if rank == self.rows {
                break;
            }
            let Some(r) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(rank, r);
            let lead = self.get(rank, col);
            if lead != 1 {
                self.scale_row(rank, field.inv(lead));
            }
            let pivot_row = self.row_words(rank).to_vec();
            for r2 in 0..self.rows {
                if r2 == rank {
                    continue;
                }
                let v = get_entry(e, wpr, &self.data[r2 * s..(r2 + 1) * s], col);
                if v != 0 {
                    axpy(field, wpr, &mut self.data[r2 * s..(r2 + 1) * s], &pivot_row, v, col / 64);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// Solve `X * self = b` for `X` (row-vector convention).
    pub fn solve_left(&self, b: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
        self.same_field(b)?;
        shape_check("solve_left", self.cols == b.cols, self.shape(), b.shape())?;
        let (t, r, pivots) = self.rref_with_transform();
        let mut out = FFMatrix::zeros(self.field, b.rows, self.rows);
        for i in 0..b.rows {
            let target = b.row(i);
            let mut check = FFVec::zeros(self.field, self.cols);
            let mut coeff = FFVec::zeros(self.field, self.rows);
            for (k, &p) in pivots.iter().enumerate() {
                let c = target.get(p);
                if c != 0 {
                    check.axpy(c, &r.row(k));
                    coeff.axpy(c, &t.row(k));
                }
            }
            if check != target {
                return Err(Gf2Error::NoSolution);
            }
            out.set_row(i, &coeff);
        }
        Ok(out)
    }

    /// Solve `self * x = b` for a column vector `x`, given as a vector.
    pub fn solve(&self, b: &FFVec) -> Result<FFVec, Gf2Error> {
        shape_check("solve", self.rows == b.len(), self.shape(), (b.len(), 1))?;
        let bt = FFMatrix::from_vecs(self.field, b.len(), std::slice::from_ref(b));
        let x = self.transpose().solve_left(&bt)?;
        Ok(x.row(0))
    }

    pub fn inverse(&self) -> Result<FFMatrix, Gf2Error> {
        shape_check("inverse", self.rows == self.cols, self.shape(), self.shape())?;
        let (t, _, pivots) = self.rref_with_transform();
        if pivots.len() != self.rows {
            return Err(Gf2Error::Singular);
        }
        Ok(t)
    }

    pub fn hstack(&self, other: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
        self.same_field(other)?;
        shape_check("hstack", self.rows == other.rows, self.shape(), other.shape())?;
        let mut out = FFMatrix::zeros(self.field, self.rows, self.cols + other.cols);
        let e = self.e();
        for r in 0..self.rows {
            for_each_nonzero(e, self.wpr, self.row_words(r), |c, v| out.set(r, c, v));
            for_each_nonzero(e, other.wpr, other.row_words(r), |c, v| {
                out.set(r, self.cols + c, v)
            });
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
        self.same_field(other)?;
        shape_check("vstack", self.cols == other.cols, self.shape(), other.shape())?;
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend_from_slice(&other.data);
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> FFMatrix {
        let mut out = FFMatrix::zeros(self.field, rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> FFMatrix {
        let mut out = FFMatrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                let v = self.get(r, c);
                if v != 0 {
                    out.set(r, j, v);
                }
            }
        }
        out
    }

    /// Kronecker product, row-major blocks: entry `((i,k),(j,l)) = a_ij b_kl`.
    pub fn kron(&self, other: &FFMatrix) -> Result<FFMatrix, Gf2Error> {
        self.same_field(other)?;
        let (rb, cb) = other.shape();
        let mut out = FFMatrix::zeros(self.field, self.rows * rb, self.cols * cb);
        let e = self.e();
        let f = self.field;
        for i in 0..self.rows {
            let a_nz = {
                let mut v = Vec::new();
                for_each_nonzero(e, self.wpr, self.row_words(i), |j, a| v.push((j, a)));
                v
            };
            for k in 0..rb {
                let r = i * rb + k;
                for_each_nonzero(e, other.wpr, other.row_words(k), |l, b| {
                    for &(j, a) in &a_nz {
                        out.set(r, j * cb + l, f.mul(a, b));
                    }
                });
            }
        }
        Ok(out)
    }

    /// The same matrix with entries embedded into a larger field.
    pub fn embed(&self, target: FieldSpec) -> Result<FFMatrix, Gf2Error> {
        if target == self.field {
            return Ok(self.clone());
        }
        let mut out = FFMatrix::zeros(target, self.rows, self.cols);
        let e = self.e();
        for r in 0..self.rows {
            let mut err = None;
            for_each_nonzero(e, self.wpr, self.row_words(r), |c, v| match self.field.embed(target, v) {
                Ok(x) => out.set(r, c, x),
                Err(er) => err = Some(er),
            });
            if let Some(er) = err {
                return Err(er);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> u8 {
        (0..self.rows.min(self.cols)).fold(0, |acc, i| acc ^ self.get(i, i))
    }

    /// Characteristic polynomial via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut h: Vec<Vec<u8>> = self.to_rows();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let t_inv = f.inv(h[m][m - 1]);
            for i in m + 1..n {
                let u = f.mul(h[i][m - 1], t_inv);
                if u == 0 {
                    continue;
                }
                let (top, bottom) = h.split_at_mut(i);
                let (src, dst) = (&top[m], &mut bottom[0]);
                for c in 0..n {
                    dst[c] ^= f.mul(u, src[c]);
                }
                for row in h.iter_mut() {
                    let add = f.mul(u, row[i]);
                    row[m] ^= add;
                }
            }
        }
        // p_m = (X - h_mm) p_{m-1} - sum_i t_i h_{m-i,m} p_{m-i-1}, 1-based.
        let hh = |a: usize, b: usize| h[a - 1][b - 1];
        let mut ps: Vec<Poly> = vec![Poly::one(f)];
        for m in 1..=n {
            let mut p = ps[m - 1].mul(&Poly::new(f, vec![hh(m, m), 1]));
            let mut t = 1u8;
            for i in 1..m {
                t = f.mul(t, hh(m - i + 1, m - i));
                if t == 0 {
                    break;
                }
                let c = f.mul(t, hh(m - i, m));
                if c != 0 {
                    p = p.add(&ps[m - i - 1].scale(c));
                }
            }
            ps.push(p);
        }
        ps.pop().expect("nonempty")
    }

    /// Evaluate a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> FFMatrix {
        let n = self.rows;
        let id = FFMatrix::identity(self.field, n);
        let mut acc = FFMatrix::zeros(self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("square");
            if c != 0 {
                acc = acc.add(&id.scale(c)).expect("square");
            }
        }
        acc
    }

    /// Row space basis in reduced echelon form.
    pub fn row_space(&self) -> FFMatrix {
        self.rref().matrix
    }
}

impl fmt::Debug for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FFMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows.min(32) {
            for c in 0..self.cols.min(64) {
                write!(f, "{:x}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_matrix(rng: &mut ChaCha8Rng, f: FieldSpec, r: usize, c: usize) -> FFMatrix {
        let mut m = FFMatrix::zeros(f, r, c);
        for i in 0..r {
            for j in 0..c {
                m.set(i, j, rng.random_range(0..f.order()) as u8);
            }
        }
        m
    }

    fn naive_mul(a: &FFMatrix, b: &FFMatrix) -> FFMatrix {
        let f = a.field();
        let mut out = FFMatrix::zeros(f, a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = 0;
                for k in 0..a.cols() {
                    acc ^= f.mul(a.get(i, k), b.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    #[test]
    fn unipotent_squares_to_identity() {
        let a = FFMatrix::from_rows(FieldSpec::GF2, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(a.mul(&a).unwrap().is_identity());
    }

    #[test]
    fn products_match_naive_in_all_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for f in [FieldSpec::GF2, FieldSpec::GF4, FieldSpec::GF16] {
            for &(r, k, c) in &[(3, 4, 5), (40, 70, 66), (65, 129, 3)] {
                let a = random_matrix(&mut rng, f, r, k);
                let b = random_matrix(&mut rng, f, k, c);
                assert_eq!(a.mul(&b).unwrap(), naive_mul(&a, &b));
            }
        }
    }

    #[test]
    fn transpose_reverses_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(&mut rng, FieldSpec::GF2, 17, 23);
        let b = random_matrix(&mut rng, FieldSpec::GF2, 23, 5);
        let lhs = a.mul(&b).unwrap().transpose();
        let rhs = b.transpose().mul(&a.transpose()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_of_zero_and_identity() {
        let z = FFMatrix::zeros(FieldSpec::GF2, 7, 9);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().rows(), 9);
        assert_eq!(FFMatrix::identity(FieldSpec::GF4, 70).rank(), 70);
    }

    #[test]
    fn inverse_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [FieldSpec::GF2, FieldSpec::GF16] {
            let mut a = random_matrix(&mut rng, f, 30, 30);
            while a.rank() < 30 {
                a = random_matrix(&mut rng, f, 30, 30);
            }
            let inv = a.inverse().unwrap();
            assert!(a.mul(&inv).unwrap().is_identity());
            let b = random_matrix(&mut rng, f, 4, 30);
            let x = a.solve_left(&b).unwrap();
            assert_eq!(x.mul(&a).unwrap(), b);
        }
    }

    #[test]
    fn solve_reports_inconsistency() {
        let a = FFMatrix::from_rows(FieldSpec::GF2, &[vec![1, 0], vec![1, 0]]).unwrap();
        let b = FFVec::from_entries(FieldSpec::GF2, &[1, 0]);
        assert_eq!(a.solve(&b), Err(Gf2Error::NoSolution));
        let b = FFVec::from_entries(FieldSpec::GF2, &[1, 1]);
        let x = a.solve(&b).unwrap();
        assert_eq!(x.get(0), 1);
    }

    #[test]
    fn charpoly_satisfies_cayley_hamilton() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for f in [FieldSpec::GF2, FieldSpec::GF4, FieldSpec::GF16] {
            for n in [1, 2, 5, 13] {
                let a = random_matrix(&mut rng, f, n, n);
                let p = a.charpoly();
                assert_eq!(p.degree(), Some(n));
                assert!(a.eval_poly(&p).is_zero());
                assert_eq!(p.coeffs()[n - 1], a.trace());
            }
        }
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // x^3 + x + 1 over GF(2)
        let c = FFMatrix::from_rows(
            FieldSpec::GF2,
            &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]],
        )
        .unwrap();
        assert_eq!(c.charpoly().coeffs(), &[1, 1, 0, 1]);
    }

    #[test]
    fn kron_identity_is_block_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, FieldSpec::GF4, 3, 3);
        let k = FFMatrix::identity(FieldSpec::GF4, 2).kron(&a).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i / 3 == j / 3 { a.get(i % 3, j % 3) } else { 0 };
                assert_eq!(k.get(i, j), expect);
            }
        }
    }
}
