//! Low-memory Scott summand for large permutation modules over GF(2).
//!
//! The endomorphism ring of `k_H↑G` is the Hecke algebra with basis the
//! orbital matrices `A_i`. Storing every `A_i` densely costs `r·n²` bits,
//! so here the algebra is kept as sparse structure constants and the
//! idempotent cutting out the Scott summand is found inside it. Only the
//! final idempotent is expanded to an `n × n` matrix.

use rand::Rng;

use super::{rng, RepError, Result};
use crate::gf2::{FFMatrix, FFVec, FieldSpec, Poly};

/// Orbit label of every ordered pair of points, plus one representative
/// pair per orbital.
pub(crate) struct Orbitals {
    pub n: usize,
    pub labels: Vec<u32>,
    pub reps: Vec<(usize, usize)>,
}

impl Orbitals {
    pub fn compute(points: &[Vec<usize>], n: usize) -> Result<Orbitals> {
        if n.saturating_mul(n) > 1 << 26 {
            return Err(RepError::CapExceeded(format!("{n}² point pairs")));
        }
        let mut labels = vec![u32::MAX; n * n];
        let mut reps = Vec::new();
        let mut queue = Vec::new();
        for start in 0..n * n {
            if labels[start] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push((start / n, start % n));
            labels[start] = id;
            queue.push(start);
            while let Some(p) = queue.pop() {
                let (x, y) = (p / n, p % n);
                for im in points {
                    let q = im[x] * n + im[y];
                    if labels[q] == u32::MAX {
                        labels[q] = id;
                        queue.push(q);
                    }
                }
            }
        }
        Ok(Orbitals { n, labels, reps })
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    /// The element `Σ c_i A_i` as a dense `n × n` matrix.
    pub fn expand(&self, c: &FFVec) -> FFMatrix {
        let coeffs = c.entries();
        let mut m = FFMatrix::zeros(FieldSpec::GF2, self.n, self.n);
        for (p, &l) in self.labels.iter().enumerate() {
            if coeffs[l as usize] != 0 {
                m.set(p / self.n, p % self.n, 1);
            }
        }
        m
    }
}

/// The Hecke algebra over GF(2) by structure constants: `A_i A_j` contains
/// `A_k` exactly for the stored triples `(i, j, k)`.
pub(crate) struct Hecke {
    r: usize,
    triples: Vec<[u32; 3]>,
    augmentation: Vec<u8>,
    one: usize,
}

impl Hecke {
    pub fn new(orb: &Orbitals) -> Hecke {
        let (n, r) = (orb.n, orb.count());
        let mut triples = Vec::new();
        let mut keys = Vec::with_capacity(n);
        for (k, &(x, z)) in orb.reps.iter().enumerate() {
            keys.clear();
            keys.extend((0..n).map(|y| (u64::from(orb.labels[x * n + y]) << 32) | u64::from(orb.labels[y * n + z])));
            keys.sort_unstable();
            let mut s = 0;
            while s < keys.len() {
                let mut t = s;
                while t < keys.len() && keys[t] == keys[s] {
                    t += 1;
                }
                if (t - s) % 2 == 1 {
                    triples.push([(keys[s] >> 32) as u32, keys[s] as u32, k as u32]);
                }
                s = t;
            }
        }
        let mut sizes = vec![0usize; r];
        for &l in &orb.labels[..n] {
            sizes[l as usize] += 1;
        }
        // Each A_i has constant row sums; row 0 sees every orbital.
        let augmentation = sizes.iter().map(|&s| (s % 2) as u8).collect();
        Hecke { r, triples, augmentation, one: orb.labels[0] as usize }
    }

    #[cfg(test)]
    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn one(&self) -> FFVec {
        FFVec::unit(FieldSpec::GF2, self.r, self.one)
    }

    pub fn augmentation(&self, a: &FFVec) -> u8 {
        a.nonzeros().iter().fold(0, |s, &(i, _)| s ^ self.augmentation[i])
    }

    pub fn mul(&self, a: &FFVec, b: &FFVec) -> FFVec {
        let (a, b) = (a.entries(), b.entries());
        let mut out = vec![0u8; self.r];
        for &[i, j, k] in &self.triples {
            out[k as usize] ^= a[i as usize] & b[j as usize];
        }
        FFVec::from_entries(FieldSpec::GF2, &out)
    }

    /// Row `j` is `a·A_j`, so `a·v` is `left(a).mul_vec(v)`.
    pub fn left(&self, a: &FFVec) -> FFMatrix {
        let a = a.entries();
        let mut m = FFMatrix::zeros(FieldSpec::GF2, self.r, self.r);
        for &[i, j, k] in &self.triples {
            if a[i as usize] != 0 {
                let (j, k) = (j as usize, k as usize);
                m.set(j, k, m.get(j, k) ^ 1);
            }
        }
        m
    }

    /// Row `i` is `A_i·b`, so `v·b` is `right(b).mul_vec(v)`.
    pub fn right(&self, b: &FFVec) -> FFMatrix {
        let b = b.entries();
        let mut m = FFMatrix::zeros(FieldSpec::GF2, self.r, self.r);
        for &[i, j, k] in &self.triples {
            if b[j as usize] != 0 {
                let (i, k) = (i as usize, k as usize);
                m.set(i, k, m.get(i, k) ^ 1);
            }
        }
        m
    }

    /// Basis of the corner algebra `eHe`.
    fn corner(&self, e: &FFVec) -> FFMatrix {
        self.right(e).mul(&self.left(e)).expect("square matrices").row_space()
    }

    /// Whether `eHe` is local, i.e. the augmentation kernel in it is
    /// nilpotent.
    fn corner_is_local(&self, basis: &FFMatrix) -> bool {
        let kernel: Vec<FFVec> = {
            let rows = basis.row_vecs();
            let pivot = rows.iter().find(|v| self.augmentation(v) == 1).cloned();
            match pivot {
                None => return false,
                Some(p) => rows
                    .iter()
                    .map(|v| if self.augmentation(v) == 1 { v.add(&p).expect("same length") } else { v.clone() })
                    .filter(|v| !v.is_zero())
                    .collect(),
            }
        };
        if kernel.is_empty() {
            return true;
        }
        let rights: Vec<FFMatrix> = kernel.iter().map(|b| self.right(b)).collect();
        let mut power = FFMatrix::from_vecs(FieldSpec::GF2, self.r, &kernel).row_space();
        let mut dim = power.rows();
        while dim > 0 {
            let mut next = FFMatrix::zeros(FieldSpec::GF2, 0, self.r);
            for rb in &rights {
                next = next.vstack(&power.mul(rb).expect("shapes agree")).expect("same width").row_space();
            }
            if next.rows() >= dim {
                return false;
            }
            dim = next.rows();
            power = next;
        }
        true
    }

    /// Minimal polynomial of `x` in the corner with unit `e`, from the
    /// Krylov sequence `e, x, x², …` under left multiplication `lx`.
    fn minimal_polynomial(&self, lx: &FFMatrix, e: &FFVec) -> Poly {
        let cap = self.r + 1;
        let mut rows: Vec<(usize, FFVec, FFVec)> = Vec::new();
        let mut v = e.clone();
        for i in 0..cap {
            let mut w = v.clone();
            let mut comb = FFVec::unit(FieldSpec::GF2, cap, i);
            for (p, b, c) in &rows {
                if w.get(*p) != 0 {
                    w.axpy(1, b);
                    comb.axpy(1, c);
                }
            }
            match w.first_nonzero() {
                None => return Poly::new(FieldSpec::GF2, comb.entries()[..=i].to_vec()),
                Some(p) => rows.push((p, w, comb)),
            }
            v = lx.mul_vec(&v);
        }
        unreachable!("Krylov sequence longer than the algebra dimension")
    }

    /// The idempotent of `x`'s primary component at eigenvalue `ε(x)`,
    /// taken inside the corner with unit `e`.
    fn primary_idempotent(&self, e: &FFVec, x: &FFVec) -> FFVec {
        let lx = self.left(x);
        let mut g = self.minimal_polynomial(&lx, e);
        let degree = g.degree().unwrap_or(0);
        let linear = Poly::new(FieldSpec::GF2, vec![self.augmentation(x), 1]);
        loop {
            let (q, rem) = g.divrem(&linear);
            if !rem.is_zero() {
                break;
            }
            g = q;
        }
        // g(x)·e acts as 1 + nilpotent on the chosen component and as a
        // nilpotent elsewhere, so a high 2-power of it is the idempotent.
        let mut u = FFVec::zeros(FieldSpec::GF2, self.r);
        for &c in g.coeffs().iter().rev() {
            u = lx.mul_vec(&u);
            if c != 0 {
                u = u.add(e).expect("same length");
            }
        }
        let mut power = 1usize;
        while power < degree.max(1) {
            u = self.mul(&u, &u);
            power *= 2;
        }
        u
    }

    /// A primitive idempotent `e` with `ε(e) = 1` and `eHe` local.
    pub fn scott_idempotent(&self, attempts: usize) -> Result<FFVec> {
        let mut rng = rng();
        let mut e = self.one();
        let mut quiet = 0usize;
        for _ in 0..attempts {
            let basis = self.corner(&e);
            if quiet >= 4 {
                if self.corner_is_local(&basis) {
                    return Ok(e);
                }
                quiet = 0;
            }
            let mut x = FFVec::zeros(FieldSpec::GF2, self.r);
            for t in 0..basis.rows() {
                if rng.random::<bool>() {
                    x = x.add(&basis.row(t)).expect("same length");
                }
            }
            let f = self.primary_idempotent(&e, &x);
            if self.mul(&f, &f) != f || self.augmentation(&f) != 1 {
                return Err(RepError::NoConvergence("Hecke idempotent refinement".into()));
            }
            if f == e {
                quiet += 1;
            } else {
                e = f;
                quiet = 0;
            }
        }
        let basis = self.corner(&e);
        if self.corner_is_local(&basis) {
            Ok(e)
        } else {
            Err(RepError::NoConvergence(format!(
                "no primitive Hecke idempotent after {attempts} attempts"
            )))
        }
    }
}
