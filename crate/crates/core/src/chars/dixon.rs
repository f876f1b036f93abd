use std::sync::Arc;

use serde::Serialize;

use super::cyclotomic::{weighted_inner, Cyclotomic};
use super::{CharError, Result};
use crate::config::limits;
use crate::groups::{FiniteGroup, Permutation};

/// How far past the first admissible candidate the prime search may go.
const PRIME_SEARCH_STEPS: u64 = 100_000;

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub representative: String,
    pub size: usize,
    pub element_order: u64,
}

/// Ordinary character table with values in `ℤ[ζ_N]`, `N = exp(G)`. Rows are
/// sorted by degree and then by coefficient sequence, except that the
/// trivial character always comes first.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    classes: Vec<ClassInfo>,
    inverse_class: Vec<usize>,
    exponent: u32,
    prime: u64,
    chars: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Root order `N` of the value ring.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// The prime used for the modular eigenvector computation.
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn chars(&self) -> &[Vec<Cyclotomic>] {
        &self.chars
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.chars[i][0].as_integer().expect("degrees are integers")
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.chars.len()).map(|i| self.degree(i)).collect()
    }

    pub fn value(&self, i: usize, class: usize) -> &Cyclotomic {
        &self.chars[i][class]
    }

    /// `χ_i(g)` for an arbitrary group element.
    pub fn value_at(&self, i: usize, g: &Permutation) -> Result<&Cyclotomic> {
        Ok(&self.chars[i][self.group.class_of(g)?])
    }

    /// `Σ_g χ_i(g) conj(χ_j(g))`.
    pub fn inner(&self, i: usize, j: usize) -> Cyclotomic {
        weighted_inner(
            self.exponent,
            self.classes.iter().enumerate().map(|(k, c)| {
                (
                    c.size as i64,
                    self.chars[i][k].coeffs().to_vec(),
                    self.chars[j][self.inverse_class[k]].coeffs().to_vec(),
                )
            }),
        )
    }

    /// Row orthogonality `Σ_g χ_i(g) conj(χ_j(g)) = |G| δ_ij`, checked exactly.
    pub fn rows_orthogonal(&self) -> bool {
        let order = self.group.order() as i64;
        (0..self.chars.len()).all(|i| {
            (i..self.chars.len()).all(|j| {
                let want = if i == j { order } else { 0 };
                self.inner(i, j).as_integer() == Some(want)
            })
        })
    }

    /// Column orthogonality `Σ_χ χ(g_k) conj(χ(g_l)) = |C_G(g_k)| δ_kl`.
    pub fn columns_orthogonal(&self) -> bool {
        let order = self.group.order() as i64;
        let r = self.classes.len();
        (0..r).all(|k| {
            (k..r).all(|l| {
                let s = weighted_inner(
                    self.exponent,
                    self.chars
                        .iter()
                        .map(|row| (1, row[k].coeffs().to_vec(), row[self.inverse_class[l]].coeffs().to_vec())),
                );
                let want = if k == l { order / self.classes[k].size as i64 } else { 0 };
                s.as_integer() == Some(want)
            })
        })
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_root(p: u64) -> u64 {
    let fs = prime_factors(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("prime fields are cyclic")
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2√order`, so that degrees and
/// eigenvalue multiplicities are recovered from their residues.
pub fn dixon_prime(exponent: u64, order: u64) -> Result<u64> {
    let floor = 2 * (order as f64).sqrt().ceil() as u64;
    let mut p = exponent + 1;
    for _ in 0..PRIME_SEARCH_STEPS {
        if p > floor && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(CharError::NoSuitablePrime(exponent))
}

/// Row-reduce `rows` in place over `F_p` and return the rank; the first
/// `rank` rows then form an echelon basis.
fn echelon(rows: &mut [Vec<u64>], p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Left null space of a square matrix over `F_p`.
fn left_nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = m.len();
    // Row-reduce [m | I]; rows whose m-part vanishes give the kernel.
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let width = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..width {
        let Some(piv) = (rank..k).find(|&r| aug[r][c] != 0) else {
            continue;
        };
        aug.swap(rank, piv);
        let inv = inv_mod(aug[rank][c], p);
        for x in aug[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = aug[rank].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    aug[rank..].iter().map(|r| r[width..].to_vec()).collect()
}

/// Class multiplication coefficients: `a[j][k][i] = #{(x, y) ∈ C_i × C_j : xy = g_k}`.
fn class_matrices(g: &FiniteGroup) -> Vec<Vec<Vec<u64>>> {
    let classes = g.classes();
    let r = classes.len();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); r];
    for e in 0..g.order() {
        members[g.class_index(e)].push(e);
    }
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (k, ck) in classes.iter().enumerate() {
        for (j, ys) in members.iter().enumerate() {
            for &y in ys {
                let x = g.mul_index(ck.rep, g.inverse_index(y));
                a[j][k][g.class_index(x)] += 1;
            }
        }
    }
    a
}

/// Split `F_p^r` into common eigenlines of the transposed class matrices.
/// Each returned vector `ω` satisfies `ω_i ω_j = Σ_k a_{ijk} ω_k`.
fn central_characters(a: &[Vec<Vec<u64>>], p: u64) -> Result<Vec<Vec<u64>>> {
    let r = a.len();
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for aj in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // Row vector v ↦ v·A with A[k][i] = a_{ijk}, so (vA)_i = Σ_k v_k a_{ijk}.
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| (0..r).map(|i| (0..r).map(|k| v[k] * aj[k][i] % p).sum::<u64>() % p).collect())
                .collect();
            let restricted = coordinates(&basis, &images, p)?;
            let d = basis.len();
            let mut found = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x })
                            .collect()
                    })
                    .collect();
                let null = left_nullspace(&shifted, p);
                if null.is_empty() {
                    continue;
                }
                found += null.len();
                let sub: Vec<Vec<u64>> = null
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|col| c.iter().zip(&basis).map(|(&ci, b)| ci * b[col] % p).sum::<u64>() % p)
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == d {
                    break;
                }
            }
            if found != d {
                return Err(CharError::Internal("class algebra does not split over the Dixon prime".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(CharError::Internal("class matrices leave a multi-dimensional eigenspace".into()));
    }
    Ok(spaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().expect("one vector");
            let inv = inv_mod(v[0], p);
            v.iter().map(|x| x * inv % p).collect()
        })
        .collect())
}

/// Coordinates of each `images[i]` in the span of `basis` (rows).
fn coordinates(basis: &[Vec<u64>], images: &[Vec<u64>], p: u64) -> Result<Vec<Vec<u64>>> {
    let d = basis.len();
    let r = basis[0].len();
    // Solve c·B = w by reducing [Bᵀ | wᵀ] column-wise: build rows of Bᵀ augmented.
    let mut out = Vec::with_capacity(images.len());
    for w in images {
        let mut sys: Vec<Vec<u64>> = (0..r)
            .map(|col| {
                let mut row: Vec<u64> = basis.iter().map(|b| b[col]).collect();
                row.push(w[col]);
                row
            })
            .collect();
        let rank = echelon(&mut sys, p);
        let mut c = vec![0u64; d];
        for row in &sys[..rank] {
            let lead = row.iter().position(|&x| x != 0).expect("nonzero row");
            if lead == d {
                return Err(CharError::Internal("eigenspace is not invariant".into()));
            }
            c[lead] = row[d];
        }
        out.push(c);
    }
    Ok(out)
}

/// Character table by the Dixon–Schneider method: common eigenvectors of the
/// class matrices over `F_p`, degrees from the norm relation, and values
/// lifted to `ℤ[ζ_N]` through eigenvalue multiplicities on powers.
pub fn dixon_table(group: Arc<FiniteGroup>) -> Result<CharacterTable> {
    let order = group.enumerate()?;
    if order > limits().max_dixon_order {
        return Err(CharError::GroupTooLarge(order));
    }
    let classes = group.classes().to_vec();
    let r = classes.len();
    let exponent = group.exponent();
    let p = dixon_prime(exponent, order as u64)?;
    let a = class_matrices(&group);
    let omegas = central_characters(&a, p)?;
    let inverse_class: Vec<usize> = classes
        .iter()
        .map(|c| group.class_index(group.inverse_index(c.rep)))
        .collect();
    let order_u = order as u64;
    let sizes: Vec<u64> = classes.iter().map(|c| c.size as u64 % p).collect();
    let zeta_n = pow_mod(primitive_root(p), (p - 1) / exponent, p);
    let power_classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let g = group.element(c.rep);
            (0..c.element_order).map(|m| group.class_of(&g.pow(m as i64)).expect("in group")).collect()
        })
        .collect();
    let max_deg = (order as f64).sqrt().floor() as u64;
    let mut chars = Vec::with_capacity(r);
    for omega in &omegas {
        // |G| / χ(1)² = Σ_k ω_k ω_{k*} / |C_k|.
        let s = (0..r).fold(0u64, |acc, k| {
            (acc + omega[k] * omega[inverse_class[k]] % p * inv_mod(sizes[k], p)) % p
        });
        if s == 0 {
            return Err(CharError::Internal("vanishing norm in the degree formula".into()));
        }
        let d2 = order_u % p * inv_mod(s, p) % p;
        let degree = (1..=max_deg)
            .find(|&d| order_u % d == 0 && d * d % p == d2)
            .ok_or_else(|| CharError::Internal("no admissible degree".into()))?;
        let residues: Vec<u64> = (0..r).map(|k| omega[k] * (degree % p) % p * inv_mod(sizes[k], p) % p).collect();
        let mut row = Vec::with_capacity(r);
        for (k, c) in classes.iter().enumerate() {
            let o = c.element_order;
            let step = exponent / o;
            let zeta_o = pow_mod(zeta_n, step, p);
            let o_inv = inv_mod(o % p, p);
            let mut terms = Vec::new();
            for j in 0..o {
                let root = pow_mod(zeta_o, (o - j) % o, p);
                let mut acc = 0u64;
                let mut w = 1u64;
                for &pc in &power_classes[k] {
                    acc = (acc + residues[pc] * w) % p;
                    w = w * root % p;
                }
                let mult = acc * o_inv % p;
                if mult > degree {
                    return Err(CharError::Internal(format!("eigenvalue multiplicity {mult} exceeds degree {degree}")));
                }
                if mult != 0 {
                    terms.push(((j * step) as u32, mult as i64));
                }
            }
            row.push(Cyclotomic::from_powers(exponent as u32, &terms)?);
        }
        chars.push(row);
    }
    let is_trivial = |row: &Vec<Cyclotomic>| row.iter().all(|v| v.as_integer() == Some(1));
    chars.sort_by(|x, y| {
        is_trivial(y)
            .cmp(&is_trivial(x))
            .then_with(|| x[0].as_integer().cmp(&y[0].as_integer()))
            .then_with(|| x.cmp(y))
    });
    let infos = classes
        .iter()
        .map(|c| ClassInfo {
            representative: group.element(c.rep).to_string(),
            size: c.size,
            element_order: c.element_order,
        })
        .collect();
    let table = CharacterTable {
        group,
        classes: infos,
        inverse_class,
        exponent: exponent as u32,
        prime: p,
        chars,
    };
    let degree_sum: i64 = table.degrees().iter().map(|d| d * d).sum();
    if degree_sum != order as i64 || !table.rows_orthogonal() || !table.columns_orthogonal() {
        return Err(CharError::Internal("lifted table fails orthogonality".into()));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::construct_str;

    fn table(spec: &str) -> CharacterTable {
        dixon_table(Arc::new(construct_str(spec).unwrap())).unwrap()
    }

    #[test]
    fn dihedral_of_order_eight() {
        let t = table("d:8");
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
        assert!(t.chars()[0].iter().all(|v| v.as_integer() == Some(1)));
    }

    #[test]
    fn psl2_7_degrees() {
        let t = table("psl2:7");
        let mut d = t.degrees();
        d.sort();
        assert_eq!(d, vec![1, 3, 3, 6, 7, 8]);
        // The 3-dimensional characters take the value (−1 ± √−7)/2 on 7-elements.
        let seven = t.classes().iter().position(|c| c.element_order == 7).unwrap();
        let v = t.value(1, seven);
        assert!(v.as_integer().is_none());
        let sq = &(&v.scale(2) + &Cyclotomic::from_int(t.exponent(), 1).unwrap()).clone();
        assert_eq!((sq * sq).as_integer(), Some(-7));
    }

    #[test]
    fn prime_choice_is_minimal() {
        // exp(S4) = 12, 2√24 < 10: the first prime ≡ 1 mod 12 is 13.
        assert_eq!(dixon_prime(12, 24).unwrap(), 13);
        let t = table("pgl2:3");
        assert_eq!(t.prime(), 13);
        assert_eq!(t.degrees(), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn a7_two_elements_in_principal_rows() {
        let t = table("a:7");
        assert_eq!(t.num_classes(), 9);
        assert_eq!(t.degrees(), vec![1, 6, 10, 10, 14, 14, 15, 21, 35]);
    }
}
