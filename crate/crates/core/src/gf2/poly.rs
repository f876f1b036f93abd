use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FieldSpec;

/// Univariate polynomial over GF(2^e), coefficients from the constant term up.
/// Trailing zeros are always stripped, so the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![] }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    pub fn x(field: FieldSpec) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lead(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.coeffs.get(i).copied().unwrap_or(0) ^ other.coeffs.get(i).copied().unwrap_or(0))
            .collect();
        Poly::new(self.field, c)
    }

    pub fn scale(&self, c: u8) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] ^= f.mul(a, b);
            }
        }
        Poly::new(f, c)
    }

    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![0u8; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] ^= f.mul(c, b);
            }
        }
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { 0 })
            .collect();
        Poly::new(self.field, c)
    }

    pub fn pow_mod(&self, mut k: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            k >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u8) -> u8 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul(acc, x) ^ c)
    }

    /// For `f` with `f' = 0`, the polynomial `g` with `g^2 = f`.
    fn sqrt_poly(&self) -> Poly {
        let f = self.field;
        let c = self.coeffs.iter().step_by(2).map(|&a| f.sqrt(a)).collect();
        Poly::new(f, c)
    }

    /// Monic irreducible factors with multiplicities, sorted.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "factor of zero polynomial");
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (sq, mult) in self.monic().squarefree() {
            for (d, part) in sq.distinct_degree() {
                for irr in part.equal_degree(d) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort();
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some((q, mm)) if *q == p => *mm += m,
                _ => merged.push((p, m)),
            }
        }
        merged
    }

    /// Square-free decomposition: pairs `(g, m)` with `self = prod g^m`.
    fn squarefree(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree() == Some(0) {
            return out;
        }
        let d = self.derivative();
        if d.is_zero() {
            for (g, m) in self.sqrt_poly().squarefree() {
                out.push((g, m * 2));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.divrem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if !z.is_one() {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if !c.is_one() {
            for (g, m) in c.sqrt_poly().squarefree() {
                out.push((g, m * 2));
            }
        }
        out
    }

    /// Distinct-degree factorisation of a square-free monic polynomial.
    fn distinct_degree(&self) -> Vec<(usize, Poly)> {
        let q = self.field.order() as u128;
        let x = Poly::x(self.field);
        let mut out = Vec::new();
        let mut f = self.clone();
        let mut h = x.clone();
        let mut d = 0;
        while f.degree().is_some_and(|deg| deg >= 2 * (d + 1)) {
            d += 1;
            h = h.pow_mod(q, &f);
            let g = h.add(&x).gcd(&f);
            if !g.is_one() {
                f = f.divrem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.degree().is_some_and(|deg| deg > 0) {
            out.push((f.degree().unwrap(), f.monic()));
        }
        out
    }

    /// Equal-degree splitting (characteristic 2) via the absolute trace map.
    fn equal_degree(&self, d: usize) -> Vec<Poly> {
        let n = self.degree().unwrap_or(0);
        if n == d {
            return vec![self.monic()];
        }
        let f = self.field;
        let bits = f.degree() as usize * d;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5C077 ^ n as u64);
        loop {
            let a = Poly::new(f, (0..n).map(|_| rng.random_range(0..f.order()) as u8).collect());
            if a.degree().unwrap_or(0) < 1 {
                continue;
            }
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..bits {
                s = s.mul(&s).rem(self);
                t = t.add(&s);
            }
            let g = t.gcd(self);
            if !g.is_one() && g.degree() != self.degree() {
                let h = self.divrem(&g).0;
                let mut out = g.equal_degree(d);
                out.extend(h.monic().equal_degree(d));
                return out;
            }
        }
    }

    pub fn is_irreducible(&self) -> bool {
        let fac = self.factor();
        fac.len() == 1 && fac[0].1 == 1
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{c:x}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "x^{i}")?,
                (_, 1) => write!(f, "{c:x}*x")?,
                _ => write!(f, "{c:x}*x^{i}")?,
            }
        }
        Ok(())
    }
}
