//! Finite fields of odd order, used to build the projective-line actions.
//!
//! An element `c_0 + c_1 x + … + c_{k-1} x^{k-1}` of `F_p[x]/(f)` is labelled
//! by the integer `c_0 + c_1 p + … + c_{k-1} p^{k-1}`, so the prime field is
//! `0..p` and `1` is the unit.

use super::GroupError;

/// Defining polynomials (monic, coefficients from the constant term up,
/// leading 1 omitted) for the non-prime fields we support.
const MODULI: &[(u64, u64, &[u64])] = &[
    (3, 2, &[2, 2]),       // x^2 + 2x + 2
    (3, 3, &[1, 2, 0]),    // x^3 + 2x + 1
    (3, 4, &[2, 0, 0, 2]), // x^4 + 2x^3 + 2
    (3, 5, &[1, 2, 0, 0, 0]),
    (5, 2, &[2, 4]),       // x^2 + 4x + 2
    (5, 3, &[3, 3, 0]),    // x^3 + 3x + 3
    (7, 2, &[3, 6]),       // x^2 + 6x + 3
    (7, 3, &[4, 0, 6]),    // x^3 + 6x^2 + 4
];

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

#[derive(Clone, Debug)]
pub struct OddField {
    p: u64,
    k: u32,
    q: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    primitive: u32,
}

impl OddField {
    pub fn new(q: u64) -> Result<Self, GroupError> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| GroupError::UnsupportedParameter(format!("q = {q} is not a prime power")))?;
        if p == 2 {
            return Err(GroupError::UnsupportedParameter(format!("q = {q} is even")));
        }
        let modulus: Vec<u64> = if k == 1 {
            vec![]
        } else {
            MODULI
                .iter()
                .find(|(pp, kk, _)| *pp == p && *kk == k as u64)
                .map(|(_, _, m)| m.to_vec())
                .ok_or_else(|| GroupError::UnsupportedParameter(format!("no field table for q = {q}")))?
        };
        let qs = q as usize;
        let digits = |mut a: usize| -> Vec<u64> {
            (0..k)
                .map(|_| {
                    let d = (a as u64) % p;
                    a /= p as usize;
                    d
                })
                .collect()
        };
        let label = |c: &[u64]| -> u32 { c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32 };
        let mut mul = vec![0u32; qs * qs];
        for a in 0..qs {
            let da = digits(a);
            for b in a..qs {
                let db = digits(b);
                let mut prod = vec![0u64; 2 * k as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for d in (k as usize..prod.len()).rev() {
                    let c = prod[d];
                    if c != 0 {
                        prod[d] = 0;
                        for (j, &m) in modulus.iter().enumerate() {
                            let idx = d - k as usize + j;
                            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                        }
                    }
                }
                let v = label(&prod[..k as usize]);
                mul[a * qs + b] = v;
                mul[b * qs + a] = v;
            }
        }
        let mut inv = vec![0u32; qs];
        for a in 1..qs {
            inv[a] = (1..qs as u32)
                .find(|&b| mul[a * qs + b as usize] == 1)
                .ok_or_else(|| GroupError::UnsupportedParameter(format!("table for q = {q} is not a field")))?;
        }
        let mut field = OddField {
            p,
            k,
            q: qs,
            mul,
            inv,
            primitive: 0,
        };
        field.primitive = (2..qs as u32)
            .chain(std::iter::once(1))
            .find(|&g| field.mult_order(g) == qs as u64 - 1)
            .expect("finite fields have primitive elements");
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Least primitive element by label.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u32;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.p as u32;
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut acc, mut b) = (1u32, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn mult_order(&self, a: u32) -> u64 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_entry_defines_a_field() {
        // `new` fails unless every nonzero element is invertible; a primitive
        // element of order q - 1 confirms the multiplicative group is cyclic.
        for q in [9u64, 27, 81, 243, 25, 125, 49, 343] {
            let f = OddField::new(q).unwrap();
            assert_eq!(f.mult_order(f.primitive()), q - 1, "q = {q}");
        }
    }

    #[test]
    fn prime_field_is_integers_mod_p() {
        let f = OddField::new(7).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.add(4, 5), 2);
        assert_eq!(f.neg(2), 5);
        assert_eq!(f.primitive(), 3);
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        let f = OddField::new(27).unwrap();
        let fixed: Vec<u32> = (0..27).filter(|&a| f.frobenius(a) == a).collect();
        assert_eq!(fixed, vec![0, 1, 2]);
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(OddField::new(4).is_err());
        assert!(OddField::new(12).is_err());
        assert!(OddField::new(3u64.pow(6)).is_err());
    }
}
