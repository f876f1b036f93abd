use std::fmt;

use serde::{Deserialize, Serialize};

use super::Gf2Error;

/// A small binary field GF(2^e) with e in {1, 2, 4}.
///
/// Elements are `u8` values whose bit `i` is the coefficient of `x^i` in the
/// polynomial basis modulo the fixed irreducible modulus. The moduli are
/// `x + 1`, `x^2 + x + 1` and `x^4 + x + 1`; GF(4) sits inside GF(16) via
/// `x -> x^2 + x` (an element of order 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    e: u8,
}

const fn poly_mul_mod(a: u8, b: u8, e: u8, modulus: u8) -> u8 {
    let mut acc: u16 = 0;
    let mut i = 0;
    while i < e {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u16) << i;
        }
        i += 1;
    }
    let mut d = 2 * e as i32 - 2;
    while d >= e as i32 {
        if (acc >> d) & 1 == 1 {
            acc ^= (modulus as u16) << (d - e as i32);
        }
        d -= 1;
    }
    acc as u8
}

const fn mul_table<const Q: usize>(e: u8, modulus: u8) -> [[u8; Q]; Q] {
    let mut t = [[0u8; Q]; Q];
    let mut a = 0;
    while a < Q {
        let mut b = 0;
        while b < Q {
            t[a][b] = poly_mul_mod(a as u8, b as u8, e, modulus);
            b += 1;
        }
        a += 1;
    }
    t
}

const fn inv_table<const Q: usize>(mul: &[[u8; Q]; Q]) -> [u8; Q] {
    let mut inv = [0u8; Q];
    let mut a = 1;
    while a < Q {
        let mut b = 1;
        while b < Q {
            if mul[a][b] == 1 {
                inv[a] = b as u8;
            }
            b += 1;
        }
        a += 1;
    }
    inv
}

/// `mask` bit `k * 4 + j` is set when multiplication by `c` sends the basis
/// element `x^j` to something with a nonzero `x^k` coefficient.
const fn scale_masks<const Q: usize>(mul: &[[u8; Q]; Q], e: u8) -> [u16; Q] {
    let mut out = [0u16; Q];
    let mut c = 0;
    while c < Q {
        let mut mask = 0u16;
        let mut j = 0;
        while j < e {
            let img = mul[c][1 << j];
            let mut k = 0;
            while k < e {
                if (img >> k) & 1 == 1 {
                    mask |= 1 << (k * 4 + j);
                }
                k += 1;
            }
            j += 1;
        }
        out[c] = mask;
        c += 1;
    }
    out
}

static MUL2: [[u8; 2]; 2] = mul_table::<2>(1, 0b11);
static MUL4: [[u8; 4]; 4] = mul_table::<4>(2, 0b111);
static MUL16: [[u8; 16]; 16] = mul_table::<16>(4, 0b10011);
static INV2: [u8; 2] = inv_table::<2>(&MUL2);
static INV4: [u8; 4] = inv_table::<4>(&MUL4);
static INV16: [u8; 16] = inv_table::<16>(&MUL16);
static SCALE2: [u16; 2] = scale_masks::<2>(&MUL2, 1);
static SCALE4: [u16; 4] = scale_masks::<4>(&MUL4, 2);
static SCALE16: [u16; 16] = scale_masks::<16>(&MUL16, 4);

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec { e: 1 };
    pub const GF4: FieldSpec = FieldSpec { e: 2 };
    pub const GF16: FieldSpec = FieldSpec { e: 4 };

    pub fn new(e: u8) -> Result<Self, Gf2Error> {
        match e {
            1 | 2 | 4 => Ok(FieldSpec { e }),
            _ => Err(Gf2Error::UnsupportedField(e)),
        }
    }

    /// Extension degree over GF(2).
    #[inline]
    pub fn degree(self) -> u8 {
        self.e
    }

    #[inline]
    pub fn order(self) -> usize {
        1 << self.e
    }

    /// The modulus as a bit pattern (bit i = coefficient of x^i).
    pub fn modulus(self) -> u8 {
        match self.e {
            1 => 0b11,
            2 => 0b111,
            _ => 0b10011,
        }
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        match self.e {
            1 => MUL2[a as usize][b as usize],
            2 => MUL4[a as usize][b as usize],
            _ => MUL16[a as usize][b as usize],
        }
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in {self}");
        match self.e {
            1 => INV2[a as usize],
            2 => INV4[a as usize],
            _ => INV16[a as usize],
        }
    }

    pub fn pow(self, a: u8, mut k: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// GF(2)-linear description of `x -> c * x`, see `scale_masks`.
    #[inline]
    pub(crate) fn scale_mask(self, c: u8) -> u16 {
        match self.e {
            1 => SCALE2[c as usize],
            2 => SCALE4[c as usize],
            _ => SCALE16[c as usize],
        }
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..(1u8 << self.e)
    }

    pub fn is_subfield_of(self, other: FieldSpec) -> bool {
        other.e % self.e == 0
    }

    /// Embed an element of `self` into the larger field `target`.
    pub fn embed(self, target: FieldSpec, a: u8) -> Result<u8, Gf2Error> {
        if !self.is_subfield_of(target) {
            return Err(Gf2Error::FieldMismatch(self, target));
        }
        Ok(match (self.e, target.e) {
            (1, _) => a,
            (2, 2) | (4, 4) => a,
            (2, 4) => {
                // omega -> x^2 + x
                let lo = a & 1;
                let hi = (a >> 1) & 1;
                lo ^ if hi == 1 { 0b110 } else { 0 }
            }
            _ => unreachable!(),
        })
    }

    /// Smallest supported field containing both.
    pub fn join(self, other: FieldSpec) -> FieldSpec {
        FieldSpec { e: self.e.max(other.e) }
    }

    /// The next supported extension (GF(2) -> GF(4) -> GF(16)).
    pub fn extension_of_degree(self, k: u8) -> Option<FieldSpec> {
        match self.e * k {
            1 => Some(Self::GF2),
            2 => Some(Self::GF4),
            4 => Some(Self::GF16),
            _ => None,
        }
    }

    /// Square root (the Frobenius is bijective in characteristic 2).
    pub fn sqrt(self, a: u8) -> u8 {
        self.pow(a, 1 << (self.e - 1))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", 1u32 << self.e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for field in [FieldSpec::GF2, FieldSpec::GF4, FieldSpec::GF16] {
            for a in field.elements() {
                assert_eq!(field.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(field.mul(a, field.inv(a)), 1);
                }
                for b in field.elements() {
                    assert_eq!(field.mul(a, b), field.mul(b, a));
                    for c in field.elements() {
                        assert_eq!(
                            field.mul(a, field.add(b, c)),
                            field.add(field.mul(a, b), field.mul(a, c))
                        );
                        assert_eq!(field.mul(a, field.mul(b, c)), field.mul(field.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn gf4_embeds_in_gf16_as_ring_map() {
        let (s, t) = (FieldSpec::GF4, FieldSpec::GF16);
        for a in s.elements() {
            for b in s.elements() {
                let ab = s.embed(t, s.mul(a, b)).unwrap();
                assert_eq!(ab, t.mul(s.embed(t, a).unwrap(), s.embed(t, b).unwrap()));
                let sum = s.embed(t, a ^ b).unwrap();
                assert_eq!(sum, s.embed(t, a).unwrap() ^ s.embed(t, b).unwrap());
            }
        }
        assert!(FieldSpec::GF16.embed(FieldSpec::GF4, 3).is_err());
    }

    #[test]
    fn scale_mask_matches_multiplication() {
        let field = FieldSpec::GF16;
        for c in field.elements() {
            for x in field.elements() {
                let mask = field.scale_mask(c);
                let mut y = 0u8;
                for k in 0..4 {
                    let mut bit = 0;
                    for j in 0..4 {
                        if mask >> (k * 4 + j) & 1 == 1 {
                            bit ^= (x >> j) & 1;
                        }
                    }
                    y |= bit << k;
                }
                assert_eq!(y, field.mul(c, x));
            }
        }
    }
}
