use std::fmt;

use super::{shape_check, FieldSpec, Gf2Error};

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub(crate) fn get_entry(e: usize, wpr: usize, row: &[u64], c: usize) -> u8 {
    let (w, b) = (c / 64, c % 64);
    let mut v = 0u8;
    for k in 0..e {
        v |= (((row[k * wpr + w] >> b) & 1) as u8) << k;
    }
    v
}

#[inline]
pub(crate) fn set_entry(e: usize, wpr: usize, row: &mut [u64], c: usize, v: u8) {
    let (w, b) = (c / 64, c % 64);
    for k in 0..e {
        let word = &mut row[k * wpr + w];
        if (v >> k) & 1 == 1 {
            *word |= 1 << b;
        } else {
            *word &= !(1 << b);
        }
    }
}

/// `dst += c * src` on packed rows, touching words `from..wpr` of each plane.
#[inline]
pub(crate) fn axpy(field: FieldSpec, wpr: usize, dst: &mut [u64], src: &[u64], c: u8, from: usize) {
    if c == 0 {
        return;
    }
    let e = field.degree() as usize;
    if e == 1 {
        for (d, s) in dst[from..wpr].iter_mut().zip(&src[from..wpr]) {
            *d ^= *s;
        }
        return;
    }
    let mask = field.scale_mask(c);
    for k in 0..e {
        for j in 0..e {
            if (mask >> (k * 4 + j)) & 1 == 1 {
                let (d, s) = (&mut dst[k * wpr..(k + 1) * wpr], &src[j * wpr..(j + 1) * wpr]);
                for w in from..wpr {
                    d[w] ^= s[w];
                }
            }
        }
    }
}

/// Multiply a packed row in place by `c`.
pub(crate) fn scale_in_place(field: FieldSpec, wpr: usize, row: &mut [u64], c: u8) {
    if c == 1 {
        return;
    }
    if c == 0 {
        row.fill(0);
        return;
    }
    let src = row.to_vec();
    row.fill(0);
    axpy(field, wpr, row, &src, c, 0);
}

/// Calls `f(col, value)` for every nonzero entry, in increasing column order.
#[inline]
pub(crate) fn for_each_nonzero(e: usize, wpr: usize, row: &[u64], mut f: impl FnMut(usize, u8)) {
    for w in 0..wpr {
        let mut any = 0u64;
        for k in 0..e {
            any |= row[k * wpr + w];
        }
        while any != 0 {
            let b = any.trailing_zeros() as usize;
            any &= any - 1;
            let mut v = 0u8;
            for k in 0..e {
                v |= (((row[k * wpr + w] >> b) & 1) as u8) << k;
            }
            f(w * 64 + b, v);
        }
    }
}

pub(crate) fn first_nonzero(e: usize, wpr: usize, row: &[u64], from: usize) -> Option<usize> {
    let mut w = from / 64;
    let mut first_mask = !0u64 << (from % 64);
    while w < wpr {
        let mut any = 0u64;
        for k in 0..e {
            any |= row[k * wpr + w];
        }
        any &= first_mask;
        if any != 0 {
            return Some(w * 64 + any.trailing_zeros() as usize);
        }
        first_mask = !0;
        w += 1;
    }
    None
}

/// A row vector over GF(2^e), stored with the same bit-plane layout as an
/// [`FFMatrix`](super::FFMatrix) row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFVec {
    pub(crate) len: usize,
    pub(crate) field: FieldSpec,
    pub(crate) wpr: usize,
    pub(crate) data: Vec<u64>,
}

impl FFVec {
    pub fn zeros(field: FieldSpec, len: usize) -> Self {
        let wpr = words_for(len);
        FFVec {
            len,
            field,
            wpr,
            data: vec![0; wpr * field.degree() as usize],
        }
    }

    pub fn unit(field: FieldSpec, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.set(i, 1);
        v
    }

    pub fn from_entries(field: FieldSpec, entries: &[u8]) -> Self {
        let mut v = Self::zeros(field, entries.len());
        for (i, &x) in entries.iter().enumerate() {
            v.set(i, x);
        }
        v
    }

    pub(crate) fn from_words(field: FieldSpec, len: usize, data: Vec<u64>) -> Self {
        let wpr = words_for(len);
        debug_assert_eq!(data.len(), wpr * field.degree() as usize);
        FFVec {
            len,
            field,
            wpr,
            data,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        get_entry(self.field.degree() as usize, self.wpr, &self.data, i)
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u8) {
        debug_assert!(i < self.len);
        set_entry(self.field.degree() as usize, self.wpr, &mut self.data, i, v)
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        first_nonzero(self.field.degree() as usize, self.wpr, &self.data, 0)
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: u8, other: &FFVec) {
        debug_assert_eq!(self.len, other.len);
        axpy(self.field, self.wpr, &mut self.data, &other.data, c, 0);
    }

    pub fn add(&self, other: &FFVec) -> Result<FFVec, Gf2Error> {
        shape_check("vector add", self.len == other.len, (1, self.len), (1, other.len))?;
        if self.field != other.field {
            return Err(Gf2Error::FieldMismatch(self.field, other.field));
        }
        let mut out = self.clone();
        out.axpy(1, other);
        Ok(out)
    }

    pub fn scale(&mut self, c: u8) {
        scale_in_place(self.field, self.wpr, &mut self.data, c);
    }

    pub fn scaled(&self, c: u8) -> FFVec {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    pub fn dot(&self, other: &FFVec) -> u8 {
        let f = self.field;
        let mut acc = 0u8;
        for_each_nonzero(f.degree() as usize, self.wpr, &self.data, |i, a| {
            acc ^= f.mul(a, other.get(i));
        });
        acc
    }

    pub fn nonzeros(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for_each_nonzero(self.field.degree() as usize, self.wpr, &self.data, |i, v| {
            out.push((i, v))
        });
        out
    }

    /// Sum of all coordinates.
    pub fn coordinate_sum(&self) -> u8 {
        let mut acc = 0u8;
        for_each_nonzero(self.field.degree() as usize, self.wpr, &self.data, |_, v| acc ^= v);
        acc
    }

    pub fn embed(&self, target: FieldSpec) -> Result<FFVec, Gf2Error> {
        let mut out = FFVec::zeros(target, self.len);
        let mut err = None;
        for_each_nonzero(self.field.degree() as usize, self.wpr, &self.data, |i, v| {
            match self.field.embed(target, v) {
                Ok(x) => out.set(i, x),
                Err(e) => err = Some(e),
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
}

impl fmt::Debug for FFVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{:x}", self.get(i))?;
        }
        write!(f, "] over {}", self.field)
    }
}
