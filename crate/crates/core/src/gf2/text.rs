//! Plain-text matrix fixtures.
//!
//! First line `rows cols e`, then one line per row. Over GF(2) a row is a hex
//! string packing four entries per digit, most significant bit first; over
//! GF(4) and GF(16) every entry is a single hex digit.

use super::{FFMatrix, FieldSpec, Gf2Error};

pub fn matrix_to_text(m: &FFMatrix) -> String {
    let e = m.field().degree();
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), e);
    for r in 0..m.rows() {
        if e == 1 {
            for chunk in 0..m.cols().div_ceil(4) {
                let mut nib = 0u8;
                for b in 0..4 {
                    let c = chunk * 4 + b;
                    if c < m.cols() && m.get(r, c) == 1 {
                        nib |= 8 >> b;
                    }
                }
                out.push(char::from_digit(nib as u32, 16).expect("nibble"));
            }
        } else {
            for c in 0..m.cols() {
                out.push(char::from_digit(m.get(r, c) as u32, 16).expect("digit"));
            }
        }
        out.push('\n');
    }
    out
}

/// Parse a matrix from the fixture format, consuming exactly its lines from
/// `lines`.
pub fn matrix_from_lines<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<FFMatrix, Gf2Error> {
    let header = lines
        .next()
        .ok_or_else(|| Gf2Error::Parse("missing header".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Gf2Error::Parse(format!("bad header token {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [rows, cols, e] = nums[..] else {
        return Err(Gf2Error::Parse(format!("header needs 3 numbers, got {header:?}")));
    };
    let field = FieldSpec::new(e as u8)?;
    let mut m = FFMatrix::zeros(field, rows, cols);
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Gf2Error::Parse(format!("missing row {r}")))?
            .trim();
        let digits: Vec<u8> = line
            .chars()
            .map(|ch| {
                ch.to_digit(16)
                    .map(|d| d as u8)
                    .ok_or_else(|| Gf2Error::Parse(format!("bad digit {ch:?} in row {r}")))
            })
            .collect::<Result<_, _>>()?;
        if e == 1 {
            if digits.len() != cols.div_ceil(4) {
                return Err(Gf2Error::Parse(format!("row {r} has {} digits", digits.len())));
            }
            for c in 0..cols {
                if (digits[c / 4] >> (3 - c % 4)) & 1 == 1 {
                    m.set(r, c, 1);
                }
            }
        } else {
            if digits.len() != cols {
                return Err(Gf2Error::Parse(format!("row {r} has {} entries", digits.len())));
            }
            for (c, &d) in digits.iter().enumerate() {
                if d as usize >= field.order() {
                    return Err(Gf2Error::Parse(format!("entry {d} outside {field}")));
                }
                m.set(r, c, d);
            }
        }
    }
    Ok(m)
}

pub fn matrix_from_text(text: &str) -> Result<FFMatrix, Gf2Error> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    matrix_from_lines(&mut lines)
}
