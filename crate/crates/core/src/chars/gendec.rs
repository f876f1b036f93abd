use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CharError, Cyclotomic, Result};
use crate::groups::FusionLabel;

/// The six Morita classes of principal blocks with dihedral defect group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenDecCase {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl GenDecCase {
    pub const ALL: [GenDecCase; 6] = [Self::A, Self::B, Self::C, Self::D, Self::E, Self::F];

    /// Fusion pattern forced by the case.
    pub fn fusion(self) -> FusionLabel {
        match self {
            GenDecCase::A => FusionLabel::Case1Nilpotent,
            GenDecCase::B | GenDecCase::C | GenDecCase::D => FusionLabel::Case3Psl,
            GenDecCase::E | GenDecCase::F => FusionLabel::Case2Pgl,
        }
    }

    pub fn needs_q(self) -> bool {
        !matches!(self, GenDecCase::A | GenDecCase::B)
    }
}

impl fmt::Display for GenDecCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            GenDecCase::A => "a",
            GenDecCase::B => "b",
            GenDecCase::C => "c",
            GenDecCase::D => "d",
            GenDecCase::E => "e",
            GenDecCase::F => "f",
        };
        f.write_str(c)
    }
}

impl FromStr for GenDecCase {
    type Err = CharError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(GenDecCase::A),
            "b" => Ok(GenDecCase::B),
            "c" => Ok(GenDecCase::C),
            "d" => Ok(GenDecCase::D),
            "e" => Ok(GenDecCase::E),
            "f" => Ok(GenDecCase::F),
            other => Err(CharError::Parse(format!("unknown case {other:?}"))),
        }
    }
}

/// The 2-section a column belongs to: `u = 1`, `z`, `s^a`, `t` or `st`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Section {
    One,
    Z,
    S(u32),
    T,
    ST,
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Section::One => f.write_str("1"),
            Section::Z => f.write_str("z"),
            Section::S(a) => write!(f, "s^{a}"),
            Section::T => f.write_str("t"),
            Section::ST => f.write_str("st"),
        }
    }
}

impl Serialize for Section {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenDecColumn {
    pub label: String,
    pub section: Section,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenDecRow {
    pub label: String,
    pub height: u32,
}

/// Generalised 2-decomposition matrix of a principal block, entries over
/// `ℤ[ζ]` with `ζ` of order `2^{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecMatrix {
    pub case: GenDecCase,
    pub n: u32,
    pub q: Option<u64>,
    pub rows: Vec<GenDecRow>,
    pub columns: Vec<GenDecColumn>,
    pub entries: Vec<Vec<Cyclotomic>>,
}

#[derive(Serialize)]
struct GenDecJson<'a> {
    case: GenDecCase,
    n: u32,
    q: Option<u64>,
    root_order: u32,
    rows: &'a [GenDecRow],
    columns: &'a [GenDecColumn],
    entries: Vec<Vec<String>>,
}

impl Serialize for GenDecMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GenDecJson {
            case: self.case,
            n: self.n,
            q: self.q,
            root_order: self.root_order(),
            rows: &self.rows,
            columns: &self.columns,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(ser)
    }
}

fn two_part(x: u64) -> u64 {
    1 << x.trailing_zeros()
}

/// Check `n` and `q` against the case's 2-part condition.
pub fn check_case_parameters(case: GenDecCase, n: u32, q: Option<u64>) -> Result<()> {
    let bad = |why: String| Err(CharError::CaseParameterMismatch(why));
    if !(3..=12).contains(&n) {
        return bad(format!("defect exponent n = {n} outside 3..=12"));
    }
    if case == GenDecCase::B && n != 3 {
        return bad(format!("case b needs n = 3, got {n}"));
    }
    if !case.needs_q() {
        return match q {
            None => Ok(()),
            Some(q) => bad(format!("case {case} takes no q, got {q}")),
        };
    }
    let Some(q) = q else {
        return bad(format!("case {case} needs q"));
    };
    if q < 3 || q % 2 == 0 {
        return bad(format!("q = {q} must be odd and at least 3"));
    }
    let want = 1u64 << n;
    let got = match case {
        GenDecCase::C => two_part(q - 1),
        GenDecCase::D => two_part(q + 1),
        GenDecCase::E => 2 * two_part(q - 1),
        GenDecCase::F => 2 * two_part(q + 1),
        GenDecCase::A | GenDecCase::B => unreachable!(),
    };
    if got != want {
        return bad(format!("case {case} with q = {q} has 2-part {got}, not 2^{n} = {want}"));
    }
    Ok(())
}

impl GenDecMatrix {
    /// Order `2^{n−1}` of `ζ`.
    pub fn root_order(&self) -> u32 {
        1 << (self.n - 1)
    }

    /// Degrees of the Brauer characters labelling the `u = 1` columns.
    pub fn brauer_degrees(&self) -> Vec<i64> {
        let q = self.q.unwrap_or(0) as i64;
        match self.case {
            GenDecCase::A => vec![1],
            GenDecCase::B => vec![1, 14, 20],
            GenDecCase::C | GenDecCase::D => vec![1, (q - 1) / 2, (q - 1) / 2],
            GenDecCase::E | GenDecCase::F => vec![1, q - 1],
        }
    }

    /// Indices of the `u = 1` columns.
    pub fn ordinary_columns(&self) -> Vec<usize> {
        (0..self.columns.len())
            .filter(|&j| self.columns[j].section == Section::One)
            .collect()
    }

    /// Indices of the columns for non-trivial 2-elements.
    pub fn section_columns(&self) -> Vec<usize> {
        (0..self.columns.len())
            .filter(|&j| self.columns[j].section != Section::One)
            .collect()
    }

    /// `χ(1) = Σ_φ d_{χφ} φ(1)` for every row.
    pub fn implied_degrees(&self) -> Vec<i64> {
        let bd = self.brauer_degrees();
        self.entries
            .iter()
            .map(|row| {
                self.ordinary_columns()
                    .iter()
                    .zip(&bd)
                    .map(|(&j, d)| row[j].as_integer().expect("integral decomposition number") * d)
                    .sum()
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    /// `Σ_χ d^u_{χφ} conj(d^{u′}_{χψ}) = 0` for every pair of columns from
    /// different sections. Returns the offending column pairs.
    pub fn cross_section_failures(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.columns.len() {
            for j in i + 1..self.columns.len() {
                if self.columns[i].section == self.columns[j].section {
                    continue;
                }
                let mut acc = Cyclotomic::zero(self.root_order()).expect("order");
                for row in &self.entries {
                    acc = &acc + &(&row[i] * &row[j].conj());
                }
                if !acc.is_zero() {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Apply `ζ ↦ ζ^c` to every entry.
    pub fn galois_twist(&self, c: i64) -> Result<GenDecMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.galois(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(GenDecMatrix { entries, ..self.clone() })
    }

    /// Text form: header `case n q N` (`q` written `-` when absent), a
    /// comment naming the columns, then one comma-separated row per line.
    pub fn to_text(&self) -> String {
        let q = self.q.map_or("-".to_string(), |q| q.to_string());
        let mut out = format!("{} {} {} {}\n", self.case, self.n, q, self.root_order());
        let cols: Vec<&str> = self.columns.iter().map(|c| c.label.as_str()).collect();
        out.push_str(&format!("# columns: {}\n", cols.join(",")));
        for (row, label) in self.entries.iter().zip(&self.rows) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&format!("# {}\n{}\n", label.label, cells.join(",")));
        }
        out
    }

    /// Parse [`to_text`](Self::to_text) output. Labels come from the case;
    /// the entries are taken from the text.
    pub fn from_text(text: &str) -> Result<GenDecMatrix> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| CharError::Parse("empty matrix text".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [case, n, q, root] = fields[..] else {
            return Err(CharError::Parse(format!("bad header {header:?}")));
        };
        let case: GenDecCase = case.parse()?;
        let n: u32 = n.parse().map_err(|_| CharError::Parse(format!("bad n {n:?}")))?;
        let q = match q {
            "-" => None,
            q => Some(q.parse().map_err(|_| CharError::Parse(format!("bad q {q:?}")))?),
        };
        let mut m = gendec_build(case, n, q)?;
        let root: u32 = root.parse().map_err(|_| CharError::Parse(format!("bad N {root:?}")))?;
        if root != m.root_order() {
            return Err(CharError::Parse(format!("N = {root} but 2^(n-1) = {}", m.root_order())));
        }
        let mut entries = Vec::new();
        for line in lines {
            let row = line
                .split(',')
                .map(|cell| Cyclotomic::parse(root, cell))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != m.columns.len() {
                return Err(CharError::Parse(format!("row has {} entries, expected {}", row.len(), m.columns.len())));
            }
            entries.push(row);
        }
        if entries.len() != m.rows.len() {
            return Err(CharError::Parse(format!("{} rows, expected {}", entries.len(), m.rows.len())));
        }
        m.entries = entries;
        Ok(m)
    }
}

/// The generalised decomposition matrix of the given case, exactly as
/// tabulated: rows `1, χ₁, χ₂, χ₃, χ^{(1)}, …, χ^{(2^{n−2}−1)}`.
pub fn gendec_build(case: GenDecCase, n: u32, q: Option<u64>) -> Result<GenDecMatrix> {
    check_case_parameters(case, n, q)?;
    let big_n = 1u32 << (n - 1);
    let half = 1u32 << (n - 2);
    let c = |v: i64| Cyclotomic::from_int(big_n, v).expect("order");
    let sign = |e: u32| if e % 2 == 0 { 1 } else { -1 };
    // ζ^{ja} + ζ^{−ja}
    let zsum = |j: u32, a: u32| {
        let k = (j * a) % big_n;
        Cyclotomic::from_powers(big_n, &[(k, 1), ((big_n - k) % big_n, 1)]).expect("order")
    };
    let q = q.map(|q| q as i64);
    let s_cols: Vec<u32> = (1..half).collect();
    let js: Vec<u32> = (1..half).collect();

    let col = |label: &str, section: Section| GenDecColumn {
        label: label.to_string(),
        section,
    };
    let mut columns: Vec<GenDecColumn> = match case {
        GenDecCase::A => vec![col("phi_1", Section::One), col("z", Section::Z)],
        GenDecCase::B => vec![
            col("phi_1", Section::One),
            col("phi_14", Section::One),
            col("phi_20", Section::One),
            col("z", Section::Z),
        ],
        GenDecCase::C | GenDecCase::D => vec![
            col("phi_1", Section::One),
            col("phi_2", Section::One),
            col("phi_3", Section::One),
            col("z", Section::Z),
        ],
        GenDecCase::E | GenDecCase::F => vec![
            col("phi_1", Section::One),
            col("phi_2", Section::One),
            col("t", Section::T),
            col("z", Section::Z),
        ],
    };
    for &a in &s_cols {
        let label = if half == 2 { "s".to_string() } else { format!("s^{a}") };
        columns.push(GenDecColumn {
            label,
            section: Section::S(a),
        });
    }
    if case == GenDecCase::A {
        columns.push(col("t", Section::T));
        columns.push(col("st", Section::ST));
    }

    // Each height-zero row is (u = 1 part, t part if any, z value, s^a rule).
    let s_const = |v: i64| s_cols.iter().map(|_| c(v)).collect::<Vec<_>>();
    let s_alt = |shift: u32| s_cols.iter().map(|&a| c(sign(a + shift))).collect::<Vec<_>>();
    let row = |ordinary: &[i64], mid: &[i64], z: i64, s: Vec<Cyclotomic>, tail: &[i64]| {
        let mut r: Vec<Cyclotomic> = ordinary.iter().chain(mid).map(|&v| c(v)).collect();
        r.push(c(z));
        r.extend(s);
        r.extend(tail.iter().map(|&v| c(v)));
        r
    };
    let height_one = |ordinary: &[i64], mid: &[i64], z_sign: i64, s_sign: i64, tail: &[i64]| {
        js.iter()
            .map(|&j| {
                let mut r: Vec<Cyclotomic> = ordinary.iter().chain(mid).map(|&v| c(v)).collect();
                r.push(c(2 * z_sign * sign(j)));
                r.extend(s_cols.iter().map(|&a| zsum(j, a).scale(s_sign)));
                r.extend(tail.iter().map(|&v| c(v)));
                r
            })
            .collect::<Vec<_>>()
    };
    let (labels, mut entries): (Vec<String>, Vec<Vec<Cyclotomic>>) = match case {
        GenDecCase::A => (
            vec!["1".into(), "chi_1".into(), "chi_2".into(), "chi_3".into()],
            vec![
                row(&[1], &[], 1, s_const(1), &[1, 1]),
                row(&[1], &[], 1, s_const(1), &[-1, -1]),
                row(&[1], &[], 1, s_alt(0), &[1, -1]),
                row(&[1], &[], 1, s_alt(0), &[-1, 1]),
            ],
        ),
        GenDecCase::B => (
            vec!["1".into(), "chi_7".into(), "chi_8".into(), "chi_9".into()],
            vec![
                row(&[1, 0, 0], &[], 1, s_const(1), &[]),
                row(&[1, 1, 0], &[], -1, s_const(-1), &[]),
                row(&[1, 0, 1], &[], 1, s_const(-1), &[]),
                row(&[1, 1, 1], &[], -1, s_const(1), &[]),
            ],
        ),
        GenDecCase::C => {
            let q = q.expect("checked");
            let h = (q + 1) / 2;
            (
                vec!["1".into(), format!("chi_{h}^(1)"), format!("chi_{h}^(2)"), "chi_St".into()],
                vec![
                    row(&[1, 0, 0], &[], 1, s_const(1), &[]),
                    row(&[1, 1, 0], &[], 1, s_alt(0), &[]),
                    row(&[1, 0, 1], &[], 1, s_alt(0), &[]),
                    row(&[1, 1, 1], &[], 1, s_const(1), &[]),
                ],
            )
        }
        GenDecCase::D => {
            let q = q.expect("checked");
            let h = (q - 1) / 2;
            (
                vec!["1".into(), format!("chi_{h}^(1)"), format!("chi_{h}^(2)"), "chi_St".into()],
                vec![
                    row(&[1, 0, 0], &[], 1, s_const(1), &[]),
                    row(&[0, 1, 0], &[], -1, s_alt(1), &[]),
                    row(&[0, 0, 1], &[], -1, s_alt(1), &[]),
                    row(&[1, 1, 1], &[], -1, s_const(-1), &[]),
                ],
            )
        }
        GenDecCase::E => {
            let q = q.expect("checked");
            (
                vec!["1".into(), format!("chi_{q}^(1)"), format!("chi_{q}^(2)"), "chi_3".into()],
                vec![
                    row(&[1, 0], &[1], 1, s_const(1), &[]),
                    row(&[1, 1], &[-1], 1, s_const(1), &[]),
                    row(&[1, 1], &[1], 1, s_alt(0), &[]),
                    row(&[1, 0], &[-1], 1, s_alt(0), &[]),
                ],
            )
        }
        GenDecCase::F => {
            let q = q.expect("checked");
            (
                vec!["1".into(), format!("chi_{q}^(1)"), format!("chi_{q}^(2)"), "chi_3".into()],
                vec![
                    row(&[1, 0], &[1], 1, s_const(1), &[]),
                    row(&[1, 1], &[1], -1, s_const(-1), &[]),
                    row(&[1, 1], &[-1], -1, s_alt(1), &[]),
                    row(&[1, 0], &[-1], 1, s_alt(0), &[]),
                ],
            )
        }
    };
    let (one_label, one_rows) = match case {
        GenDecCase::A => ("chi^(j)".to_string(), height_one(&[2], &[], 1, 1, &[0, 0])),
        GenDecCase::B => ("chi_5".to_string(), vec![row(&[0, 1, 0], &[], 2, s_const(0), &[])]),
        GenDecCase::C => (format!("chi_{}^(j)", q.expect("checked") + 1), height_one(&[2, 1, 1], &[], 1, 1, &[])),
        GenDecCase::D => (format!("chi_{}^(j)", q.expect("checked") - 1), height_one(&[0, 1, 1], &[], -1, -1, &[])),
        GenDecCase::E => (format!("chi_{}^(j)", q.expect("checked") + 1), height_one(&[2, 1], &[0], 1, 1, &[])),
        GenDecCase::F => (format!("chi_{}^(j)", q.expect("checked") - 1), height_one(&[0, 1], &[0], -1, -1, &[])),
    };
    let mut rows: Vec<GenDecRow> = labels
        .into_iter()
        .map(|label| GenDecRow { label, height: 0 })
        .collect();
    let count = one_rows.len();
    for j in 1..=count {
        let l = if case == GenDecCase::B { one_label.clone() } else { one_label.replace("(j)", &format!("({j})")) };
        rows.push(GenDecRow { label: l, height: 1 });
    }
    entries.extend(one_rows);
    Ok(GenDecMatrix {
        case,
        n,
        q: q.map(|q| q as u64),
        rows,
        columns,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(m: &GenDecMatrix, label: &str) -> Vec<i64> {
        let j = m.columns.iter().position(|c| c.label == label).unwrap();
        m.column(j).iter().map(|v| v.as_integer().unwrap()).collect()
    }

    #[test]
    fn case_a_n3_s_column() {
        let m = gendec_build(GenDecCase::A, 3, None).unwrap();
        assert_eq!(m.entries.len(), 5);
        assert_eq!(m.columns.len(), 5);
        assert_eq!(ints(&m, "s"), vec![1, 1, -1, -1, 0]);
    }

    #[test]
    fn case_d_q7_z_column() {
        let m = gendec_build(GenDecCase::D, 3, Some(7)).unwrap();
        assert_eq!(ints(&m, "z"), vec![1, -1, -1, -1, 2]);
        assert_eq!(m.implied_degrees(), vec![1, 3, 3, 7, 6]);
    }

    #[test]
    fn case_f_q3_t_column() {
        let m = gendec_build(GenDecCase::F, 3, Some(3)).unwrap();
        assert_eq!(ints(&m, "t"), vec![1, 1, -1, -1, 0]);
        assert_eq!(m.implied_degrees(), vec![1, 3, 3, 1, 2]);
    }

    #[test]
    fn case_b_degrees_match_the_a7_principal_block() {
        let m = gendec_build(GenDecCase::B, 3, None).unwrap();
        assert_eq!(m.implied_degrees(), vec![1, 15, 21, 35, 14]);
        assert!(matches!(gendec_build(GenDecCase::B, 4, None), Err(CharError::CaseParameterMismatch(_))));
    }

    #[test]
    fn parameter_checks() {
        assert!(gendec_build(GenDecCase::C, 4, Some(17)).is_ok());
        assert!(gendec_build(GenDecCase::C, 3, Some(17)).is_err());
        assert!(gendec_build(GenDecCase::E, 4, Some(9)).is_ok());
        assert!(gendec_build(GenDecCase::F, 4, Some(7)).is_ok());
        assert!(gendec_build(GenDecCase::D, 3, None).is_err());
        assert!(gendec_build(GenDecCase::A, 3, Some(5)).is_err());
    }

    #[test]
    fn row_counts_and_cross_sections() {
        for n in 3..=6 {
            let m = gendec_build(GenDecCase::A, n, None).unwrap();
            assert_eq!(m.rows.len(), (1usize << (n - 2)) + 3);
            assert_eq!(m.rows.iter().filter(|r| r.height == 0).count(), 4);
            assert!(m.cross_section_failures().is_empty(), "n = {n}");
        }
    }

    #[test]
    fn text_round_trip() {
        let m = gendec_build(GenDecCase::C, 4, Some(17)).unwrap();
        let text = m.to_text();
        assert!(text.starts_with("c 4 17 8\n"));
        assert_eq!(GenDecMatrix::from_text(&text).unwrap(), m);
    }
}
