use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    check_case_parameters, dixon_table, gendec_build, principal_block, CharError, CharacterTable, Cyclotomic,
    GenDecCase, GenDecMatrix, PrincipalBlock, Result, Section,
};
use crate::groups::{involution_fusion, sylow2_dihedral, FiniteGroup, FusionCase, GroupSpec, Permutation, SylowDihedralFrame};

/// Character table, principal block and Sylow frame of one group, shared by
/// verification and sign recovery.
#[derive(Clone, Debug)]
pub struct BlockData {
    pub table: CharacterTable,
    pub block: PrincipalBlock,
    pub frame: SylowDihedralFrame,
    pub fusion: FusionCase,
}

impl BlockData {
    pub fn compute(group: Arc<FiniteGroup>) -> Result<BlockData> {
        let frame = sylow2_dihedral(&group)?;
        let fusion = involution_fusion(&group, &frame)?;
        let table = dixon_table(group)?;
        let block = principal_block(&table)?;
        Ok(BlockData {
            table,
            block,
            frame,
            fusion,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    /// Number of G-classes of non-trivial elements of the Sylow subgroup.
    pub fn nontrivial_two_classes(&self) -> Result<usize> {
        let g = self.group();
        let mut ids: Vec<usize> = self
            .frame
            .p
            .elements()
            .filter(|x| !x.is_identity())
            .map(|x| g.class_of(&x))
            .collect::<std::result::Result<_, _>>()?;
        ids.sort_unstable();
        ids.dedup();
        Ok(ids.len())
    }

    fn element(&self, section: Section, swap: bool) -> Permutation {
        let f = &self.frame;
        let st = f.s.mul(&f.t);
        match (section, swap) {
            (Section::One, _) => f.p.identity(),
            (Section::Z, _) => f.z.clone(),
            (Section::S(a), _) => f.s.pow(a as i64),
            (Section::T, false) | (Section::ST, true) => f.t.clone(),
            (Section::T, true) | (Section::ST, false) => st,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnSource {
    /// Ordinary decomposition numbers, taken as given.
    Paper,
    /// Compared against computed character values.
    Verified,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnCheck {
    pub label: String,
    pub section: String,
    pub source: ColumnSource,
    /// The group element the column was evaluated at (`u = 1` columns: none).
    pub element: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowMatch {
    pub label: String,
    pub table_row: usize,
    pub degree: i64,
    pub height: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub case: GenDecCase,
    pub n: u32,
    pub q: Option<u64>,
    pub k_b0: usize,
    pub expected_k: usize,
    pub height_zero: usize,
    pub section_classes: usize,
    pub section_columns: usize,
    /// `c` in the twist `ζ ↦ ζ^c` under which the rows matched.
    pub twist: Option<i64>,
    /// Whether the `t`/`st` labels had to be exchanged.
    pub reflections_swapped: Option<bool>,
    pub rows: Vec<RowMatch>,
    pub columns: Vec<ColumnCheck>,
    pub cross_section_matrix: bool,
    pub cross_section_table: bool,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// `q` for the cases that need it, taken from a `psl2:q` or `pgl2:q` spec when
/// not given.
pub fn infer_q(group: &FiniteGroup, case: GenDecCase, q: Option<u64>) -> Option<u64> {
    if !case.needs_q() || q.is_some() {
        return q;
    }
    match group.spec() {
        Some(GroupSpec::Psl2 { q }) | Some(GroupSpec::Pgl2 { q }) => Some(*q),
        _ => None,
    }
}

/// Perfect matching of paper rows onto table rows, trying candidates in
/// increasing table order.
fn match_rows(compatible: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn go(i: usize, compatible: &[Vec<usize>], used: &mut Vec<bool>, out: &mut Vec<usize>) -> bool {
        if i == compatible.len() {
            return true;
        }
        for &r in &compatible[i] {
            if !used[r] {
                used[r] = true;
                out.push(r);
                if go(i + 1, compatible, used, out) {
                    return true;
                }
                out.pop();
                used[r] = false;
            }
        }
        false
    }
    let width = compatible.iter().flatten().max().map_or(0, |m| m + 1);
    let mut used = vec![false; width];
    let mut out = Vec::new();
    go(0, compatible, &mut used, &mut out).then_some(out)
}

/// Check a tabulated matrix against the computed character table: row
/// count, heights, section count, the `u ≠ 1` columns as character values
/// under some degree-respecting row bijection, Galois twist and `t`/`st`
/// relabelling, and cross-section orthogonality on both sides.
pub fn gendec_verify_matrix(data: &BlockData, matrix: &GenDecMatrix) -> Result<VerificationReport> {
    let group = data.group();
    if data.frame.n != matrix.n {
        return Err(CharError::CaseParameterMismatch(format!(
            "{} has Sylow 2-subgroup of order 2^{}, not 2^{}",
            group.name(),
            data.frame.n,
            matrix.n
        )));
    }
    if data.fusion.label != matrix.case.fusion() {
        return Err(CharError::WrongFusionCase {
            expected: matrix.case.fusion(),
            found: data.fusion.label,
        });
    }
    let table = &data.table;
    let block = &data.block;
    let mut failures = Vec::new();
    let expected_k = (1usize << (matrix.n - 2)) + 3;
    if block.k() != expected_k {
        failures.push(format!("k(B0) = {}, expected {expected_k}", block.k()));
    }
    if block.height_zero_count() != 4 {
        failures.push(format!("{} height-zero characters, expected 4", block.height_zero_count()));
    }
    let section_cols = matrix.section_columns();
    let section_classes = data.nontrivial_two_classes()?;
    if section_classes != section_cols.len() {
        failures.push(format!(
            "{} classes of non-trivial 2-elements but {} section columns",
            section_classes,
            section_cols.len()
        ));
    }

    let exp = table.exponent();
    let implied = matrix.implied_degrees();
    let big_n = matrix.root_order() as i64;
    let mut found = None;
    'search: for swap in [false, true] {
        let elements: Vec<Permutation> = section_cols
            .iter()
            .map(|&j| data.element(matrix.columns[j].section, swap))
            .collect();
        let mut classes: Vec<usize> = elements.iter().map(|u| group.class_of(u)).collect::<std::result::Result<_, _>>()?;
        classes.sort_unstable();
        classes.dedup();
        if classes.len() != elements.len() {
            continue;
        }
        let computed: Vec<Vec<&Cyclotomic>> = block
            .rows
            .iter()
            .map(|&r| elements.iter().map(|u| table.value_at(r, u)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        for c in (1..big_n).step_by(2) {
            let twisted = matrix.galois_twist(c)?;
            let compatible: Vec<Vec<usize>> = twisted
                .entries
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let paper: Vec<Cyclotomic> = section_cols
                        .iter()
                        .map(|&j| row[j].lift(exp).expect("2^(n-1) divides the exponent"))
                        .collect();
                    (0..block.k())
                        .filter(|&b| {
                            block.heights[b] == matrix.rows[i].height
                                && table.degree(block.rows[b]) == implied[i]
                                && computed[b].iter().zip(&paper).all(|(x, y)| *x == y)
                        })
                        .collect()
                })
                .collect();
            if let Some(m) = match_rows(&compatible) {
                found = Some((c, swap, m, elements));
                break 'search;
            }
        }
    }

    let (twist, swapped, rows, elements) = match found {
        Some((c, swap, m, els)) => (Some(c), Some(swap), Some(m), Some(els)),
        None => {
            failures.push("no row bijection, Galois twist and reflection labelling matches the table".into());
            (None, None, None, None)
        }
    };
    let row_matches = rows
        .as_ref()
        .map(|m| {
            m.iter()
                .enumerate()
                .map(|(i, &b)| RowMatch {
                    label: matrix.rows[i].label.clone(),
                    table_row: block.rows[b],
                    degree: table.degree(block.rows[b]),
                    height: block.heights[b],
                })
                .collect()
        })
        .unwrap_or_default();
    let mut section_iter = elements.iter().flatten();
    let columns = matrix
        .columns
        .iter()
        .map(|col| {
            let (source, element) = if col.section == Section::One {
                (ColumnSource::Paper, None)
            } else {
                (ColumnSource::Verified, section_iter.next().map(ToString::to_string))
            };
            ColumnCheck {
                label: col.label.clone(),
                section: col.section.to_string(),
                source,
                element,
                ok: rows.is_some(),
            }
        })
        .collect();

    let cross_matrix = matrix.cross_section_failures();
    if !cross_matrix.is_empty() {
        failures.push(format!("cross-section orthogonality fails on matrix columns {cross_matrix:?}"));
    }
    let cross_table = table_cross_sections(data, matrix, swapped.unwrap_or(false))?;
    if !cross_table {
        failures.push("cross-section orthogonality fails on the computed block columns".into());
    }
    let pass = failures.is_empty();
    Ok(VerificationReport {
        group: group.name().to_string(),
        case: matrix.case,
        n: matrix.n,
        q: matrix.q,
        k_b0: block.k(),
        expected_k,
        height_zero: block.height_zero_count(),
        section_classes,
        section_columns: section_cols.len(),
        twist,
        reflections_swapped: swapped,
        rows: row_matches,
        columns,
        cross_section_matrix: cross_matrix.is_empty(),
        cross_section_table: cross_table,
        failures,
        pass,
    })
}

/// `Σ_{χ∈B₀} χ(u) conj(χ(u′)) = 0` for the section elements `u ≠ u′`.
fn table_cross_sections(data: &BlockData, matrix: &GenDecMatrix, swap: bool) -> Result<bool> {
    let table = &data.table;
    let els: Vec<Permutation> = matrix
        .section_columns()
        .iter()
        .map(|&j| data.element(matrix.columns[j].section, swap))
        .collect();
    for (i, u) in els.iter().enumerate() {
        for v in &els[i + 1..] {
            let mut acc = Cyclotomic::zero(table.exponent())?;
            for &r in &data.block.rows {
                acc = &acc + &(table.value_at(r, u)? * &table.value_at(r, v)?.conj());
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Build the case's matrix and verify it against `group`.
pub fn gendec_verify(group: Arc<FiniteGroup>, case: GenDecCase, n: u32, q: Option<u64>) -> Result<VerificationReport> {
    let q = infer_q(&group, case, q);
    check_case_parameters(case, n, q)?;
    let data = BlockData::compute(group)?;
    gendec_verify_matrix(&data, &gendec_build(case, n, q)?)
}

/// Signs `δ₁, δ₂, δ₃` in the character values of the principal block at
/// 2-elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSigns {
    pub delta1: i8,
    pub delta2: i8,
    pub delta3: i8,
}

impl DeltaSigns {
    pub const fn new(delta1: i8, delta2: i8, delta3: i8) -> Self {
        DeltaSigns { delta1, delta2, delta3 }
    }
}

/// The constants stated for cases (c)–(f); cases (a) and (b) quote none.
pub fn expected_delta_signs(case: GenDecCase) -> Option<DeltaSigns> {
    match case {
        GenDecCase::C => Some(DeltaSigns::new(1, -1, -1)),
        GenDecCase::D => Some(DeltaSigns::new(-1, 1, 1)),
        GenDecCase::E => Some(DeltaSigns::new(1, -1, -1)),
        GenDecCase::F => Some(DeltaSigns::new(-1, 1, -1)),
        GenDecCase::A | GenDecCase::B => None,
    }
}

/// Recover the signs from the computed table alone.
///
/// `δ₁` is the sign `σ` for which the height-one characters take the values
/// `2σ(−1)^j` at `z` and `σ(ζ^{ja}+ζ^{−ja})` at `s^a` (for some labelling
/// `j` and some primitive `ζ`). Among the other three height-zero
/// characters, `χ₁` is the one constantly equal to `δ₁` on `z` and every
/// `s^a`; the remaining two, by decreasing degree, give `δ₂, δ₃` through
/// `χ_i(s^a) = −δ_i (−1)^a`.
pub fn delta_signs_from(data: &BlockData) -> Result<DeltaSigns> {
    let table = &data.table;
    let block = &data.block;
    let f = &data.frame;
    let n = f.n;
    let half = 1u32 << (n - 2);
    let big_n = 1u32 << (n - 1);
    let exp = table.exponent();
    let powers: Vec<Permutation> = (1..half).map(|a| f.s.pow(a as i64)).collect();
    let profile = |r: usize| -> Result<Vec<Cyclotomic>> {
        let mut v = vec![table.value_at(r, &f.z)?.clone()];
        for u in &powers {
            v.push(table.value_at(r, u)?.clone());
        }
        Ok(v)
    };
    let lift = |x: Cyclotomic| x.lift(exp).expect("2^(n-1) divides the exponent");
    let int = |v: i64| Cyclotomic::from_int(exp, v).expect("order");

    let mut height_one: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut height_zero: Vec<(usize, Vec<Cyclotomic>)> = Vec::new();
    for (b, &r) in block.rows.iter().enumerate() {
        if r == 0 {
            continue;
        }
        if block.heights[b] == 0 {
            height_zero.push((r, profile(r)?));
        } else {
            height_one.push(profile(r)?);
        }
    }
    height_one.sort();
    let mut signs = Vec::new();
    for sigma in [1i64, -1] {
        let fits = (1..big_n as i64).step_by(2).any(|c| {
            let mut expected: Vec<Vec<Cyclotomic>> = (1..half)
                .map(|j| {
                    let mut v = vec![int(2 * sigma * if j % 2 == 0 { 1 } else { -1 })];
                    for a in 1..half {
                        let k = ((j * a) as i64 * c).rem_euclid(big_n as i64) as u32;
                        let x = Cyclotomic::from_powers(big_n, &[(k, 1), ((big_n - k) % big_n, 1)]).expect("order");
                        v.push(lift(x.scale(sigma)));
                    }
                    v
                })
                .collect();
            expected.sort();
            expected == height_one
        });
        if fits {
            signs.push(sigma);
        }
    }
    let [delta1] = signs[..] else {
        return Err(CharError::SignAmbiguity(format!(
            "height-one values fit {} sign choices for delta1",
            signs.len()
        )));
    };
    let constant: Vec<usize> = (0..height_zero.len())
        .filter(|&i| height_zero[i].1.iter().all(|v| *v == int(delta1)))
        .collect();
    let [chi1] = constant[..] else {
        return Err(CharError::SignAmbiguity(format!(
            "{} height-zero characters are constantly delta1 on the cyclic part",
            constant.len()
        )));
    };
    let mut rest: Vec<&(usize, Vec<Cyclotomic>)> =
        height_zero.iter().enumerate().filter(|&(i, _)| i != chi1).map(|(_, x)| x).collect();
    if rest.len() != 2 {
        return Err(CharError::SignAmbiguity(format!("{} height-zero characters besides chi1", rest.len())));
    }
    rest.sort_by_key(|(r, _)| std::cmp::Reverse(table.degree(*r)));
    let mut deltas = Vec::new();
    for (r, prof) in rest {
        // χ_i(s^a) = −δ_i (−1)^a for every a.
        // At a = 1 this reads δ_i = χ_i(s).
        let delta = prof[1]
            .as_integer()
            .filter(|v| v.abs() == 1)
            .ok_or_else(|| CharError::SignAmbiguity(format!("row {r} is not ±1 at s")))?;
        let consistent = (1..half).all(|a| {
            let want = -delta * if a % 2 == 0 { 1 } else { -1 };
            prof[a as usize] == int(want)
        });
        if !consistent {
            return Err(CharError::SignAmbiguity(format!("row {r} has no constant sign on the powers of s")));
        }
        deltas.push(delta as i8);
    }
    Ok(DeltaSigns::new(delta1 as i8, deltas[0], deltas[1]))
}

/// Recover the signs for `group`, checking the claimed case first.
pub fn delta_signs(group: Arc<FiniteGroup>, case: GenDecCase, n: u32, q: Option<u64>) -> Result<DeltaSigns> {
    let q = infer_q(&group, case, q);
    check_case_parameters(case, n, q)?;
    let data = BlockData::compute(group)?;
    if data.frame.n != n {
        return Err(CharError::CaseParameterMismatch(format!("Sylow order 2^{} is not 2^{n}", data.frame.n)));
    }
    if data.fusion.label != case.fusion() {
        return Err(CharError::WrongFusionCase {
            expected: case.fusion(),
            found: data.fusion.label,
        });
    }
    delta_signs_from(&data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::construct_str;

    fn g(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(construct_str(spec).unwrap())
    }

    #[test]
    fn s4_matches_case_f() {
        let r = gendec_verify(g("pgl2:3"), GenDecCase::F, 3, Some(3)).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.k_b0, 5);
        assert_eq!(r.section_columns, 3);
    }

    #[test]
    fn d8_matches_case_a_only() {
        let r = gendec_verify(g("d:8"), GenDecCase::A, 3, None).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert!(matches!(
            gendec_verify(g("d:8"), GenDecCase::F, 3, Some(3)),
            Err(CharError::WrongFusionCase { .. })
        ));
    }

    #[test]
    fn wrong_case_with_same_fusion_fails_honestly() {
        // PSL2(7) is case (d); the case (c) table with n = 3 is q = 9 data.
        let data = BlockData::compute(g("psl2:7")).unwrap();
        let m = gendec_build(GenDecCase::C, 3, Some(9)).unwrap();
        let r = gendec_verify_matrix(&data, &m).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn signs_for_small_groups() {
        assert_eq!(delta_signs(g("psl2:7"), GenDecCase::D, 3, None).unwrap(), DeltaSigns::new(-1, 1, 1));
        assert_eq!(delta_signs(g("pgl2:5"), GenDecCase::E, 3, None).unwrap(), DeltaSigns::new(1, -1, -1));
        assert_eq!(delta_signs(g("pgl2:3"), GenDecCase::F, 3, None).unwrap(), DeltaSigns::new(-1, 1, -1));
    }
}
