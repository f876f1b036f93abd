//! The individual verifications run by the commands and the corpus. Each
//! returns an [`Outcome`]; errors are turned into failed checks by
//! [`crate::report::run_check`].

use std::sync::Arc;

use dbl_core::chars::{
    check_case_parameters, delta_signs_from, dixon_table, expected_delta_signs, gendec_build, gendec_verify_matrix,
    infer_q, principal_block, BlockData, GenDecCase,
};
use dbl_core::config::Limits;
use dbl_core::gf2::FieldSpec;
use dbl_core::groups::{
    align_frame, borel_subgroup, diagonal, involution_fusion, sylow2_dihedral, sylow2_dihedral_with, FiniteGroup,
    FusionCase, FusionLabel, GroupSpec, SylowDihedralFrame,
};
use dbl_core::repmod::{
    brauer_audit, composition_factors, hom, is_isomorphic, is_projective, lies_in_principal_block, loewy_series,
    perm_module, scott_module, socle_series, transport_simple, AuditVerdict,
    GModule, LoewySeries, SimpleLibrary,
};
use serde_json::{json, Value};

use crate::report::Outcome;
use crate::{CliError, Result};

/// Group orders above this need `--extended`.
pub const EXTENDED_ORDER: usize = 5000;
/// Permutation-module dimensions above this need `--extended`.
pub const EXTENDED_DIM: usize = 2000;

/// Limits used for extended runs: the product groups there are too large
/// for centralisers by filtering under the default cap.
pub fn extended_limits() -> Limits {
    Limits {
        max_filter_order: 100_000,
        ..Limits::default()
    }
}

/// Reason to skip work of the given size, if any.
pub fn gate(order: usize, dim: usize, extended: bool) -> Option<String> {
    if extended || (order <= EXTENDED_ORDER && dim <= EXTENDED_DIM) {
        None
    } else {
        Some(format!(
            "requires --extended (group order {order}, permutation module dimension {dim})"
        ))
    }
}

/// Sylow frame with `t` fused to `z` when there are two involution classes.
/// Klein four Sylow subgroups are accepted.
pub fn fusion_of(g: &FiniteGroup) -> Result<(SylowDihedralFrame, FusionCase)> {
    let frame = align_frame(g, &sylow2_dihedral_with(g, true)?)?;
    let fc = involution_fusion(g, &frame)?;
    Ok((frame, fc))
}

pub fn frame_json(f: &SylowDihedralFrame) -> Value {
    json!({
        "n": f.n,
        "order": f.order(),
        "s": f.s.to_string(),
        "t": f.t.to_string(),
        "z": f.z.to_string(),
    })
}

fn fusion_json(f: &SylowDihedralFrame, fc: &FusionCase) -> Value {
    json!({ "frame": frame_json(f), "fusion": fc })
}

/// The involution fusion pattern (of both factors, for a product) against
/// the expected label and defect exponent.
pub fn fusion_check(g: &FiniteGroup, expected: Option<FusionLabel>, n: Option<u32>) -> Result<Outcome> {
    let sides: Vec<&FiniteGroup> = match g.product_info() {
        Some(info) => vec![&info.left, &info.right],
        None => vec![g],
    };
    let mut found = Vec::new();
    let mut details = Vec::new();
    for side in &sides {
        let (f, fc) = fusion_of(side)?;
        details.push(json!({ "group": side.name(), "fusion": fusion_json(&f, &fc) }));
        found.push((fc.label, f.n));
    }
    let (label, defect) = found[0];
    let consistent = found.iter().all(|&x| x == (label, defect));
    let ok = consistent && expected.is_none_or(|e| e == label) && n.is_none_or(|n| n == defect);
    let shown: Vec<String> = found.iter().map(|(l, n)| format!("{} (2^{n})", l.short())).collect();
    let mut summary = shown.join(" vs ");
    if let Some(e) = expected {
        summary.push_str(&format!(", expected {}", e.short()));
    }
    Ok(Outcome::new(ok, summary, json!({ "sides": details, "expected": expected, "n": n })))
}

/// Centralisers of the two non-central reflections in `pgl2:q`: the one
/// fused to `z` has order `2(q+1)` when `q ≡ 3 mod 4`, the other one has
/// order `2(q+1)` when `q ≡ 1 mod 4`; the remaining one has order `2(q−1)`.
/// Both are dihedral.
pub fn centralizer_check(g: &FiniteGroup) -> Result<Outcome> {
    let q = match g.spec() {
        Some(GroupSpec::Pgl2 { q }) => *q as usize,
        _ => return Ok(Outcome::skip("centraliser orders are only predicted for pgl2:q")),
    };
    let (f, _) = fusion_of(g)?;
    let st = f.s.mul(&f.t);
    let ct = g.centralizer(&f.t)?;
    let cst = g.centralizer(&st)?;
    let (big, small) = (2 * (q + 1), 2 * (q - 1));
    let (want_t, want_st) = if q % 4 == 1 { (small, big) } else { (big, small) };
    let t_fused = g.are_conjugate(&f.t, &f.z)?;
    let st_fused = g.are_conjugate(&st, &f.z)?;
    let ok = t_fused
        && !st_fused
        && ct.order() == want_t
        && cst.order() == want_st
        && ct.is_dihedral()
        && cst.is_dihedral();
    let summary = format!(
        "|C(t)| = {} (expected {want_t}), |C(st)| = {} (expected {want_st}), t fused to z: {t_fused}",
        ct.order(),
        cst.order()
    );
    Ok(Outcome::new(
        ok,
        summary,
        json!({
            "q": q,
            "t": { "element": f.t.to_string(), "fused_to_z": t_fused, "centralizer_order": ct.order(),
                   "expected_order": want_t, "dihedral": ct.is_dihedral() },
            "st": { "element": st.to_string(), "fused_to_z": st_fused, "centralizer_order": cst.order(),
                    "expected_order": want_st, "dihedral": cst.is_dihedral() },
        }),
    ))
}

/// Composition factors of `k_P↑G` lying in the principal block, without
/// multiplicity.
pub fn principal_simples(g: &Arc<FiniteGroup>, p: &FiniteGroup, lib: &SimpleLibrary) -> Result<Vec<String>> {
    let perm = perm_module(g, p, FieldSpec::GF2)?;
    let mut labels = lib.chop(&perm.module)?;
    labels.dedup();
    let mut out = Vec::new();
    for l in labels {
        if lib.in_principal_block(&l)? {
            out.push(l);
        }
    }
    Ok(out)
}

/// Principal-block composition factors of `k_P↑G` over GF(2) up to
/// isomorphism, as `(dimension, dimension of the endomorphism field)`. Each
/// one splits into that many absolutely irreducible modules.
pub fn principal_factors(g: &Arc<FiniteGroup>, p: &FiniteGroup) -> Result<Vec<(usize, usize)>> {
    let perm = perm_module(g, p, FieldSpec::GF2)?;
    let mut distinct: Vec<GModule> = Vec::new();
    for f in composition_factors(&perm.module)? {
        let mut seen = false;
        for d in &distinct {
            if d.dim() == f.dim() && is_isomorphic(d, &f)? {
                seen = true;
                break;
            }
        }
        if !seen {
            distinct.push(f);
        }
    }
    let mut out = Vec::new();
    for f in &distinct {
        if lies_in_principal_block(f)? {
            out.push((f.dim(), hom(f, f)?.len()));
        }
    }
    out.sort();
    Ok(out)
}

/// `k(B₀) = 2^{n−2} + 3`, four height-zero characters, and `l(B₀)` from the
/// composition factors of `k_P↑G` equal to the fusion prediction.
pub fn block_check(g: &Arc<FiniteGroup>, n: u32) -> Result<Outcome> {
    let (frame, fc) = fusion_of(g)?;
    let table = dixon_table(g.clone())?;
    let block = principal_block(&table)?;
    let expected_k = (1usize << n.saturating_sub(2)) + 3;
    let factors = principal_factors(g, &frame.p)?;
    let l: usize = factors.iter().map(|f| f.1).sum();
    let degrees: Vec<i64> = block.rows.iter().map(|&r| table.degree(r)).collect();
    let ok = frame.n == n && block.k() == expected_k && block.height_zero_count() == 4 && l == fc.predicted_l;
    let summary = format!(
        "k(B0) = {} (expected {expected_k}), {} height-zero, l(B0) = {l} (predicted {})",
        block.k(),
        block.height_zero_count(),
        fc.predicted_l
    );
    let factors: Vec<Value> = factors
        .iter()
        .map(|(dim, end)| json!({ "dim": dim, "splitting_degree": end }))
        .collect();
    Ok(Outcome::new(
        ok,
        summary,
        json!({
            "k_b0": block.k(),
            "expected_k": expected_k,
            "degrees": degrees,
            "heights": block.heights,
            "height_zero": block.height_zero_count(),
            "l_b0": l,
            "predicted_l": fc.predicted_l,
            "gf2_factors": factors,
        }),
    ))
}

/// The tabulated matrix of `case` against the computed table, plus the
/// recovered signs against the quoted constants.
pub fn gendec_check(g: &Arc<FiniteGroup>, case: GenDecCase, n: u32, q: Option<u64>) -> Result<Outcome> {
    let q = infer_q(g, case, q);
    check_case_parameters(case, n, q)?;
    let data = BlockData::compute(g.clone())?;
    let matrix = gendec_build(case, n, q)?;
    let report = gendec_verify_matrix(&data, &matrix)?;
    let delta = delta_signs_from(&data);
    let expected = expected_delta_signs(case);
    let delta_ok = match (&delta, expected) {
        (Ok(d), Some(e)) => *d == e,
        (Ok(_), None) => true,
        (Err(_), _) => false,
    };
    let ok = report.pass && delta_ok;
    let delta_text = match &delta {
        Ok(d) => format!("δ = ({}, {}, {})", d.delta1, d.delta2, d.delta3),
        Err(e) => format!("δ unresolved: {e}"),
    };
    let summary = format!(
        "case {case} n={n}: matrix {}, {delta_text}{}",
        if report.pass { "matches" } else { "does not match" },
        match expected {
            Some(_) if delta_ok => ", as quoted",
            Some(_) => ", differs from the quoted constants",
            None => "",
        }
    );
    Ok(Outcome::new(
        ok,
        summary,
        json!({
            "verification": report,
            "delta": delta.as_ref().ok(),
            "delta_error": delta.as_ref().err().map(|e| e.to_string()),
            "expected_delta": expected,
            "matrix": matrix,
        }),
    ))
}

/// A Scott module with its Loewy and socle series.
pub struct ScottStructure {
    pub module: GModule,
    pub library: SimpleLibrary,
    pub loewy: LoewySeries,
    pub socle: LoewySeries,
    pub index: usize,
}

pub fn scott_structure(g: &Arc<FiniteGroup>, h: &FiniteGroup) -> Result<ScottStructure> {
    let sc = scott_module(g, h, FieldSpec::GF2)?;
    let library = SimpleLibrary::new(g.clone(), FieldSpec::GF2)?;
    let loewy = loewy_series(&sc.module, &library)?;
    let socle = socle_series(&sc.module, &library)?;
    Ok(ScottStructure {
        index: sc.perm.module.dim(),
        module: sc.module,
        library,
        loewy,
        socle,
    })
}

fn one(label: &str) -> bool {
    label == "1"
}

/// `[1 | S ⊕ S′ | 1]` with `S ≇ S′` of dimension `(q−1)/2` and the pair
/// closed under duality.
fn psl2_borel_shape(q: usize, st: &ScottStructure) -> Result<bool> {
    let l = &st.loewy.layers;
    if l.len() != 3 || l[0] != ["1"] || l[2] != ["1"] || l[1].len() != 2 || l[1][0] == l[1][1] {
        return Ok(false);
    }
    if !l[1].iter().all(|x| st.library.dim_of(x) == Some((q - 1) / 2)) {
        return Ok(false);
    }
    let mut duals = vec![st.library.dual_label(&l[1][0])?, st.library.dual_label(&l[1][1])?];
    duals.sort();
    let mut pair = l[1].clone();
    pair.sort();
    Ok(duals == pair)
}

/// `[1 | 1 ⊕ T | T ⊕ 1 | 1]` with `dim T = q−1`.
fn pgl2_borel_shape(q: usize, st: &ScottStructure) -> bool {
    let l = &st.loewy.layers;
    if l.len() != 4 || l[0] != ["1"] || l[3] != ["1"] || l[1].len() != 2 || l[1] != l[2] {
        return false;
    }
    let t: Vec<&String> = l[1].iter().filter(|x| !one(x)).collect();
    t.len() == 1 && l[1].iter().any(|x| one(x)) && st.library.dim_of(t[0]) == Some(q - 1)
}

fn scott_json(st: &ScottStructure, projective: Option<bool>) -> Value {
    let simples: Vec<Value> = st
        .library
        .simples()
        .iter()
        .map(|s| json!({ "label": s.label, "dim": s.module.dim() }))
        .collect();
    json!({
        "dim": st.module.dim(),
        "index": st.index,
        "loewy": st.loewy.layers,
        "socle": st.socle.layers,
        "projective": projective,
        "simples": simples,
        "field": st.library.field().to_string(),
    })
}

/// Which subgroup a Scott module is taken relative to.
#[derive(Clone, Debug)]
pub enum Selector {
    Borel,
    Sylow,
    Generators(Vec<String>),
}

pub fn select_subgroup(g: &FiniteGroup, sel: &Selector) -> Result<FiniteGroup> {
    Ok(match sel {
        Selector::Borel => borel_subgroup(g)?,
        Selector::Sylow => dbl_core::groups::sylow2(g)?,
        Selector::Generators(gens) => {
            let perms = gens
                .iter()
                .map(|t| dbl_core::groups::Permutation::parse(t, g.degree()))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            g.subgroup("H", perms)?
        }
    })
}

/// The expected structure of `Sc(G, H)` when one is known, as a predicate
/// name and a verdict.
fn expected_scott_shape(g: &FiniteGroup, sel: &Selector, st: &ScottStructure) -> Result<Option<(String, bool)>> {
    let borel = matches!(sel, Selector::Borel);
    Ok(match g.spec() {
        Some(GroupSpec::Psl2 { q }) if borel => {
            let q = *q as usize;
            let ok = psl2_borel_shape(q, st)? && st.socle == st.loewy;
            Some((format!("[1 | S+S' | 1], dim S = {}", (q - 1) / 2), ok))
        }
        Some(GroupSpec::Pgl2 { q }) if borel => {
            let q = *q as usize;
            let ok = pgl2_borel_shape(q, st) && st.socle == st.loewy;
            Some((format!("[1 | 1+T | T+1 | 1], dim T = {}", q - 1), ok))
        }
        _ if matches!(sel, Selector::Sylow) && g.order().is_power_of_two() => {
            Some(("trivial module".to_string(), st.module.dim() == 1))
        }
        _ => None,
    })
}

/// Scott module structure, asserting the known shape where there is one.
pub fn scott_check(g: &Arc<FiniteGroup>, sel: &Selector, with_projectivity: bool) -> Result<Outcome> {
    let h = select_subgroup(g, sel)?;
    if let Some(reason) = gate(g.order(), g.order() / h.order(), false) {
        return Ok(Outcome::skip(reason));
    }
    let st = scott_structure(g, &h)?;
    let projective = if with_projectivity {
        Some(is_projective(&st.module)?)
    } else {
        None
    };
    let expectation = expected_scott_shape(g, sel, &st)?;
    let mut details = scott_json(&st, projective);
    let mut duals = serde_json::Map::new();
    for s in st.library.simples() {
        duals.insert(s.label.clone(), json!(st.library.dual_label(&s.label)?));
    }
    details["duals"] = Value::Object(duals);
    details["expected"] = json!(expectation.as_ref().map(|e| &e.0));
    let ok = expectation.as_ref().is_none_or(|e| e.1);
    let mut summary = format!("dim {}, Loewy [{}]", st.module.dim(), st.loewy.display());
    if let Some((shape, _)) = &expectation {
        summary.push_str(&format!(", expected {shape}"));
    }
    Ok(Outcome::new(ok, summary, details))
}

fn audit_outcome(what: &str, m: &GModule, frame: &SylowDihedralFrame) -> Result<Outcome> {
    let rows = brauer_audit(m, frame)?;
    let bad = rows.iter().filter(|r| r.verdict == AuditVerdict::Decomposable).count();
    let zero = rows.iter().filter(|r| r.verdict == AuditVerdict::Zero).count();
    let summary = format!(
        "{what} (dim {}): {} subgroup classes, {} zero, {} indecomposable, {bad} decomposable",
        m.dim(),
        rows.len(),
        zero,
        rows.len() - zero - bad
    );
    Ok(Outcome::new(bad == 0, summary, json!({ "dim": m.dim(), "audit": rows })))
}

/// `Sc(G × G′, ΔP)` over a product with equal fusion on both sides, or the
/// reason there is none.
pub struct Bimodule {
    pub group: Arc<FiniteGroup>,
    pub module: GModule,
    pub frame: SylowDihedralFrame,
    pub fusion: FusionLabel,
}

pub enum BimoduleSetup {
    Ready(Box<Bimodule>),
    Skip(String),
}

pub fn product_bimodule(g: &Arc<FiniteGroup>, extended: bool) -> Result<BimoduleSetup> {
    let info = g
        .product_info()
        .ok_or_else(|| CliError::Usage(format!("{} is not a product", g.name())))?;
    let (lf, lc) = fusion_of(&info.left)?;
    let (rf, rc) = fusion_of(&info.right)?;
    if lc.label != rc.label {
        return Ok(BimoduleSetup::Skip(format!(
            "FusionMismatch ({} vs {}): no stable equivalence through the diagonal Scott module",
            lc.label.short(),
            rc.label.short()
        )));
    }
    if lf.n != rf.n {
        return Ok(BimoduleSetup::Skip(format!(
            "DefectMismatch (2^{} vs 2^{})",
            lf.n, rf.n
        )));
    }
    let index = g.order() >> lf.n;
    if let Some(reason) = gate(g.order(), index, extended) {
        return Ok(BimoduleSetup::Skip(reason));
    }
    let (dp, frame) = diagonal(g, &lf, &rf)?;
    let sc = scott_module(g, &dp, FieldSpec::GF2)?;
    Ok(BimoduleSetup::Ready(Box::new(Bimodule {
        group: g.clone(),
        module: sc.module,
        frame,
        fusion: lc.label,
    })))
}

/// Brauer indecomposability of `Sc(G, P)`.
pub fn brauer_check(g: &Arc<FiniteGroup>, extended: bool) -> Result<Outcome> {
    let frame = match sylow2_dihedral(g) {
        Ok(f) => f,
        Err(e) => return Ok(Outcome::skip(format!("{e}"))),
    };
    if let Some(reason) = gate(g.order(), g.order() >> frame.n, extended) {
        return Ok(Outcome::skip(reason));
    }
    let sc = scott_module(g, &frame.p, FieldSpec::GF2)?;
    audit_outcome("Sc(G,P)", &sc.module, &frame)
}

/// Brauer indecomposability of `Sc(G × G′, ΔP)`.
pub fn brauer_product_check(setup: &BimoduleSetup) -> Result<Outcome> {
    match setup {
        BimoduleSetup::Skip(reason) => Ok(Outcome::skip(reason.clone())),
        BimoduleSetup::Ready(b) => audit_outcome("Sc(GxG',ΔP)", &b.module, &b.frame),
    }
}

/// Images of the principal-block simples of the left factor. Every image
/// must be indecomposable after removing projectives; the verdict is
/// `morita` when they are all simple and `stable-only` otherwise.
pub fn transport_check(setup: &BimoduleSetup, expect: Option<&str>) -> Result<Outcome> {
    let b = match setup {
        BimoduleSetup::Skip(reason) => return Ok(Outcome::skip(reason.clone())),
        BimoduleSetup::Ready(b) => b,
    };
    let info = b.group.product_info().expect("bimodule over a product");
    let left = info.left.clone();
    let (lf, _) = fusion_of(&left)?;
    let lib = SimpleLibrary::new(left.clone(), FieldSpec::GF2)?;
    let simples = principal_simples(&left, &lf.p, &lib)?;
    let mut images = Vec::new();
    let mut all_simple = true;
    let mut contract = true;
    for label in &simples {
        let s = lib.get(label).expect("registered").module;
        let r = transport_simple(&b.module, &s)?;
        all_simple &= r.simple;
        contract &= r.indecomposable;
        images.push(json!({ "simple": label, "dim": s.dim(), "image": r }));
    }
    let verdict = if all_simple { "morita" } else { "stable-only" };
    let expect_ok = expect.is_none_or(|e| e == verdict);
    let mut summary = format!("{} simples transported, verdict {verdict}", simples.len());
    if !contract {
        summary.push_str(", some image is not indecomposable");
    }
    if let Some(e) = expect {
        summary.push_str(&format!(" (expected {e})"));
    }
    Ok(Outcome::new(
        contract && expect_ok,
        summary,
        json!({
            "bimodule_dim": b.module.dim(),
            "fusion": b.fusion,
            "images": images,
            "verdict": verdict,
            "expected": expect,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use dbl_core::groups::construct_str;

    fn group(s: &str) -> Arc<FiniteGroup> {
        Arc::new(construct_str(s).unwrap())
    }

    #[test]
    fn gate_thresholds() {
        assert!(gate(5000, 2000, false).is_none());
        assert!(gate(5001, 10, false).is_some());
        assert!(gate(60480, 7560, true).is_none());
    }

    #[test]
    fn fusion_of_a_product_compares_factors() {
        let g = group("prod(pgl2:3,psl2:7)");
        let o = fusion_check(&g, None, None).unwrap();
        assert_eq!(o.status, Status::Fail);
        assert_eq!(o.summary, "CASE2 (2^3) vs CASE3 (2^3)");
    }

    #[test]
    fn s4_centralizers() {
        let o = centralizer_check(&group("pgl2:3")).unwrap();
        assert_eq!(o.status, Status::Pass, "{}", o.summary);
        assert_eq!(o.details["t"]["centralizer_order"], 8);
        assert_eq!(centralizer_check(&group("psl2:7")).unwrap().status, Status::Skip);
    }

    #[test]
    fn s4_scott_module_at_borel() {
        let o = scott_check(&group("pgl2:3"), &Selector::Borel, true).unwrap();
        assert_eq!(o.status, Status::Pass, "{}", o.summary);
        assert_eq!(o.details["dim"], 8);
        // 𝔹(3) has odd order, so the Scott module is the projective cover of k.
        assert_eq!(o.details["projective"], true);
    }
}
