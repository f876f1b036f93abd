//! Checks for the stated invariants of every module, shared by the property
//! suites in this crate and by the acceptance target of the CLI crate. Each
//! check returns `Err` with a description of the first violation.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use dbl_core::chars::{dixon_table, gendec_build, gendec_verify_matrix, BlockData, GenDecCase};
use dbl_core::gf2::{spin, FFMatrix, FFVec, FieldSpec};
use dbl_core::groups::{
    align_frame, construct_str, diagonal, involution_fusion, sylow2, sylow2_dihedral, FiniteGroup, FusionLabel,
    Permutation, SylowDihedralFrame,
};
use dbl_core::repmod::{
    brauer_quotient, find_isomorphism, fixed_points, hom, is_isomorphic, is_projective, is_summand_of, loewy_series,
    p_subgroup_classes, perm_module, relative_syzygy, scott_module, socle_series, strip_projective, tensor_over_left,
    GModule, SimpleLibrary,
};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn group(spec: &str) -> Result<Arc<FiniteGroup>, String> {
    let g = construct_str(spec).map_err(err)?;
    g.enumerate().map_err(err)?;
    Ok(Arc::new(g))
}

pub fn frame(g: &FiniteGroup) -> Result<SylowDihedralFrame, String> {
    align_frame(g, &sylow2_dihedral(g).map_err(err)?).map_err(err)
}

// ---------------------------------------------------------------- groups

/// `|C_G(g)| · |g^G| = |G|` for every class representative.
pub fn class_equation(spec: &str) -> Check {
    let g = group(spec)?;
    for c in g.classes() {
        let cent = g.centralizer(&g.element(c.rep)).map_err(err)?;
        ensure(cent.order() * c.size == g.order(), || {
            format!("{spec}: class of size {} has centraliser of order {}", c.size, cent.order())
        })?;
    }
    Ok(())
}

/// Orders of `PSL₂(q)` and `PGL₂(q)`.
pub fn linear_group_orders(q: usize) -> Check {
    let full = q * (q - 1) * (q + 1);
    let psl = group(&format!("psl2:{q}"))?;
    let pgl = group(&format!("pgl2:{q}"))?;
    ensure(psl.order() * 2 == full && pgl.order() == full, || {
        format!("q = {q}: |PSL| = {}, |PGL| = {}", psl.order(), pgl.order())
    })
}

/// Conjugating the dihedral frame by group elements keeps its relations.
pub fn frame_conjugates_keep_relations(spec: &str, step: usize) -> Check {
    let g = group(spec)?;
    let f = sylow2_dihedral(&g).map_err(err)?;
    for i in (0..g.order()).step_by(step.max(1)) {
        let c = f.conjugate(&g.element(i));
        ensure(c.relations_hold() && c.p.is_subgroup_of(&g), || {
            format!("{spec}: frame conjugated by element {i} breaks the relations")
        })?;
    }
    Ok(())
}

/// Fusion labels by family.
pub fn fusion_label(spec: &str, expected: FusionLabel) -> Check {
    let g = group(spec)?;
    let f = frame(&g)?;
    let got = involution_fusion(&g, &f).map_err(err)?.label;
    ensure(got == expected, || format!("{spec}: fusion {got}, expected {expected}"))
}

/// In `PGL₂(q)` exactly one of the reflections `t`, `st` is fused to `z`.
pub fn pgl2_reflection_split(q: usize) -> Check {
    let g = group(&format!("pgl2:{q}"))?;
    let f = frame(&g)?;
    let st = f.s.mul(&f.t);
    let fused = [&f.t, &st]
        .iter()
        .map(|r| g.are_conjugate(r, &f.z))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    ensure(fused.iter().filter(|&&b| b).count() == 1, || {
        format!("pgl2:{q}: t, st fused to z: {fused:?}")
    })
}

// ------------------------------------------------------------------- gf2

/// `rank + nullity = cols`, the null space is annihilated, and reduced
/// echelon form is idempotent.
pub fn rank_nullity_and_rref(m: &FFMatrix) -> Check {
    let null = m.nullspace();
    ensure(m.rank() + null.rows() == m.cols(), || {
        format!("rank {} + nullity {} != {}", m.rank(), null.rows(), m.cols())
    })?;
    if null.rows() > 0 {
        ensure(m.mul(&null.transpose()).map_err(err)?.is_zero(), || "null vector not annihilated".into())?;
    }
    let r = m.rref().matrix;
    ensure(r.rref().matrix == r, || "rref is not idempotent".into())
}

/// `solve(A, b)` succeeds exactly when `rank [A | b] = rank A`, and then
/// returns a solution.
pub fn solve_is_consistent(a: &FFMatrix, b: &FFVec) -> Check {
    let bcol = FFMatrix::from_vecs(a.field(), b.len(), std::slice::from_ref(b)).transpose();
    let consistent = a.hstack(&bcol).map_err(err)?.rank() == a.rank();
    match a.solve(b) {
        Ok(x) => {
            let image = a.mul(&FFMatrix::from_vecs(a.field(), x.len(), &[x]).transpose()).map_err(err)?;
            ensure(consistent && image == bcol, || "solve returned a non-solution".into())
        }
        Err(_) => ensure(!consistent, || "solve failed on a consistent system".into()),
    }
}

/// The spun subspace is stable under every action.
pub fn spin_is_stable(seed: &FFMatrix, actions: &[FFMatrix]) -> Check {
    let s = spin(seed, actions).map_err(err)?;
    let rank = s.rank();
    for a in actions {
        let grown = s.vstack(&s.mul(a).map_err(err)?).map_err(err)?;
        ensure(grown.rank() == rank, || "spin output is not action-stable".into())?;
    }
    ensure(s.vstack(seed).map_err(err)?.rank() == rank, || "spin lost a seed vector".into())
}

/// Embedding into a larger field commutes with sums, products and rank.
pub fn embedding_commutes(a: &FFMatrix, b: &FFMatrix, target: FieldSpec) -> Check {
    let e = |m: &FFMatrix| m.embed(target).map_err(err);
    ensure(e(&a.mul(b).map_err(err)?)? == e(a)?.mul(&e(b)?).map_err(err)?, || {
        format!("embedding into GF({}) does not commute with products", target.order())
    })?;
    let c = a.mul(b).map_err(err)?;
    ensure(e(&c.add(&c).map_err(err)?)?.is_zero(), || "characteristic changed".into())?;
    ensure(e(a)?.rank() == a.rank(), || "rank changed under embedding".into())
}

// ---------------------------------------------------------------- repmod

fn word_element(g: &FiniteGroup, word: &[usize]) -> Permutation {
    word.iter().fold(g.identity(), |acc, &i| acc.mul(&g.generators()[i]))
}

/// `ρ(w₁)ρ(w₂) = ρ(w₁w₂)` for words in the generators, with `ρ` of an
/// element computed from the group's own word for it.
pub fn representation_property(m: &GModule, words: &[(Vec<usize>, Vec<usize>)]) -> Check {
    let g = m.group();
    for (w1, w2) in words {
        let (a, b) = (word_element(g, w1), word_element(g, w2));
        let lhs = m.action(&a).map_err(err)?.mul(&m.action(&b).map_err(err)?).map_err(err)?;
        let rhs = m.action(&a.mul(&b)).map_err(err)?;
        ensure(lhs == rhs, || format!("ρ({w1:?})ρ({w2:?}) != ρ(product)"))?;
    }
    Ok(())
}

fn orbit_count(images: &[Vec<usize>], n: usize) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for im in images {
                if !seen[im[x]] {
                    seen[im[x]] = true;
                    stack.push(im[x]);
                }
            }
        }
    }
    count
}

/// For a permutation module, `dim M^Q` is the number of `Q`-orbits on the
/// basis.
pub fn fixed_points_count_orbits(g: &Arc<FiniteGroup>, h: &FiniteGroup, q: &FiniteGroup) -> Check {
    let pm = perm_module(g, h, FieldSpec::GF2).map_err(err)?;
    let n = pm.module.dim();
    let images: Vec<Vec<usize>> = q
        .generators()
        .iter()
        .map(|x| {
            let a = pm.module.action(x).map_err(err)?;
            Ok((0..n).map(|i| a.row(i).first_nonzero().expect("permutation matrix")).collect())
        })
        .collect::<Result<_, String>>()?;
    let dim = fixed_points(&pm.module, q).map_err(err)?.rows();
    let orbits = orbit_count(&images, n);
    ensure(dim == orbits, || {
        format!("{} on cosets of {}: dim M^Q = {dim}, {orbits} orbits", g.name(), h.name())
    })
}

/// `(M(R))(Q) ≅ M(Q)` for `R ◁ Q`, compared over the normaliser of both.
pub fn brauer_transitivity(m: &GModule, r: &FiniteGroup, q: &FiniteGroup) -> Check {
    let inner = brauer_quotient(m, r).map_err(err)?;
    let q_in = inner.normalizer.subgroup(q.name().to_string(), q.generators().to_vec()).map_err(err)?;
    let twice = brauer_quotient(&inner.module, &q_in).map_err(err)?;
    let once = brauer_quotient(m, q).map_err(err)?;
    let once_here = once.module.restrict(twice.normalizer.clone()).map_err(err)?;
    let iso = find_isomorphism(&twice.module, &once_here).map_err(err)?;
    ensure(iso.is_some(), || {
        format!(
            "|R| = {}, |Q| = {}: dims {} vs {} without an isomorphism",
            r.order(),
            q.order(),
            twice.module.dim(),
            once_here.dim()
        )
    })
}

/// `Sc(G, H)` is self-dual and `Hom(k_H↑G, k)` is one-dimensional.
pub fn scott_self_duality(g: &Arc<FiniteGroup>, h: &FiniteGroup) -> Check {
    let sc = scott_module(g, h, FieldSpec::GF2).map_err(err)?;
    ensure(is_isomorphic(&sc.module, &sc.module.dual()).map_err(err)?, || {
        format!("Sc({}, {}) is not self-dual", g.name(), h.name())
    })?;
    let k = GModule::trivial(g.clone(), FieldSpec::GF2);
    let down = hom(&sc.perm.module, &k).map_err(err)?.len();
    ensure(down == 1, || format!("Hom(k_H↑G, k) has dimension {down}"))
}

/// The pieces of a product instance `G × G′` with its diagonal Sylow.
pub struct ProductInstance {
    pub g: Arc<FiniteGroup>,
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
    pub left_frame: SylowDihedralFrame,
    pub right_frame: SylowDihedralFrame,
    pub diag: FiniteGroup,
    pub diag_frame: SylowDihedralFrame,
    /// `Sc(G × G′, ΔP)`.
    pub bimodule: GModule,
}

pub fn product_instance(spec: &str) -> Result<ProductInstance, String> {
    let g = group(spec)?;
    let info = g.product_info().ok_or_else(|| format!("{spec} is not a product"))?;
    let (left, right) = (info.left.clone(), info.right.clone());
    let (lf, rf) = (frame(&left)?, frame(&right)?);
    let (diag, diag_frame) = diagonal(&g, &lf, &rf).map_err(err)?;
    let bimodule = scott_module(&g, &diag, FieldSpec::GF2).map_err(err)?.module;
    Ok(ProductInstance { g, left, right, left_frame: lf, right_frame: rf, diag, diag_frame, bimodule })
}

impl ProductInstance {
    fn project(&self, x: &Permutation, right: bool) -> Permutation {
        let ld = self.left.degree();
        let out = if right {
            x.restrict(ld, self.right.degree())
        } else {
            x.restrict(0, ld)
        };
        out.expect("product elements preserve both factors")
    }

    /// The two projections of a diagonal subgroup.
    fn factors_of(&self, dq: &FiniteGroup) -> Result<(FiniteGroup, FiniteGroup), String> {
        let l = dq.generators().iter().map(|x| self.project(x, false)).collect();
        let r = dq.generators().iter().map(|x| self.project(x, true)).collect();
        Ok((
            self.left.subgroup("Q", l).map_err(err)?,
            self.right.subgroup("Q'", r).map_err(err)?,
        ))
    }
}

/// `Sc(G′, Q) | k_G ⊗_{kG} M ⟺ Sc(G × G′, ΔQ) | M` for `M = Sc(G × G′, ΔP)`
/// and every `Q ≤ P` up to conjugacy.
pub fn kunugi_equivalence(spec: &str) -> Check {
    let inst = product_instance(spec)?;
    let k = GModule::trivial(inst.left.clone(), FieldSpec::GF2);
    let pushed = tensor_over_left(&inst.bimodule, &k).map_err(err)?;
    let mut holds = 0;
    for dq in p_subgroup_classes(&inst.g, &inst.diag).map_err(err)? {
        let (_, qr) = inst.factors_of(&dq)?;
        let right_scott = scott_module(&inst.right, &qr, FieldSpec::GF2).map_err(err)?.module;
        let lhs = is_summand_of(&right_scott, &pushed).map_err(err)?;
        let diag_scott = scott_module(&inst.g, &dq, FieldSpec::GF2).map_err(err)?.module;
        let rhs = is_summand_of(&diag_scott, &inst.bimodule).map_err(err)?;
        ensure(lhs == rhs, || format!("{spec}, |Q| = {}: left side {lhs}, right side {rhs}", dq.order()))?;
        holds += usize::from(lhs);
    }
    ensure(holds > 0, || format!("{spec}: neither side holds for Q = P"))
}

/// `Sc(G, Q) ⊗ M = Sc(G′, Q) ⊕ projective` for `Q ∈ {1, ⟨z⟩, ⟨t⟩, P}`.
pub fn scott_transport(spec: &str) -> Check {
    let inst = product_instance(spec)?;
    let (lf, rf) = (&inst.left_frame, &inst.right_frame);
    let pairs = [
        (vec![], vec![]),
        (vec![lf.z.clone()], vec![rf.z.clone()]),
        (vec![lf.t.clone()], vec![rf.t.clone()]),
        (vec![lf.s.clone(), lf.t.clone()], vec![rf.s.clone(), rf.t.clone()]),
    ];
    for (lg, rg) in pairs {
        let ql = inst.left.subgroup("Q", lg).map_err(err)?;
        let qr = inst.right.subgroup("Q'", rg).map_err(err)?;
        let source = scott_module(&inst.left, &ql, FieldSpec::GF2).map_err(err)?.module;
        let target = scott_module(&inst.right, &qr, FieldSpec::GF2).map_err(err)?.module;
        let image = tensor_over_left(&inst.bimodule, &source).map_err(err)?;
        let (core, _) = strip_projective(&image).map_err(err)?;
        if is_projective(&target).map_err(err)? {
            ensure(core.is_empty(), || format!("{spec}, |Q| = {}: image is not projective", ql.order()))?;
        } else {
            ensure(core.len() == 1, || {
                format!("{spec}, |Q| = {}: {} non-projective summands", ql.order(), core.len())
            })?;
            ensure(is_isomorphic(&core[0].module, &target).map_err(err)?, || {
                format!("{spec}, |Q| = {}: core is not Sc(G', Q)", ql.order())
            })?;
        }
    }
    Ok(())
}

/// `M(Δ⟨t⟩) ≅ Sc(C_G(t) × C_G′(t), ΔC_P(t))` for a reflection `t` that is
/// not conjugate to `z`; then `C_P(t) = ⟨t, z⟩`.
pub fn brauer_quotient_at_reflection(spec: &str) -> Check {
    let inst = product_instance(spec)?;
    let f = &inst.diag_frame;
    let mut reflection = None;
    for r in [f.t.clone(), f.s.mul(&f.t)] {
        let left = inst.project(&r, false);
        if !inst.left.are_conjugate(&left, &inst.left_frame.z).map_err(err)? {
            reflection = Some(r);
        }
    }
    let t = reflection.ok_or_else(|| format!("{spec}: every reflection is fused to z"))?;
    let dt = inst.g.subgroup("Δ<t>", vec![t.clone()]).map_err(err)?;
    let bq = brauer_quotient(&inst.bimodule, &dt).map_err(err)?;
    let dc = bq.normalizer.subgroup("ΔC_P(t)", vec![f.z.clone(), t]).map_err(err)?;
    let sc = scott_module(&bq.normalizer, &dc, FieldSpec::GF2).map_err(err)?.module;
    ensure(is_isomorphic(&bq.module, &sc).map_err(err)?, || {
        format!("{spec}: M(Δ<t>) of dim {} is not the Scott module of dim {}", bq.module.dim(), sc.dim())
    })
}

/// Projective modules have zero Brauer quotient at every `Q ≠ 1`.
pub fn projectives_vanish(m: &GModule, p: &FiniteGroup) -> Check {
    ensure(is_projective(m).map_err(err)?, || "module is not projective".into())?;
    for q in p_subgroup_classes(m.group(), p).map_err(err)? {
        if q.order() == 1 {
            continue;
        }
        let d = brauer_quotient(m, &q).map_err(err)?.module.dim();
        ensure(d == 0, || format!("M(Q) has dimension {d} for |Q| = {}", q.order()))?;
    }
    Ok(())
}

/// The socle series of `M` is the radical series of `M*`, reversed and
/// dualised.
pub fn loewy_socle_duality(m: &GModule) -> Check {
    let lib = SimpleLibrary::new(m.group().clone(), m.field()).map_err(err)?;
    let socle = socle_series(m, &lib).map_err(err)?;
    let radical = loewy_series(&m.dual(), &lib).map_err(err)?;
    let mut mapped = Vec::new();
    for layer in radical.layers.iter().rev() {
        let mut duals = layer.iter().map(|l| lib.dual_label(l)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        lib.sort_labels(&mut duals);
        mapped.push(duals);
    }
    ensure(mapped == socle.layers, || {
        format!("socle {:?} vs dualised radical of the dual {mapped:?}", socle.layers)
    })
}

/// Modules used for the duality check: `Ω_B(k)` for the Borel of `PSL₂(q)`
/// and the permutation module of `S₄` on the cosets of `⟨t⟩`.
pub fn duality_samples() -> Result<Vec<GModule>, String> {
    let l27 = group("psl2:7")?;
    let b = dbl_core::groups::borel_subgroup(&l27).map_err(err)?;
    let omega = relative_syzygy(&l27, &b, FieldSpec::GF2).map_err(err)?;
    let s4 = group("pgl2:3")?;
    let f = frame(&s4)?;
    let t = s4.subgroup("<t>", vec![f.t.clone()]).map_err(err)?;
    let pm = perm_module(&s4, &t, FieldSpec::GF2).map_err(err)?.module;
    Ok(vec![omega, pm])
}

// ----------------------------------------------------------------- chars

/// Row and column orthogonality of the computed character table.
pub fn table_orthogonality(spec: &str) -> Check {
    let t = dixon_table(group(spec)?).map_err(err)?;
    ensure(t.rows_orthogonal() && t.columns_orthogonal(), || {
        format!("{spec}: orthogonality fails")
    })
}

fn two_adic(mut x: i64) -> u32 {
    let mut v = 0;
    while x != 0 && x % 2 == 0 {
        x /= 2;
        v += 1;
    }
    v
}

/// Shape of a tabulated matrix: `2^{n−2} + 3` rows, four of least 2-adic
/// degree valuation, and cross-section orthogonality.
pub fn gendec_shape(case: GenDecCase, n: u32, q: Option<u64>) -> Check {
    let m = gendec_build(case, n, q).map_err(err)?;
    let rows = m.entries.len();
    ensure(rows == (1 << (n - 2)) + 3, || format!("case {case} n={n}: {rows} rows"))?;
    let vals: Vec<u32> = m.implied_degrees().into_iter().map(two_adic).collect();
    let least = *vals.iter().min().expect("rows");
    let hz = vals.iter().filter(|&&v| v == least).count();
    ensure(hz == 4, || format!("case {case} n={n}: {hz} rows of least degree valuation"))?;
    let bad = m.cross_section_failures();
    ensure(bad.is_empty(), || format!("case {case} n={n}: cross-section failures {bad:?}"))
}

/// Twisting `ζ ↦ ζ^c` permutes the section columns and leaves the
/// verification outcome unchanged.
pub fn galois_twist_invariance(spec: &str, case: GenDecCase, n: u32) -> Check {
    let g = group(spec)?;
    let q = dbl_core::chars::infer_q(&g, case, None);
    let data = BlockData::compute(g).map_err(err)?;
    let m = gendec_build(case, n, q).map_err(err)?;
    let base = gendec_verify_matrix(&data, &m).map_err(err)?.pass;
    ensure(base, || format!("{spec}: untwisted matrix fails verification"))?;
    let cols: BTreeSet<String> = (0..m.columns.len()).map(|j| format!("{:?}", m.column(j))).collect();
    for c in (1..i64::from(m.root_order())).step_by(2) {
        let tw = m.galois_twist(c).map_err(err)?;
        let tcols: BTreeSet<String> = (0..tw.columns.len()).map(|j| format!("{:?}", tw.column(j))).collect();
        ensure(tcols == cols, || format!("{spec}: twist by {c} does not permute the columns"))?;
        let pass = gendec_verify_matrix(&data, &tw).map_err(err)?.pass;
        ensure(pass == base, || format!("{spec}: verification changes under twist by {c}"))?;
    }
    Ok(())
}

/// Number of classes of non-trivial 2-elements of `P` against the fusion
/// prediction `2^{n−2} + 2, 2^{n−2} + 1, 2^{n−2}`.
pub fn section_count(spec: &str) -> Check {
    let g = group(spec)?;
    let f = frame(&g)?;
    let label = involution_fusion(&g, &f).map_err(err)?.label;
    let base = 1usize << (f.n - 2);
    let expected = match label {
        FusionLabel::Case1Nilpotent => base + 2,
        FusionLabel::Case2Pgl => base + 1,
        FusionLabel::Case3Psl => base,
    };
    let got = BlockData::compute(g).map_err(err)?.nontrivial_two_classes().map_err(err)?;
    ensure(got == expected, || format!("{spec}: {got} section classes, expected {expected}"))
}

// ------------------------------------------------------------- the suite

/// Every invariant at fixed parameters, in a stable order. The acceptance
/// target runs this once per seed and compares verdicts.
pub fn suite() -> Vec<(&'static str, Box<dyn Fn() -> Check>)> {
    let mut out: Vec<(&'static str, Box<dyn Fn() -> Check>)> = Vec::new();
    out.push(("class equation", Box::new(|| ["psl2:7", "pgl2:5", "a:7", "d:16"].iter().try_for_each(|s| class_equation(s)))));
    out.push(("linear group orders", Box::new(|| [3, 5, 7, 9, 13, 17].into_iter().try_for_each(linear_group_orders))));
    out.push(("frame conjugation", Box::new(|| frame_conjugates_keep_relations("pgl2:5", 7))));
    out.push(("fusion labels", Box::new(fusion_labels)));
    out.push(("pgl2 reflection split", Box::new(|| [3, 5, 7, 9].into_iter().try_for_each(pgl2_reflection_split))));
    out.push(("representation property", Box::new(representation_samples)));
    out.push(("fixed points count orbits", Box::new(fixed_point_samples)));
    out.push(("brauer transitivity", Box::new(|| brauer_transitivity_samples("prod(pgl2:3,pgl2:3)"))));
    out.push(("scott self-duality", Box::new(scott_duality_samples)));
    out.push(("kunugi S4xS4", Box::new(|| kunugi_equivalence("prod(pgl2:3,pgl2:3)"))));
    out.push(("kunugi S4xS5", Box::new(|| kunugi_equivalence("prod(pgl2:3,pgl2:5)"))));
    out.push(("scott transport S4xS4", Box::new(|| scott_transport("prod(pgl2:3,pgl2:3)"))));
    out.push(("brauer quotient at reflection", Box::new(|| {
        ["prod(pgl2:3,pgl2:3)", "prod(pgl2:3,pgl2:5)"].iter().try_for_each(|s| brauer_quotient_at_reflection(s))
    })));
    out.push(("projectives vanish", Box::new(projective_samples)));
    out.push(("loewy/socle duality", Box::new(|| duality_samples()?.iter().try_for_each(loewy_socle_duality))));
    out.push(("table orthogonality", Box::new(|| ["pgl2:5", "psl2:9", "a:7", "d:16"].iter().try_for_each(|s| table_orthogonality(s)))));
    out.push(("gendec shape", Box::new(gendec_shape_samples)));
    out.push(("galois twist", Box::new(|| galois_twist_invariance("pgl2:7", GenDecCase::F, 4))));
    out.push(("section count", Box::new(|| ["d:16", "pgl2:7", "psl2:17", "a:7"].iter().try_for_each(|s| section_count(s)))));
    out
}

pub fn fusion_labels() -> Check {
    use FusionLabel::*;
    let cases = [
        ("d:8", Case1Nilpotent),
        ("d:16", Case1Nilpotent),
        ("d:32", Case1Nilpotent),
        ("psl2:7", Case3Psl),
        ("psl2:9", Case3Psl),
        ("psl2:17", Case3Psl),
        ("a:7", Case3Psl),
        ("pgl2:3", Case2Pgl),
        ("pgl2:5", Case2Pgl),
        ("pgl2:7", Case2Pgl),
        ("pgl2:9", Case2Pgl),
    ];
    cases.iter().try_for_each(|(s, l)| fusion_label(s, *l))
}

fn representation_samples() -> Check {
    let g = group("pgl2:5")?;
    let m = perm_module(&g, &sylow2(&g).map_err(err)?, FieldSpec::GF2).map_err(err)?.module;
    let words: Vec<(Vec<usize>, Vec<usize>)> = (0..50)
        .map(|i| {
            let k = g.generators().len();
            let w1 = (0..(i % 7 + 1)).map(|j| (i * 3 + j * 5) % k).collect();
            let w2 = (0..(i % 5 + 2)).map(|j| (i + j * 7 + 1) % k).collect();
            (w1, w2)
        })
        .collect();
    representation_property(&m, &words)
}

fn fixed_point_samples() -> Check {
    let g = group("pgl2:5")?;
    let f = frame(&g)?;
    let p = sylow2(&g).map_err(err)?;
    let t = g.subgroup("<t>", vec![f.t.clone()]).map_err(err)?;
    for q in p_subgroup_classes(&g, &p).map_err(err)? {
        fixed_points_count_orbits(&g, &t, &q)?;
        fixed_points_count_orbits(&g, &p, &q)?;
    }
    Ok(())
}

/// All normal pairs `R ◁ Q` among the diagonal subgroups of `ΔP`.
pub fn brauer_transitivity_samples(spec: &str) -> Check {
    let inst = product_instance(spec)?;
    let f = &inst.diag_frame;
    let sub = |gens: Vec<Permutation>| inst.g.subgroup("ΔQ", gens).map_err(err);
    let z = sub(vec![f.z.clone()])?;
    let zt = sub(vec![f.z.clone(), f.t.clone()])?;
    let s = sub(vec![f.s.clone()])?;
    let p = sub(vec![f.s.clone(), f.t.clone()])?;
    for (r, q) in [(&z, &zt), (&z, &p), (&zt, &p), (&s, &p), (&z, &s)] {
        brauer_transitivity(&inst.bimodule, r, q)?;
    }
    Ok(())
}

fn scott_duality_samples() -> Check {
    let l27 = group("psl2:7")?;
    scott_self_duality(&l27, &dbl_core::groups::borel_subgroup(&l27).map_err(err)?)?;
    let s4 = group("pgl2:3")?;
    scott_self_duality(&s4, &dbl_core::groups::borel_subgroup(&s4).map_err(err)?)?;
    let s5 = group("pgl2:5")?;
    let f = frame(&s5)?;
    scott_self_duality(&s5, &s5.subgroup("<t>", vec![f.t.clone()]).map_err(err)?)?;
    let inst = product_instance("prod(pgl2:3,pgl2:3)")?;
    scott_self_duality(&inst.g, &inst.diag)
}

fn projective_samples() -> Check {
    let s4 = group("pgl2:3")?;
    let p = sylow2(&s4).map_err(err)?;
    let borel = dbl_core::groups::borel_subgroup(&s4).map_err(err)?;
    projectives_vanish(&perm_module(&s4, &borel, FieldSpec::GF2).map_err(err)?.module, &p)?;
    let l27 = group("psl2:7")?;
    let p = sylow2(&l27).map_err(err)?;
    let one = l27.subgroup("1", vec![]).map_err(err)?;
    projectives_vanish(&scott_module(&l27, &one, FieldSpec::GF2).map_err(err)?.module, &p)
}

fn gendec_shape_samples() -> Check {
    use GenDecCase::*;
    let cases: [(GenDecCase, u32, Option<u64>); 10] = [
        (A, 3, None),
        (A, 5, None),
        (B, 3, None),
        (C, 3, Some(9)),
        (C, 4, Some(17)),
        (D, 3, Some(7)),
        (E, 3, Some(5)),
        (E, 4, Some(9)),
        (F, 3, Some(3)),
        (F, 4, Some(7)),
    ];
    cases.iter().try_for_each(|&(c, n, q)| gendec_shape(c, n, q))
}
