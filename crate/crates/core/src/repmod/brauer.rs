use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{analyze_endomorphisms, hom, EndAnalysis, GModule, RepError, Result};
use crate::gf2::FFMatrix;
use crate::groups::{FiniteGroup, Permutation, SylowDihedralFrame};

fn is_two_group(q: &FiniteGroup) -> Result<()> {
    let n = q.enumerate()?;
    if !n.is_power_of_two() {
        return Err(RepError::NotPSubgroup(n));
    }
    Ok(())
}

/// `M^Q` as echelon basis rows.
pub fn fixed_points(m: &GModule, q: &FiniteGroup) -> Result<FFMatrix> {
    let field = m.field();
    let id = FFMatrix::identity(field, m.dim());
    let mut stacked: Option<FFMatrix> = None;
    for g in q.generators() {
        let a = m.action(g)?.add(&id)?;
        stacked = Some(match stacked {
            None => a,
            Some(s) => s.hstack(&a)?,
        });
    }
    Ok(match stacked {
        None => id,
        Some(s) => s.left_nullspace().rref().matrix,
    })
}

/// Right coset representatives of `r` in `q` (least element of each coset).
fn coset_reps(r: &FiniteGroup, q: &FiniteGroup) -> Vec<Permutation> {
    let rs: Vec<Permutation> = r.elements().collect();
    let n = q.order();
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let xp = q.element(x);
        for h in &rs {
            seen[q.index_of(&h.mul(&xp)).expect("subgroup")] = true;
        }
        reps.push(xp);
    }
    reps
}

/// `Tr_R^Q(M^R)` as echelon basis rows.
pub fn relative_trace(m: &GModule, r: &FiniteGroup, q: &FiniteGroup) -> Result<FFMatrix> {
    if !r.is_subgroup_of(q) {
        return Err(RepError::NotASubgroup(format!("{} in {}", r.name(), q.name())));
    }
    q.enumerate()?;
    r.enumerate()?;
    let field = m.field();
    let mut trace = FFMatrix::zeros(field, m.dim(), m.dim());
    for x in coset_reps(r, q) {
        trace = trace.add(&m.action(&x)?)?;
    }
    let fixed = fixed_points(m, r)?;
    Ok(fixed.mul(&trace)?.row_space())
}

fn generated(degree: usize, gens: Vec<Permutation>) -> FiniteGroup {
    FiniteGroup::new("", degree, gens).expect("degree")
}

/// Subgroups of index 2 in a 2-group.
pub(crate) fn maximal_subgroups(q: &FiniteGroup) -> Vec<FiniteGroup> {
    let els: Vec<Permutation> = q.elements().collect();
    if els.len() <= 1 {
        return Vec::new();
    }
    let mut frattini_gens: BTreeSet<Permutation> = BTreeSet::new();
    for a in &els {
        frattini_gens.insert(a.mul(a));
        for b in &els {
            frattini_gens.insert(a.inverse().mul(&b.inverse()).mul(a).mul(b));
        }
    }
    let frattini: Vec<Permutation> = frattini_gens.into_iter().filter(|g| !g.is_identity()).collect();
    let mut basis: Vec<Permutation> = Vec::new();
    let mut cur = generated(q.degree(), frattini.clone());
    for x in &els {
        if !cur.contains(x) {
            basis.push(x.clone());
            let mut gens = frattini.clone();
            gens.extend(basis.iter().cloned());
            cur = generated(q.degree(), gens);
        }
    }
    let r = basis.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << r) {
        let pivot = mask.trailing_zeros() as usize;
        let mut gens = frattini.clone();
        for (i, x) in basis.iter().enumerate() {
            if mask >> i & 1 == 0 {
                gens.push(x.clone());
            } else if i != pivot {
                gens.push(x.mul(&basis[pivot]));
            }
        }
        out.push(FiniteGroup::new(format!("{}#{mask}", q.name()), q.degree(), gens).expect("degree"));
    }
    out
}

/// The Brauer construction `M(Q) = M^Q / Σ_{R<Q} Tr_R^Q(M^R)` as a module
/// for `N_G(Q)`. Only the maximal subgroups `R` are summed.
#[derive(Clone, Debug)]
pub struct BrauerQuotient {
    pub module: GModule,
    pub normalizer: Arc<FiniteGroup>,
    pub fixed_dim: usize,
    pub trace_dim: usize,
}

pub fn brauer_quotient(m: &GModule, q: &FiniteGroup) -> Result<BrauerQuotient> {
    is_two_group(q)?;
    let g = m.group();
    if !q.is_subgroup_of(g) {
        return Err(RepError::NotASubgroup(q.name().to_string()));
    }
    let normalizer = if q.order() == 1 {
        g.clone()
    } else {
        Arc::new(g.normalizer(q)?)
    };
    let fixed = fixed_points(m, q)?;
    let mut traces = FFMatrix::zeros(m.field(), 0, m.dim());
    for r in maximal_subgroups(q) {
        traces = traces.vstack(&relative_trace(m, &r, q)?)?;
    }
    let traces = traces.row_space();
    let over_n = if Arc::ptr_eq(&normalizer, g) {
        m.clone()
    } else {
        m.restrict(normalizer.clone())?
    };
    let (fixed_module, basis) = over_n.submodule(&fixed)?;
    let module = if traces.rows() == 0 {
        fixed_module
    } else {
        let coords = basis.solve_left(&traces)?;
        fixed_module.quotient(&coords)?.0
    };
    Ok(BrauerQuotient {
        module,
        normalizer,
        fixed_dim: fixed.rows(),
        trace_dim: traces.rows(),
    })
}

/// Subgroups of `p` up to `G`-conjugacy, sorted by order and then by their
/// sorted element lists; each class is represented by its least member.
pub fn p_subgroup_classes(g: &FiniteGroup, p: &FiniteGroup) -> Result<Vec<FiniteGroup>> {
    let n = p.enumerate()?;
    if n > 64 {
        return Err(RepError::CapExceeded(format!("subgroup lattice of a group of order {n}")));
    }
    let els: Vec<Permutation> = p.elements().collect();
    let mul: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| p.mul_index(i, j)).collect()).collect();
    let close = |mut mask: u64| -> u64 {
        mask |= 1;
        loop {
            let mut next = mask;
            for i in 0..n {
                if mask >> i & 1 == 0 {
                    continue;
                }
                for j in 0..n {
                    if mask >> j & 1 == 1 {
                        next |= 1 << mul[i][j];
                    }
                }
            }
            if next == mask {
                return mask;
            }
            mask = next;
        }
    };
    let cyclic: Vec<u64> = (0..n).map(|i| close(1 << i)).collect();
    let mut all: BTreeSet<u64> = cyclic.iter().copied().collect();
    let mut frontier: Vec<u64> = all.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        for &c in &cyclic {
            let j = close(a | c);
            if all.insert(j) {
                frontier.push(j);
            }
        }
    }
    let members = |mask: u64| -> Vec<usize> { (0..n).filter(|i| mask >> i & 1 == 1).collect() };
    let mut subs: Vec<(usize, Vec<usize>, u64)> = all
        .into_iter()
        .map(|m| (m.count_ones() as usize, members(m), m))
        .collect();
    subs.sort();
    let index_of = |x: &Permutation| els.binary_search(x).ok();
    let small_gens = |mask: u64| -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = 1u64;
        for i in members(mask) {
            if cur >> i & 1 == 0 {
                gens.push(i);
                cur = close(cur | 1 << i);
            }
        }
        gens
    };
    let mut class = vec![usize::MAX; subs.len()];
    let mut reps = Vec::new();
    for a in 0..subs.len() {
        if class[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        class[a] = id;
        let gens = small_gens(subs[a].2);
        let gen_perms: Vec<Permutation> = gens.iter().map(|&i| els[i].clone()).collect();
        let pending = (a + 1..subs.len()).any(|b| class[b] == usize::MAX && subs[b].0 == subs[a].0);
        if pending {
            for x in g.elements() {
                let imgs: Option<Vec<usize>> = gen_perms.iter().map(|h| index_of(&h.conjugate_by(&x))).collect();
                let Some(imgs) = imgs else { continue };
                let mask = close(imgs.iter().fold(0u64, |acc, &i| acc | 1 << i));
                if let Some(b) = subs.iter().position(|s| s.2 == mask) {
                    class[b] = id;
                }
            }
        }
        let name = format!("Q{}[{}]", subs[a].0, id);
        reps.push(FiniteGroup::new(name, p.degree(), gen_perms).expect("degree"));
    }
    Ok(reps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditVerdict {
    Zero,
    Indecomposable,
    Decomposable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub order: usize,
    pub generators: Vec<String>,
    pub dim: usize,
    pub verdict: AuditVerdict,
}

fn verdict_of(m: &GModule) -> Result<AuditVerdict> {
    if m.dim() == 0 {
        return Ok(AuditVerdict::Zero);
    }
    let end = hom(m, m)?;
    Ok(match analyze_endomorphisms(&end)? {
        EndAnalysis::Local { .. } => AuditVerdict::Indecomposable,
        EndAnalysis::Split { .. } => AuditVerdict::Decomposable,
    })
}

/// For each class of subgroups `Q ≤ P`, the dimension of `M(Q)` and whether
/// its restriction to `Q·C_G(Q)` is zero, indecomposable or decomposable.
pub fn brauer_audit(m: &GModule, frame: &SylowDihedralFrame) -> Result<Vec<AuditRow>> {
    let g = m.group();
    let mut rows = Vec::new();
    for q in p_subgroup_classes(g, &frame.p)? {
        let bq = brauer_quotient(m, &q)?;
        let verdict = if bq.module.dim() == 0 {
            AuditVerdict::Zero
        } else if q.order() == 1 {
            verdict_of(&bq.module)?
        } else {
            let c = g.centralizer_of(&q)?;
            let mut gens = q.generators().to_vec();
            gens.extend(c.generators().iter().cloned());
            let qc = Arc::new(bq.normalizer.subgroup(format!("QC({})", q.name()), gens)?);
            verdict_of(&bq.module.restrict(qc)?)?
        };
        rows.push(AuditRow {
            order: q.order(),
            generators: q.generators().iter().map(|x| x.to_string()).collect(),
            dim: bq.module.dim(),
            verdict,
        });
    }
    Ok(rows)
}
