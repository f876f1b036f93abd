use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::generate_from_members;
use super::{FiniteGroup, GroupError, Permutation};

/// Presentation data `P = ⟨s, t | s^{2^{n-1}} = t² = 1, tst = s⁻¹⟩` of a
/// Sylow 2-subgroup, with `z = s^{2^{n-2}}` generating the centre.
#[derive(Clone, Debug)]
pub struct SylowDihedralFrame {
    pub p: Arc<FiniteGroup>,
    pub s: Permutation,
    pub t: Permutation,
    pub z: Permutation,
    pub n: u32,
}

impl SylowDihedralFrame {
    pub fn order(&self) -> usize {
        1 << self.n
    }

    /// The involutions of P: `z` first, then `s^i t` for `i = 0..2^{n-1}`.
    pub fn involutions(&self) -> Vec<Permutation> {
        let m = 1i64 << (self.n - 1);
        let mut out = vec![self.z.clone()];
        for i in 0..m {
            let r = self.s.pow(i).mul(&self.t);
            if r != self.z {
                out.push(r);
            }
        }
        out
    }

    pub fn relations_hold(&self) -> bool {
        let m = 1i64 << (self.n - 1);
        self.s.pow(m).is_identity()
            && self.s.order() == m as u64
            && self.t.order() == 2
            && self.t.mul(&self.s).mul(&self.t) == self.s.inverse()
            && self.z == self.s.pow(m / 2)
    }

    /// Conjugate the whole frame by `g`.
    pub fn conjugate(&self, g: &Permutation) -> SylowDihedralFrame {
        let s = self.s.conjugate_by(g);
        let t = self.t.conjugate_by(g);
        let z = self.z.conjugate_by(g);
        let p = FiniteGroup::new(self.p.name(), self.p.degree(), vec![s.clone(), t.clone()]).expect("degree");
        SylowDihedralFrame {
            p: Arc::new(p),
            s,
            t,
            z,
            n: self.n,
        }
    }

    /// The frame with `t` replaced by `st` (swaps the two reflection classes).
    pub fn swap_reflections(&self) -> SylowDihedralFrame {
        SylowDihedralFrame {
            p: self.p.clone(),
            s: self.s.clone(),
            t: self.s.mul(&self.t),
            z: self.z.clone(),
            n: self.n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FusionLabel {
    #[serde(rename = "CASE1_NILPOTENT")]
    Case1Nilpotent,
    #[serde(rename = "CASE2_PGL")]
    Case2Pgl,
    #[serde(rename = "CASE3_PSL")]
    Case3Psl,
}

impl FusionLabel {
    pub fn involution_class_count(self) -> usize {
        match self {
            FusionLabel::Case1Nilpotent => 3,
            FusionLabel::Case2Pgl => 2,
            FusionLabel::Case3Psl => 1,
        }
    }

    /// Number of simple modules in the principal block.
    pub fn predicted_l(self) -> usize {
        4 - self.involution_class_count()
    }

    pub fn from_count(count: usize) -> Option<Self> {
        match count {
            3 => Some(FusionLabel::Case1Nilpotent),
            2 => Some(FusionLabel::Case2Pgl),
            1 => Some(FusionLabel::Case3Psl),
            _ => None,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            FusionLabel::Case1Nilpotent => "CASE1",
            FusionLabel::Case2Pgl => "CASE2",
            FusionLabel::Case3Psl => "CASE3",
        }
    }
}

impl fmt::Display for FusionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FusionLabel::Case1Nilpotent => "CASE1_NILPOTENT",
            FusionLabel::Case2Pgl => "CASE2_PGL",
            FusionLabel::Case3Psl => "CASE3_PSL",
        })
    }
}

impl std::str::FromStr for FusionLabel {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "CASE1" | "CASE1_NILPOTENT" => Ok(FusionLabel::Case1Nilpotent),
            "CASE2" | "CASE2_PGL" => Ok(FusionLabel::Case2Pgl),
            "CASE3" | "CASE3_PSL" => Ok(FusionLabel::Case3Psl),
            _ => Err(GroupError::Parse(format!("unknown fusion case {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionCase {
    pub label: FusionLabel,
    pub involution_class_count: usize,
    pub predicted_l: usize,
    /// In the two-class case, whether `t` (rather than `st`) is fused to `z`.
    pub t_fused_to_z: bool,
}

/// A Sylow 2-subgroup, grown greedily inside successive normalisers.
pub fn sylow2(g: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = g.enumerate()?;
    let target = 1usize << order.trailing_zeros();
    let mut p = FiniteGroup::new("P", g.degree(), vec![])?;
    while p.order() < target {
        let members: Vec<Permutation> = g
            .elements()
            .filter(|x| !p.contains(x))
            .filter(|x| p.contains(&x.mul(x)))
            .filter(|x| p.generators().iter().all(|h| p.contains(&h.conjugate_by(x))))
            .take(1)
            .collect();
        let x = members.into_iter().next().ok_or_else(|| {
            GroupError::Internal(format!("Sylow growth stalled at order {} in {}", p.order(), g.name()))
        })?;
        let mut gens = p.generators().to_vec();
        gens.push(x);
        p = FiniteGroup::new("P", g.degree(), gens)?;
    }
    let members: Vec<Permutation> = p.elements().collect();
    Ok(generate_from_members("P".into(), g.degree(), &members))
}

/// Dihedral frame of a Sylow 2-subgroup of order at least 8.
pub fn sylow2_dihedral(g: &FiniteGroup) -> Result<SylowDihedralFrame, GroupError> {
    sylow2_dihedral_with(g, false)
}

/// As [`sylow2_dihedral`], optionally accepting a Klein-four Sylow (n = 2).
pub fn sylow2_dihedral_with(g: &FiniteGroup, allow_klein: bool) -> Result<SylowDihedralFrame, GroupError> {
    let p = sylow2(g)?;
    dihedral_frame(&p, allow_klein)
}

/// Lexicographically least `(s, t)` presenting the 2-group `p` as dihedral.
pub fn dihedral_frame(p: &FiniteGroup, allow_klein: bool) -> Result<SylowDihedralFrame, GroupError> {
    let order = p.order();
    if !order.is_power_of_two() || order < 4 {
        return Err(GroupError::NotDihedralSylow(format!("2-group of order {order}")));
    }
    let n = order.trailing_zeros();
    if n == 2 && !allow_klein {
        return Err(GroupError::NotDihedralSylow("Sylow 2-subgroup has order 4".into()));
    }
    let m = 1u64 << (n - 1);
    for si in 0..order {
        let s = p.element(si);
        if s.order() != m {
            continue;
        }
        let cyclic = FiniteGroup::new("", p.degree(), vec![s.clone()])?;
        let sinv = s.inverse();
        for ti in 0..order {
            let t = p.element(ti);
            if t.order() == 2 && !cyclic.contains(&t) && t.mul(&s).mul(&t) == sinv {
                let z = s.pow(m as i64 / 2);
                let frame = SylowDihedralFrame {
                    p: Arc::new(FiniteGroup::new("P", p.degree(), vec![s.clone(), t.clone()])?),
                    s,
                    t,
                    z,
                    n,
                };
                return Ok(frame);
            }
        }
    }
    let kind = if p.classes().len() == order { "abelian" } else { "non-dihedral" };
    Err(GroupError::NotDihedralSylow(format!("{kind} 2-group of order {order}")))
}

/// Count G-classes of involutions of P and classify the fusion system.
pub fn involution_fusion(g: &FiniteGroup, frame: &SylowDihedralFrame) -> Result<FusionCase, GroupError> {
    let invs = frame.involutions();
    let mut classes: Vec<usize> = invs.iter().map(|x| g.class_of(x)).collect::<Result<_, _>>()?;
    let zc = classes[0];
    let t_fused_to_z = g.class_of(&frame.t)? == zc;
    classes.sort_unstable();
    classes.dedup();
    let count = classes.len();
    let label = FusionLabel::from_count(count).ok_or(GroupError::InconsistentCount(count))?;
    Ok(FusionCase {
        label,
        involution_class_count: count,
        predicted_l: label.predicted_l(),
        t_fused_to_z,
    })
}

/// Choose `t` so that, in the two-class case, `t` is the reflection fused to
/// `z` (the convention of the PGL₂ fusion system).
pub fn align_frame(g: &FiniteGroup, frame: &SylowDihedralFrame) -> Result<SylowDihedralFrame, GroupError> {
    let fc = involution_fusion(g, frame)?;
    if fc.label == FusionLabel::Case2Pgl && !fc.t_fused_to_z {
        Ok(frame.swap_reflections())
    } else {
        Ok(frame.clone())
    }
}

/// `ΔP = ⟨(s, s′), (t, t′)⟩` inside the direct product `prod`, whose factors
/// carry the two frames.
pub fn diagonal(
    prod: &FiniteGroup,
    left: &SylowDihedralFrame,
    right: &SylowDihedralFrame,
) -> Result<(FiniteGroup, SylowDihedralFrame), GroupError> {
    if left.s.order() != right.s.order() || left.n != right.n {
        return Err(GroupError::FrameMismatch(format!(
            "|s| = {} vs |s'| = {}",
            left.s.order(),
            right.s.order()
        )));
    }
    if prod.degree() != left.s.degree() + right.s.degree() {
        return Err(GroupError::FrameMismatch("frames do not match the product domain".into()));
    }
    let s = left.s.direct_sum(&right.s);
    let t = left.t.direct_sum(&right.t);
    let z = left.z.direct_sum(&right.z);
    let dp = prod.subgroup("ΔP", vec![s.clone(), t.clone()])?;
    let frame = SylowDihedralFrame {
        p: Arc::new(FiniteGroup::new("ΔP", prod.degree(), vec![s.clone(), t.clone()])?),
        s,
        t,
        z,
        n: left.n,
    };
    Ok((dp, frame))
}

/// Lift an element of a factor into the product.
pub fn embed_left(g: &Permutation, right_degree: usize) -> Permutation {
    g.direct_sum(&Permutation::identity(right_degree))
}

pub fn embed_right(g: &Permutation, left_degree: usize) -> Permutation {
    Permutation::identity(left_degree).direct_sum(g)
}
