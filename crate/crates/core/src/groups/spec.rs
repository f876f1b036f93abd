use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::ProductInfo;
use super::oddfield::{prime_power, OddField};
use super::{FiniteGroup, GroupError, Permutation};

/// Largest `q` accepted by [`construct`] for the projective families.
pub const MAX_Q: u64 = 81;

/// The groups of the corpus. `Dihedral { n }` has order `2^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Dihedral { n: u32 },
    Psl2 { q: u64 },
    Pgl2 { q: u64 },
    Alt { m: usize },
    Sym { m: usize },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            GroupSpec::Dihedral { n } if *n < 2 => Err(GroupError::DegenerateSpec(format!("dihedral needs n >= 2, got {n}"))),
            GroupSpec::Dihedral { n } if *n > 15 => Err(GroupError::UnsupportedParameter(format!("dihedral order 2^{n}"))),
            GroupSpec::Psl2 { q } | GroupSpec::Pgl2 { q } => {
                check_odd_q(*q)?;
                if *q > MAX_Q {
                    return Err(GroupError::UnsupportedParameter(format!("q = {q} > {MAX_Q}")));
                }
                Ok(())
            }
            GroupSpec::Alt { m } | GroupSpec::Sym { m } if *m < 2 || *m > 12 => {
                Err(GroupError::UnsupportedParameter(format!("degree m = {m} (need 2..=12)")))
            }
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, GroupSpec::Product(..))
    }
}

pub(crate) fn check_odd_q(q: u64) -> Result<(), GroupError> {
    match prime_power(q) {
        None => Err(GroupError::UnsupportedParameter(format!("q = {q} is not a prime power"))),
        Some((2, _)) => Err(GroupError::UnsupportedParameter(format!("q = {q} is even"))),
        Some(_) => Ok(()),
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Dihedral { n } => write!(f, "d:{}", 1u64 << n),
            GroupSpec::Psl2 { q } => write!(f, "psl2:{q}"),
            GroupSpec::Pgl2 { q } => write!(f, "pgl2:{q}"),
            GroupSpec::Alt { m } => write!(f, "a:{m}"),
            GroupSpec::Sym { m } => write!(f, "s:{m}"),
            GroupSpec::Product(a, b) => write!(f, "prod({a},{b})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// Grammar: `d:<order>` (order a power of two), `psl2:<q>`, `pgl2:<q>`,
    /// `a:<m>`, `s:<m>`, `prod(<spec>,<spec>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |why: &str| GroupError::Parse(format!("{s:?}: {why}"));
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0i32;
            let mut split = None;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(|| bad("product needs two components"))?;
            let a: GroupSpec = inner[..i].parse()?;
            let b: GroupSpec = inner[i + 1..].parse()?;
            return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
        }
        let (family, param) = s.split_once(':').ok_or_else(|| bad("expected <family>:<parameter>"))?;
        let value: u64 = param.trim().parse().map_err(|_| bad("parameter is not a number"))?;
        let spec = match family.trim() {
            "d" => {
                if value < 4 || !value.is_power_of_two() {
                    return Err(GroupError::DegenerateSpec(format!(
                        "dihedral order {value} must be a power of two >= 4"
                    )));
                }
                GroupSpec::Dihedral {
                    n: value.trailing_zeros(),
                }
            }
            "psl2" => GroupSpec::Psl2 { q: value },
            "pgl2" => GroupSpec::Pgl2 { q: value },
            "a" => GroupSpec::Alt { m: value as usize },
            "s" => GroupSpec::Sym { m: value as usize },
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

/// Build the permutation group described by `spec`.
pub fn construct(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    spec.validate()?;
    let g = match spec {
        GroupSpec::Dihedral { n } => dihedral(*n),
        GroupSpec::Psl2 { q } => projective(*q, false)?,
        GroupSpec::Pgl2 { q } => projective(*q, true)?,
        GroupSpec::Alt { m } => alternating(*m),
        GroupSpec::Sym { m } => symmetric(*m),
        GroupSpec::Product(a, b) => {
            let ga = Arc::new(construct(a)?);
            let gb = Arc::new(construct(b)?);
            return Ok(direct_product(ga, gb).with_spec(spec.clone()));
        }
    };
    Ok(g.with_spec(spec.clone()))
}

pub fn construct_str(text: &str) -> Result<FiniteGroup, GroupError> {
    construct(&text.parse()?)
}

fn dihedral(n: u32) -> FiniteGroup {
    if n == 2 {
        let a = Permutation::parse("(0,1)(2,3)", 4).expect("valid");
        let b = Permutation::parse("(0,2)(1,3)", 4).expect("valid");
        return FiniteGroup::new("d:4", 4, vec![a, b]).expect("degree");
    }
    let m = 1usize << (n - 1);
    let rot = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect()).expect("bijection");
    let refl = Permutation::from_images((0..m).map(|i| (m - i) % m).collect()).expect("bijection");
    FiniteGroup::new(format!("d:{}", 2 * m), m, vec![rot, refl]).expect("degree")
}

fn alternating(m: usize) -> FiniteGroup {
    let name = format!("a:{m}");
    if m < 3 {
        return FiniteGroup::new(name, m, vec![]).expect("degree");
    }
    let three = Permutation::from_cycles(m, &[vec![0, 1, 2]]).expect("valid");
    let long: Vec<usize> = if m % 2 == 1 { (0..m).collect() } else { (1..m).collect() };
    let mut gens = vec![three];
    if m > 3 {
        gens.push(Permutation::from_cycles(m, &[long]).expect("valid"));
    }
    FiniteGroup::new(name, m, gens).expect("degree")
}

fn symmetric(m: usize) -> FiniteGroup {
    let swap = Permutation::from_cycles(m, &[vec![0, 1]]).expect("valid");
    let long = Permutation::from_cycles(m, &[(0..m).collect()]).expect("valid");
    FiniteGroup::new(format!("s:{m}"), m, vec![swap, long]).expect("degree")
}

/// A Möbius map `x ↦ (a x + b) / (c x + d)` as a permutation of the projective
/// line, with point 0 = ∞ and point `1 + x` for the field element labelled `x`.
pub(crate) fn mobius(f: &OddField, a: u32, b: u32, c: u32, d: u32) -> Permutation {
    let q = f.order();
    let mut images = vec![0usize; q + 1];
    // ∞ ↦ a / c
    images[0] = if c == 0 { 0 } else { 1 + f.mul(a, f.inv(c)) as usize };
    for x in 0..q as u32 {
        let num = f.add(f.mul(a, x), b);
        let den = f.add(f.mul(c, x), d);
        images[1 + x as usize] = if den == 0 { 0 } else { 1 + f.mul(num, f.inv(den)) as usize };
    }
    Permutation::from_images(images).expect("Möbius maps are bijective")
}

/// Generators `x ↦ x + 1`, `x ↦ λ x` and `x ↦ -1/x`, with `λ = ω²` for
/// PSL₂(q) and `λ = ω` for PGL₂(q), `ω` the least primitive element.
pub(crate) fn projective_generators(f: &OddField, pgl: bool) -> Vec<Permutation> {
    let w = f.primitive();
    let lambda = if pgl { w } else { f.mul(w, w) };
    let one = 1;
    let t = mobius(f, one, one, 0, one);
    let d = mobius(f, lambda, 0, 0, one);
    let minus_one = f.neg(one);
    let inv = mobius(f, 0, minus_one, one, 0);
    vec![t, d, inv]
}

fn projective(q: u64, pgl: bool) -> Result<FiniteGroup, GroupError> {
    let f = OddField::new(q)?;
    let name = if pgl { format!("pgl2:{q}") } else { format!("psl2:{q}") };
    FiniteGroup::new(name, q as usize + 1, projective_generators(&f, pgl))
}

/// The subgroup 𝔹(q) of `x ↦ a² x + b`, of order q(q−1)/2, inside a group
/// built from `psl2:q` or `pgl2:q`.
pub fn borel_subgroup(g: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let q = match g.spec() {
        Some(GroupSpec::Psl2 { q }) | Some(GroupSpec::Pgl2 { q }) => *q,
        _ => return Err(GroupError::WrongFamily(g.name().to_string())),
    };
    let f = OddField::new(q)?;
    let gens = projective_generators(&f, false);
    g.subgroup(format!("B({q})"), gens[..2].to_vec())
}

/// The copy of PSL₂(q) inside `pgl2:q` (or the group itself for `psl2:q`).
pub fn psl2_subgroup(g: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let q = match g.spec() {
        Some(GroupSpec::Psl2 { q }) | Some(GroupSpec::Pgl2 { q }) => *q,
        _ => return Err(GroupError::WrongFamily(g.name().to_string())),
    };
    let f = OddField::new(q)?;
    g.subgroup(format!("PSL2({q})"), projective_generators(&f, false))
}

/// `G × G′` on the disjoint union of the domains.
pub fn direct_product(a: Arc<FiniteGroup>, b: Arc<FiniteGroup>) -> FiniteGroup {
    let (da, db) = (a.degree(), b.degree());
    let ida = Permutation::identity(da);
    let idb = Permutation::identity(db);
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.direct_sum(&idb)).collect();
    gens.extend(b.generators().iter().map(|g| ida.direct_sum(g)));
    let name = format!("prod({},{})", a.name(), b.name());
    FiniteGroup::new(name, da + db, gens)
        .expect("degree")
        .with_product(ProductInfo { left: a, right: b })
}
