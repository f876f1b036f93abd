use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{GroupError, GroupSpec, Permutation};
use crate::config;

/// Sorted element list with a breadth-first spanning tree over generator
/// words: element `i` equals `element(parent[i]) * generator(via[i])`.
#[derive(Debug)]
struct ElementTable {
    degree: usize,
    flat: Vec<u16>,
    parent: Vec<u32>,
    via: Vec<u16>,
    /// Elements in breadth-first order (parents precede children).
    bfs: Vec<u32>,
}

impl ElementTable {
    fn len(&self) -> usize {
        self.parent.len()
    }

    fn slice(&self, i: usize) -> &[u16] {
        &self.flat[i * self.degree..(i + 1) * self.degree]
    }

    fn find(&self, images: &[u16]) -> Option<usize> {
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.slice(mid).cmp(images) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Index of the representative (the least element of the class).
    pub rep: usize,
    pub size: usize,
    pub element_order: u64,
}

/// Which factor of a direct product a group is, and where its points live.
#[derive(Clone, Debug)]
pub struct ProductInfo {
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
}

/// A permutation group given by generators, with lazily built element table
/// and conjugacy classes.
pub struct FiniteGroup {
    name: String,
    spec: Option<GroupSpec>,
    degree: usize,
    generators: Vec<Permutation>,
    product: Option<ProductInfo>,
    table: OnceLock<Result<ElementTable, GroupError>>,
    classes: OnceLock<(Vec<ConjugacyClass>, Vec<u32>)>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::NotAPermutation(format!(
                    "generator {g} has degree {} not {degree}",
                    g.degree()
                )));
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            spec: None,
            degree,
            generators,
            product: None,
            table: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub(crate) fn with_spec(mut self, spec: GroupSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub(crate) fn with_product(mut self, info: ProductInfo) -> Self {
        self.product = Some(info);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn product_info(&self) -> Option<&ProductInfo> {
        self.product.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn table(&self) -> Result<&ElementTable, GroupError> {
        self.table
            .get_or_init(|| build_table(self.degree, &self.generators, config::limits().max_group_order))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn table_ok(&self) -> &ElementTable {
        self.table().expect("element table")
    }

    /// Enumerate the elements (if not done yet), failing when the group is
    /// larger than the configured cap.
    pub fn enumerate(&self) -> Result<usize, GroupError> {
        Ok(self.table()?.len())
    }

    /// Group order. Panics if the group exceeds the element cap; use
    /// [`FiniteGroup::enumerate`] to handle that case.
    pub fn order(&self) -> usize {
        self.table_ok().len()
    }

    pub fn element(&self, i: usize) -> Permutation {
        Permutation::from_u16(self.table_ok().slice(i).to_vec())
    }

    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.degree {
            return None;
        }
        self.table_ok().find(g.raw())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index_of(g).is_some()
    }

    /// Generator indices whose product (left to right) is element `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let t = self.table_ok();
        let mut w = Vec::new();
        let mut cur = i;
        while cur != 0 {
            w.push(t.via[cur] as usize);
            cur = t.parent[cur] as usize;
        }
        w.reverse();
        w
    }

    pub fn word_of(&self, g: &Permutation) -> Result<Vec<usize>, GroupError> {
        let i = self.index_of(g).ok_or_else(|| GroupError::ElementNotInGroup(g.to_string()))?;
        Ok(self.word(i))
    }

    /// Breadth-first order of element indices together with the
    /// `(parent, generator)` pair producing each (the identity has none).
    pub fn spanning_tree(&self) -> Vec<(usize, Option<(usize, usize)>)> {
        let t = self.table_ok();
        t.bfs
            .iter()
            .map(|&i| {
                let i = i as usize;
                if i == 0 {
                    (0, None)
                } else {
                    (i, Some((t.parent[i] as usize, t.via[i] as usize)))
                }
            })
            .collect()
    }

    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        let t = self.table_ok();
        let (a, b) = (t.slice(i), t.slice(j));
        let prod: Vec<u16> = a.iter().map(|&x| b[x as usize]).collect();
        t.find(&prod).expect("closed under multiplication")
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.index_of(&self.element(i).inverse()).expect("closed under inverses")
    }

    fn compute_classes(&self) -> (Vec<ConjugacyClass>, Vec<u32>) {
        let n = self.order();
        let t = self.table_ok();
        let gens: Vec<(Permutation, Permutation)> = self
            .generators
            .iter()
            .map(|g| (g.inverse(), g.clone()))
            .collect();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            let mut queue = vec![start];
            let mut size = 0;
            while let Some(x) = queue.pop() {
                size += 1;
                let xs = t.slice(x);
                for (ginv, g) in &gens {
                    // g⁻¹ x g
                    let conj: Vec<u16> = (0..self.degree)
                        .map(|p| g.raw()[xs[ginv.apply(p)] as usize])
                        .collect();
                    let y = t.find(&conj).expect("closed under conjugation");
                    if class_of[y] == u32::MAX {
                        class_of[y] = id;
                        queue.push(y);
                    }
                }
            }
            classes.push(ConjugacyClass {
                rep: start,
                size,
                element_order: self.element(start).order(),
            });
        }
        // Sort by element order, then representative; relabel.
        let mut idx: Vec<usize> = (0..classes.len()).collect();
        idx.sort_by_key(|&i| (classes[i].element_order, classes[i].rep));
        let mut relabel = vec![0u32; classes.len()];
        for (new, &old) in idx.iter().enumerate() {
            relabel[old] = new as u32;
        }
        let sorted = idx.iter().map(|&i| classes[i].clone()).collect();
        for c in class_of.iter_mut() {
            *c = relabel[*c as usize];
        }
        (sorted, class_of)
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes.get_or_init(|| self.compute_classes()).0
    }

    pub fn class_index(&self, i: usize) -> usize {
        self.classes.get_or_init(|| self.compute_classes()).1[i] as usize
    }

    pub fn class_of(&self, g: &Permutation) -> Result<usize, GroupError> {
        let i = self.index_of(g).ok_or_else(|| GroupError::ElementNotInGroup(g.to_string()))?;
        Ok(self.class_index(i))
    }

    pub fn are_conjugate(&self, a: &Permutation, b: &Permutation) -> Result<bool, GroupError> {
        Ok(self.class_of(a)? == self.class_of(b)?)
    }

    /// Subgroup generated by `gens` (same domain).
    pub fn subgroup(&self, name: impl Into<String>, gens: Vec<Permutation>) -> Result<FiniteGroup, GroupError> {
        for g in &gens {
            if !self.contains(g) {
                return Err(GroupError::ElementNotInGroup(g.to_string()));
            }
        }
        FiniteGroup::new(name, self.degree, gens)
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    fn check_filter_cap(&self) -> Result<(), GroupError> {
        let cap = config::limits().max_filter_order;
        if self.order() > cap {
            return Err(GroupError::CapExceeded(format!(
                "{} has order {} > filter cap {cap}",
                self.name,
                self.order()
            )));
        }
        Ok(())
    }

    /// Subgroup of elements satisfying `pred`, which must define a subgroup.
    /// A generating set is chosen greedily in element order.
    pub fn filter_subgroup(
        &self,
        name: impl Into<String>,
        pred: impl Fn(&Permutation) -> bool,
    ) -> Result<FiniteGroup, GroupError> {
        self.check_filter_cap()?;
        let members: Vec<Permutation> = self.elements().filter(|g| pred(g)).collect();
        Ok(generate_from_members(name.into(), self.degree, &members))
    }

    pub fn centralizer(&self, g: &Permutation) -> Result<FiniteGroup, GroupError> {
        if !self.contains(g) {
            return Err(GroupError::ElementNotInGroup(g.to_string()));
        }
        self.filter_subgroup(format!("C({g})"), |x| x.commutes_with(g))
    }

    /// Centraliser of a subgroup (elements commuting with all its generators).
    pub fn centralizer_of(&self, s: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        self.filter_subgroup(format!("C({})", s.name()), |x| s.generators().iter().all(|g| x.commutes_with(g)))
    }

    pub fn normalizer(&self, s: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        if !s.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup(s.name().to_string()));
        }
        s.enumerate()?;
        self.filter_subgroup(format!("N({})", s.name()), |x| {
            s.generators().iter().all(|g| s.contains(&g.conjugate_by(x)))
        })
    }

    /// Elements as a set, for subgroup comparisons.
    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        self.order() == other.order() && other.generators.iter().all(|g| self.contains(g))
    }

    /// Orbits of the group on its domain, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn exponent(&self) -> u64 {
        self.classes()
            .iter()
            .fold(1, |acc, c| super::perm::lcm(acc, c.element_order))
    }

    /// Whether the group is dihedral of order `2m` (m ≥ 2; Klein four for m = 2).
    pub fn is_dihedral(&self) -> bool {
        let n = self.order();
        if n < 4 || n % 2 == 1 {
            return false;
        }
        let m = (n / 2) as u64;
        let Some(c) = self.elements().find(|g| g.order() == m) else {
            return false;
        };
        let cyclic = FiniteGroup::new("", self.degree, vec![c.clone()]).expect("degree");
        let cinv = c.inverse();
        self.elements()
            .any(|x| !cyclic.contains(&x) && x.order() == 2 && c.conjugate_by(&x) == cinv)
    }
}

fn build_table(degree: usize, gens: &[Permutation], cap: usize) -> Result<ElementTable, GroupError> {
    let id: Vec<u16> = (0..degree as u16).collect();
    let mut seen: HashMap<Vec<u16>, u32> = HashMap::new();
    let mut order: Vec<Vec<u16>> = vec![id.clone()];
    let mut parent = vec![0u32];
    let mut via = vec![0u16];
    seen.insert(id, 0);
    let mut queue = VecDeque::from([0u32]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let prod: Vec<u16> = order[i as usize].iter().map(|&x| g.raw()[x as usize]).collect();
            if seen.contains_key(&prod) {
                continue;
            }
            let k = order.len() as u32;
            if order.len() >= cap {
                return Err(GroupError::CapExceeded(format!("more than {cap} elements")));
            }
            seen.insert(prod.clone(), k);
            order.push(prod);
            parent.push(i);
            via.push(gi as u16);
            queue.push_back(k);
        }
    }
    drop(seen);
    let n = order.len();
    let mut idx: Vec<u32> = (0..n as u32).collect();
    idx.sort_by(|&a, &b| order[a as usize].cmp(&order[b as usize]));
    let mut new_of_old = vec![0u32; n];
    for (new, &old) in idx.iter().enumerate() {
        new_of_old[old as usize] = new as u32;
    }
    let mut flat = Vec::with_capacity(n * degree);
    let mut p2 = vec![0u32; n];
    let mut v2 = vec![0u16; n];
    for (new, &old) in idx.iter().enumerate() {
        flat.extend_from_slice(&order[old as usize]);
        p2[new] = new_of_old[parent[old as usize] as usize];
        v2[new] = via[old as usize];
    }
    let bfs = (0..n).map(|old| new_of_old[old]).collect();
    Ok(ElementTable {
        degree,
        flat,
        parent: p2,
        via: v2,
        bfs,
    })
}

/// Greedy generating set for a subgroup given by its full member list.
pub(crate) fn generate_from_members(name: String, degree: usize, members: &[Permutation]) -> FiniteGroup {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = FiniteGroup::new(name.clone(), degree, vec![]).expect("degree");
    for m in members {
        if current.order() == members.len() {
            break;
        }
        if !current.contains(m) {
            gens.push(m.clone());
            current = FiniteGroup::new(name.clone(), degree, gens.clone()).expect("degree");
        }
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> FiniteGroup {
        let a = Permutation::parse("(0,1)", 4).unwrap();
        let b = Permutation::parse("(0,1,2,3)", 4).unwrap();
        FiniteGroup::new("S4", 4, vec![a, b]).unwrap()
    }

    #[test]
    fn s4_order_classes_and_words() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert_eq!(g.classes().len(), 5);
        assert_eq!(g.classes().iter().map(|c| c.size).sum::<usize>(), 24);
        assert_eq!(g.element(0), g.identity());
        for i in 0..g.order() {
            let w = g.word(i);
            let prod = w
                .iter()
                .fold(g.identity(), |acc, &k| acc.mul(&g.generators()[k]));
            assert_eq!(prod, g.element(i));
        }
    }

    #[test]
    fn centralizer_times_class_is_order() {
        let g = s4();
        for c in g.classes() {
            let cent = g.centralizer(&g.element(c.rep)).unwrap();
            assert_eq!(cent.order() * c.size, g.order());
        }
    }

    #[test]
    fn normalizer_of_klein_four_is_everything() {
        let g = s4();
        let v = g
            .subgroup(
                "V4",
                vec![
                    Permutation::parse("(0,1)(2,3)", 4).unwrap(),
                    Permutation::parse("(0,2)(1,3)", 4).unwrap(),
                ],
            )
            .unwrap();
        assert_eq!(g.normalizer(&v).unwrap().order(), 24);
        assert!(v.is_dihedral());
    }

    #[test]
    fn cap_is_enforced() {
        let g = s4();
        let small = config::Limits {
            max_group_order: 10,
            ..Default::default()
        };
        config::with_limits(small, || assert!(g.table.get().is_none() && s4().enumerate().is_err()));
    }
}
