use std::sync::{Arc, Mutex};

use super::meataxe::find_submodule;
use super::{hom, GModule, RepError, Result};
use crate::gf2::{FFMatrix, FieldSpec};
use crate::groups::FiniteGroup;

/// A registered absolutely irreducible module.
#[derive(Clone, Debug)]
pub struct SimpleEntry {
    pub label: String,
    pub module: GModule,
    /// Fixed-point dimensions under the odd-order class representatives.
    pub fingerprint: Vec<usize>,
}

#[derive(Debug)]
struct Inner {
    field: FieldSpec,
    simples: Vec<SimpleEntry>,
}

/// Append-only registry of pairwise non-isomorphic absolutely irreducible
/// modules for one group. The trivial module is always present as `"1"`;
/// other labels are the dimension plus a letter in discovery order.
///
/// The field grows (GF(2) → GF(4) → GF(16)) when a composition factor turns
/// out not to be absolutely irreducible; existing entries are embedded.
#[derive(Debug)]
pub struct SimpleLibrary {
    group: Arc<FiniteGroup>,
    odd_reps: Vec<usize>,
    inner: Mutex<Inner>,
}

enum Identified {
    Label(String),
    Extend(u8),
}

impl SimpleLibrary {
    pub fn new(group: Arc<FiniteGroup>, field: FieldSpec) -> Result<Self> {
        group.enumerate()?;
        let odd_reps = group
            .classes()
            .iter()
            .filter(|c| c.element_order % 2 == 1)
            .map(|c| c.rep)
            .collect();
        let mut lib = SimpleLibrary {
            group: group.clone(),
            odd_reps,
            inner: Mutex::new(Inner {
                field,
                simples: Vec::new(),
            }),
        };
        let trivial = GModule::trivial(group, field);
        let fingerprint = lib.fingerprint(&trivial);
        lib.inner.get_mut().expect("fresh").simples.push(SimpleEntry {
            label: "1".into(),
            module: trivial,
            fingerprint,
        });
        Ok(lib)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.lock().expect("library lock").field
    }

    pub fn simples(&self) -> Vec<SimpleEntry> {
        self.inner.lock().expect("library lock").simples.clone()
    }

    pub fn get(&self, label: &str) -> Option<SimpleEntry> {
        self.simples().into_iter().find(|s| s.label == label)
    }

    pub fn dim_of(&self, label: &str) -> Option<usize> {
        self.get(label).map(|s| s.module.dim())
    }

    fn fingerprint(&self, m: &GModule) -> Vec<usize> {
        self.odd_reps
            .iter()
            .map(|&i| {
                let a = m.action_index(i);
                let shifted = a.add(&FFMatrix::identity(m.field(), m.dim())).expect("square");
                m.dim() - shifted.rank()
            })
            .collect()
    }

    fn extend(&self, degree: u8) -> Result<()> {
        let mut inner = self.inner.lock().expect("library lock");
        let target = inner.field.extension_of_degree(degree).ok_or_else(|| {
            RepError::FieldTooSmall(format!(
                "a composition factor needs an extension of degree {degree} of {}",
                inner.field
            ))
        })?;
        for s in inner.simples.iter_mut() {
            s.module = s.module.embed(target)?;
        }
        inner.field = target;
        Ok(())
    }

    fn identify_inner(&self, s: &GModule) -> Result<Identified> {
        let end = hom(s, s)?.len();
        if end > 1 {
            return Ok(Identified::Extend(end as u8));
        }
        let fp = self.fingerprint(s);
        let mut inner = self.inner.lock().expect("library lock");
        for entry in &inner.simples {
            if entry.module.dim() == s.dim() && entry.fingerprint == fp && !hom(s, &entry.module)?.is_empty() {
                return Ok(Identified::Label(entry.label.clone()));
            }
        }
        let same_dim = inner
            .simples
            .iter()
            .filter(|e| e.module.dim() == s.dim() && e.label != "1")
            .count();
        let letter = (b'a' + same_dim as u8) as char;
        let label = format!("{}{letter}", s.dim());
        inner.simples.push(SimpleEntry {
            label: label.clone(),
            module: s.clone(),
            fingerprint: fp,
        });
        Ok(Identified::Label(label))
    }

    /// Label of an absolutely irreducible module, registering it if new.
    pub fn identify(&self, s: &GModule) -> Result<String> {
        let s = s.embed(self.field())?;
        match self.identify_inner(&s)? {
            Identified::Label(l) => Ok(l),
            Identified::Extend(_) => Err(RepError::FieldTooSmall(format!(
                "module of dimension {} is not absolutely irreducible over {}",
                s.dim(),
                s.field()
            ))),
        }
    }

    /// Composition factors with multiplicity, sorted by (dimension, label).
    /// Extends the library field and restarts when needed.
    pub fn chop(&self, m: &GModule) -> Result<Vec<String>> {
        super::check_dim("module to chop", m.dim())?;
        'restart: loop {
            let field = self.field().join(m.field());
            if field != self.field() {
                self.extend(field.degree() / self.field().degree())?;
            }
            let mut stack = vec![m.embed(field)?];
            let mut labels = Vec::new();
            while let Some(x) = stack.pop() {
                if x.dim() == 0 {
                    continue;
                }
                match find_submodule(&x)? {
                    Some(u) => {
                        stack.push(x.quotient(&u)?.0);
                        stack.push(x.submodule(&u)?.0);
                    }
                    None => match self.identify_inner(&x)? {
                        Identified::Label(l) => labels.push(l),
                        Identified::Extend(k) => {
                            self.extend(k)?;
                            continue 'restart;
                        }
                    },
                }
            }
            self.sort_labels(&mut labels);
            return Ok(labels);
        }
    }

    pub fn sort_labels(&self, labels: &mut [String]) {
        let simples = self.simples();
        let dim = |l: &String| simples.iter().find(|s| &s.label == l).map_or(0, |s| s.module.dim());
        labels.sort_by(|a, b| (dim(a), a).cmp(&(dim(b), b)));
    }

    /// Label of the dual of a registered simple.
    pub fn dual_label(&self, label: &str) -> Result<String> {
        let entry = self
            .get(label)
            .ok_or_else(|| RepError::IncompleteLibrary(format!("no simple labelled {label}")))?;
        self.identify(&entry.module.dual())
    }

    /// Whether a registered simple lies in the principal block.
    pub fn in_principal_block(&self, label: &str) -> Result<bool> {
        let entry = self
            .get(label)
            .ok_or_else(|| RepError::IncompleteLibrary(format!("no simple labelled {label}")))?;
        lies_in_principal_block(&entry.module)
    }
}

/// Whether an irreducible module lies in the principal block: every class
/// sum acts as the scalar `|C|`, as it does on the trivial module. This also
/// works over fields that do not split the module, since the principal block
/// is stable under the Galois group.
pub fn lies_in_principal_block(m: &GModule) -> Result<bool> {
    let g = m.group();
    let actions = m.all_actions()?;
    let classes = g.classes();
    let mut sums = vec![FFMatrix::zeros(m.field(), m.dim(), m.dim()); classes.len()];
    for (i, a) in actions.iter().enumerate() {
        let c = g.class_index(i);
        sums[c] = sums[c].add(a)?;
    }
    let id = FFMatrix::identity(m.field(), m.dim());
    Ok(classes
        .iter()
        .zip(&sums)
        .all(|(c, sum)| sum == &id.scale((c.size % 2) as u8)))
}
