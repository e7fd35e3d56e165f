//! Finite permutation groups held as a full, deduplicated element list.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Perm;

mod blocks;
pub mod grp;

pub use blocks::{BlockSystem, QuotientAction};

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    name: Option<String>,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// A non-identity element whose cycles all have one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiregularElement {
    pub index: usize,
    pub cycle_length: usize,
    pub orbit_count: usize,
}

impl PermGroup {
    /// Breadth-first closure of `gens` starting from the identity.
    ///
    /// Element `0` is the identity and new elements are discovered as
    /// `s ∘ e` for queued `e` and generators `s` in input order, so the
    /// ordering depends only on the generator list.
    pub fn generate(degree: usize, gens: &[Perm], cap: usize) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        if cap == 0 {
            return Err(Error::InvalidArgument("order cap must be positive".into()));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let next = s.compose_unchecked(&elements[i]);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                index.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
            }
        }
        Ok(PermGroup {
            degree,
            name: None,
            generators: gens.to_vec(),
            elements,
            index,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::generate(degree, &[], 1).expect("trivial group")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PermGroup {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The name, or a placeholder built from degree and order.
    pub fn display_name(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("group(degree {}, order {})", self.degree, self.order()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    /// True when every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    /// Subgroup formed by the given elements of `self`, which must be closed.
    ///
    /// A small generating set is picked greedily and the subgroup is
    /// regenerated from it so its element order is again breadth-first.
    pub fn subgroup_from_indices(&self, members: &[usize]) -> PermGroup {
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        for &i in members {
            let p = &self.elements[i];
            if !current.contains(p) {
                gens.push(p.clone());
                current = PermGroup::generate(self.degree, &gens, usize::MAX)
                    .expect("subgroup of an enumerated group");
            }
        }
        debug_assert_eq!(current.order(), members.len(), "members not closed");
        current
    }

    pub fn orbit(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[v] = true;
        let mut orbit = vec![v];
        let mut i = 0;
        while i < orbit.len() {
            let w = orbit[i];
            for g in &self.generators {
                let x = g.apply(w);
                if !seen[x] {
                    seen[x] = true;
                    orbit.push(x);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbits of the natural action, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for v in 0..self.degree {
            if seen[v] {
                continue;
            }
            let orb = self.orbit(v);
            for &w in &orb {
                seen[w] = true;
            }
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    pub fn stabilizer(&self, v: usize) -> PermGroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| self.elements[i].apply(v) == v)
            .collect();
        self.subgroup_from_indices(&members)
    }

    /// Indices of elements fixing `v`, without building a subgroup.
    pub fn stabilizer_indices(&self, v: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].apply(v) == v)
            .collect()
    }

    /// Transitive, with the stabilizer of point 0 transitive on the rest.
    pub fn is_2_transitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        if self.degree <= 2 {
            return true;
        }
        let stab = self.stabilizer(0);
        stab.orbit(1).len() == self.degree - 1
    }

    pub fn derangements(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].is_derangement())
            .collect()
    }

    /// Largest point-stabilizer order, `max_v |G_v|`.
    pub fn max_stabilizer_order(&self) -> usize {
        if self.degree == 0 {
            return self.order();
        }
        let mut counts = vec![0usize; self.degree];
        for g in &self.elements {
            for v in g.fixed_points() {
                counts[v] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }

    /// Elements `h` with `h⟨g⟩h⁻¹ = ⟨g⟩`.
    pub fn normalizer_of_cyclic(&self, g: usize) -> PermGroup {
        let gen = &self.elements[g];
        let cyclic = self.cyclic_subgroup(g);
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let h = &self.elements[i];
                let conj = h.compose_unchecked(gen).div_right(h);
                cyclic.contains(&self.index[&conj])
            })
            .collect();
        self.subgroup_from_indices(&members)
    }

    /// Indices of the powers of element `g`, starting with the identity.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        let gen = &self.elements[g];
        let mut out = vec![0usize];
        let mut p = gen.clone();
        while !p.is_identity() {
            out.push(self.index[&p]);
            p = gen.compose_unchecked(&p);
        }
        out
    }

    pub fn find_semiregular_elements(&self) -> Vec<SemiregularElement> {
        self.elements
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, g)| g.is_semiregular_elem())
            .map(|(index, g)| {
                let cycle_length = g.apply_cycle_length(0);
                SemiregularElement {
                    index,
                    cycle_length,
                    orbit_count: self.degree / cycle_length,
                }
            })
            .collect()
    }

    /// True iff some element is a single cycle through all points.
    pub fn has_cyclic_regular_subgroup(&self) -> bool {
        if self.degree <= 1 {
            return true;
        }
        self.elements
            .iter()
            .any(|g| g.apply_cycle_length(0) == self.degree)
    }

    pub fn is_subgroup_alternating(&self) -> bool {
        self.generators.iter().all(|g| g.sign() == 1)
    }

    /// Conjugacy classes as lists of element indices, ordered by their
    /// smallest index; each list is sorted.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut class = vec![start];
            let mut i = 0;
            while i < class.len() {
                let x = &self.elements[class[i]];
                for s in &self.generators {
                    let y = s.compose_unchecked(x).div_right(s);
                    let j = self.index[&y];
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        class.push(j);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }
}

impl Perm {
    /// Length of the cycle through `v`.
    pub(crate) fn apply_cycle_length(&self, v: usize) -> usize {
        if self.degree() == 0 {
            return 1;
        }
        let mut len = 1;
        let mut w = self.apply(v);
        while w != v {
            w = self.apply(w);
            len += 1;
        }
        len
    }
}
