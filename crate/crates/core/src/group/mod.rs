//! Finite groups as multiplication tables, plus the orientation-signed variant.

mod build;
mod family;
mod iso;
mod recipe;
mod signed;
mod words;

use std::collections::VecDeque;

pub use build::{cyclic, dihedral, direct_product, named, semidirect, NamedGroup};
pub use family::{identify_family, spherical_name, Family};
pub use iso::{find_embedding, is_isomorphic, Invariants, Isomorphism};
pub use recipe::{GroupRecipe, Num, Recipe};
pub use signed::{SignedGroup, Target};
pub use words::{eval_word, normalize_word};

use crate::error::{Error, Result};

/// Largest group realized as a table.
pub const MAX_ORDER: usize = 10_000;

const UNSET: u32 = u32::MAX;

/// Multiplication table with the identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    generators: Vec<(String, usize)>,
}

/// Sorted element set plus the generators it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.elements.iter().filter(|&&g| other.contains(g)).count()
    }
}

impl Group {
    /// `table[a * n + b] = a·b`; index 0 must be the identity.
    pub fn from_table(
        table: Vec<u32>,
        labels: Vec<String>,
        generators: Vec<(String, usize)>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::Construction(
                "table shape does not match the element count".into(),
            ));
        }
        if n > MAX_ORDER {
            return Err(Error::TooLarge {
                order: n,
                bound: MAX_ORDER,
            });
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::Construction("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![UNSET; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row
                .iter()
                .position(|&x| x == 0)
                .ok_or_else(|| Error::Construction(format!("{} has no inverse", labels[a])))?;
            inverse[a] = b as u32;
        }
        Ok(Group {
            table,
            inverse,
            labels,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, g)| g)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n)
                .all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut elements = vec![0];
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
        elements.sort_unstable();
        Subgroup {
            elements,
            generators: gens,
        }
    }

    pub fn whole(&self) -> Subgroup {
        let gens = self.generating_set(&(0..self.order()).collect::<Vec<_>>());
        Subgroup {
            elements: (0..self.order()).collect(),
            generators: gens,
        }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup {
            elements: vec![0],
            generators: Vec::new(),
        }
    }

    /// Greedy generating set of the subgroup formed by `elements`, preferring high orders.
    pub fn generating_set(&self, elements: &[usize]) -> Vec<usize> {
        let mut by_order: Vec<(usize, usize)> = elements
            .iter()
            .map(|&g| (self.element_order(g), g))
            .collect();
        by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut current = self.trivial();
        for (_, g) in by_order {
            if current.order() == elements.len() {
                break;
            }
            if !current.contains(g) {
                gens.push(g);
                current = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn class_of(&self, x: usize) -> Vec<usize> {
        let mut class: Vec<usize> = (0..self.order()).map(|g| self.conj(g, x)).collect();
        class.sort_unstable();
        class.dedup();
        class
    }

    /// Conjugacy classes sorted by (size, least element).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.order()];
        let mut classes = Vec::new();
        for x in 0..self.order() {
            if !done[x] {
                let class = self.class_of(x);
                for &y in &class {
                    done[y] = true;
                }
                classes.push(class);
            }
        }
        classes.sort_by(|a, b| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])));
        classes
    }

    fn subgroup_from_predicate(&self, keep: impl Fn(usize) -> bool) -> Subgroup {
        let elements: Vec<usize> = (0..self.order()).filter(|&g| keep(g)).collect();
        let generators = self.generating_set(&elements);
        Subgroup {
            elements,
            generators,
        }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = if h.generators.is_empty() {
            h.elements.clone()
        } else {
            h.generators.clone()
        };
        self.subgroup_from_predicate(|g| gens.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    pub fn centralizer(&self, set: &[usize]) -> Subgroup {
        self.subgroup_from_predicate(|g| set.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&(0..self.order()).collect::<Vec<_>>())
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens: Vec<usize> = if h.generators.is_empty() {
            h.elements.clone()
        } else {
            h.generators.clone()
        };
        (0..self.order()).all(|g| gens.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    pub fn normal_closure(&self, set: &[usize]) -> Subgroup {
        let mut gens: Vec<usize> = Vec::new();
        for &x in set {
            gens.extend(self.class_of(x));
        }
        gens.sort_unstable();
        gens.dedup();
        let s = self.subgroup_generated(&gens);
        let generators = self.generating_set(&s.elements);
        Subgroup {
            elements: s.elements,
            generators,
        }
    }

    /// All normal subgroups, sorted by (order, elements).
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = self.conjugacy_classes();
        let mut found = vec![self.trivial()];
        let mut i = 0;
        while i < found.len() {
            let base = found[i].clone();
            for class in &classes {
                if base.contains(class[0]) {
                    continue;
                }
                let mut set = base.generators.clone();
                set.push(class[0]);
                let n = self.normal_closure(&set);
                if !found.iter().any(|f| f.elements == n.elements) {
                    found.push(n);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| a.order().cmp(&b.order()).then(a.elements.cmp(&b.elements)));
        found
    }

    /// Coset table of `G/N`; cosets are indexed by their least element.
    pub fn quotient(&self, n: &Subgroup) -> Result<Group> {
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![UNSET; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if coset_of[g] == UNSET {
                let idx = reps.len() as u32;
                for &x in &n.elements {
                    coset_of[self.mul(g, x)] = idx;
                }
                reps.push(g);
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset_of[self.mul(a, b)];
            }
        }
        let labels = reps.iter().map(|&g| self.labels[g].clone()).collect();
        let generators = self
            .generators
            .iter()
            .map(|(name, g)| (name.clone(), coset_of[*g] as usize))
            .collect();
        Group::from_table(table, labels, generators)
    }

    /// The subgroup as a group in its own right; generators are its witness set.
    pub fn induced(&self, h: &Subgroup) -> Group {
        let m = h.order();
        let pos = |g: usize| h.elements.binary_search(&g).expect("closed subgroup");
        let mut table = vec![0u32; m * m];
        for (i, &a) in h.elements.iter().enumerate() {
            for (j, &b) in h.elements.iter().enumerate() {
                table[i * m + j] = pos(self.mul(a, b)) as u32;
            }
        }
        let labels = h.elements.iter().map(|&g| self.labels[g].clone()).collect();
        let generators = h
            .generators
            .iter()
            .map(|&g| (self.labels[g].clone(), pos(g)))
            .collect();
        Group {
            inverse: (0..m)
                .map(|i| pos(self.inv(h.elements[i])) as u32)
                .collect(),
            table,
            labels,
            generators,
        }
    }

    /// Extend `gens[i] ↦ images[i]` to a homomorphism on `⟨gens⟩`.
    ///
    /// Entries outside `⟨gens⟩` stay `None`; an inconsistency returns `None` overall.
    pub fn extend_hom(
        &self,
        gens: &[usize],
        images: &[usize],
        target: &Group,
    ) -> Option<Vec<Option<usize>>> {
        let mut map = vec![UNSET; self.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x] as usize;
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = target.mul(fx, img);
                if map[y] == UNSET {
                    map[y] = fy as u32;
                    queue.push_back(y);
                } else if map[y] as usize != fy {
                    return None;
                }
            }
        }
        Some(
            map.into_iter()
                .map(|v| (v != UNSET).then_some(v as usize))
                .collect(),
        )
    }
}
