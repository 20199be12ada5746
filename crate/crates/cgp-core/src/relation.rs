//! A binary relation between node ids, stored as a map from left element to
//! the set of its right partners. Both the simulation engines (pattern node
//! to data node) and pattern-only matching (pattern node to pattern node)
//! use this shape.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Relation(BTreeMap<String, BTreeSet<String>>);

impl Relation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, left: &str, right: &str) -> bool {
        self.0
            .entry(left.to_string())
            .or_default()
            .insert(right.to_string())
    }

    pub fn remove(&mut self, left: &str, right: &str) -> bool {
        match self.0.get_mut(left) {
            Some(set) => {
                let removed = set.remove(right);
                if set.is_empty() {
                    self.0.remove(left);
                }
                removed
            }
            None => false,
        }
    }

    pub fn contains(&self, left: &str, right: &str) -> bool {
        self.0.get(left).is_some_and(|s| s.contains(right))
    }

    /// Right partners of `left`.
    pub fn image(&self, left: &str) -> BTreeSet<String> {
        self.0.get(left).cloned().unwrap_or_default()
    }

    pub fn image_ref(&self, left: &str) -> Option<&BTreeSet<String>> {
        self.0.get(left)
    }

    /// Left elements paired with `right`.
    pub fn preimage(&self, right: &str) -> BTreeSet<String> {
        self.0
            .iter()
            .filter(|(_, set)| set.contains(right))
            .map(|(l, _)| l.clone())
            .collect()
    }

    pub fn lefts(&self) -> impl Iterator<Item = &String> {
        self.0.keys()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&String, &String)> {
        self.0.iter().flat_map(|(l, set)| set.iter().map(move |r| (l, r)))
    }

    pub fn len(&self) -> usize {
        self.0.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Does every element of `lefts` have at least one partner?
    pub fn covers<'a>(&self, mut lefts: impl Iterator<Item = &'a String>) -> bool {
        lefts.all(|l| self.0.get(l).is_some_and(|s| !s.is_empty()))
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.pairs().all(|(l, r)| other.contains(l, r))
    }
}

impl FromIterator<(String, String)> for Relation {
    fn from_iter<T: IntoIterator<Item = (String, String)>>(iter: T) -> Self {
        let mut rel = Relation::new();
        for (l, r) in iter {
            rel.insert(&l, &r);
        }
        rel
    }
}
