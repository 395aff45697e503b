use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::system::GroupElement;

/// A reflection, identified by its positive root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Reflection {
    pub root_id: u32,
    pub canonical_word: GroupElement,
}

/// A set of reflections, stored as a bitset over the root registry.
#[derive(Clone)]
pub struct ReflectionSet {
    bits: FixedBitSet,
}

impl ReflectionSet {
    /// Empty set over a universe of `universe` root ids.
    pub fn empty(universe: usize) -> Self {
        Self { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = u32>) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, id: u32) {
        let id = id as usize;
        if id >= self.bits.len() {
            self.bits.grow(id + 1);
        }
        self.bits.insert(id);
    }

    pub fn remove(&mut self, id: u32) {
        if (id as usize) < self.bits.len() {
            self.bits.set(id as usize, false);
        }
    }

    pub fn contains(&self, id: u32) -> bool {
        self.bits.contains(id as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn ids(&self) -> Vec<u32> {
        self.iter().collect()
    }

    fn aligned(&self, other: &Self) -> (FixedBitSet, FixedBitSet) {
        let n = self.bits.len().max(other.bits.len());
        let mut a = self.bits.clone();
        let mut b = other.bits.clone();
        a.grow(n);
        b.grow(n);
        (a, b)
    }

    pub fn union(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        a.union_with(&b);
        Self { bits: a }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        a.intersect_with(&b);
        Self { bits: a }
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        a.symmetric_difference_with(&b);
        Self { bits: a }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        a.difference_with(&b);
        Self { bits: a }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        if self.bits.len() <= other.bits.len() {
            self.bits.is_subset(&other.bits)
        } else {
            self.iter().all(|i| other.contains(i))
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        if other.bits.len() > self.bits.len() {
            self.bits.grow(other.bits.len());
        }
        self.bits.union_with(&other.bits);
    }
}

impl PartialEq for ReflectionSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for ReflectionSet {}

impl Hash for ReflectionSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for id in self.iter() {
            id.hash(state);
        }
    }
}

impl fmt::Debug for ReflectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
