//! Type `A_n` as the symmetric group `S_{n+1}` in one-line notation.
//!
//! Right multiplication by `s_i` swaps the values `i` and `i+1`, so `st` in `A_2` is
//! `[3, 1, 2]`. Transpositions `(a, b)` are stored with `a < b`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};
use crate::reflection::ReflectionSet;
use crate::system::{CoxeterSystem, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    pub images: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition {
    pub a: u32,
    pub b: u32,
}

impl Transposition {
    /// `(a, b)` with the entries put in increasing order.
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(CoxeterError::TranspositionOutOfRange(a as usize, b as usize));
        }
        Ok(Self { a: a.min(b), b: a.max(b) })
    }
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Self { images: (1..=size as u32).collect() }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&v| {
            let i = v as usize;
            (1..=seen.len()).contains(&i) && !std::mem::replace(&mut seen[i - 1], true)
        })
    }

    fn position(&self, value: u32) -> usize {
        self.images.iter().position(|&v| v == value).expect("value present")
    }

    /// Applies `s_i` on the right: swaps the values `i` and `i+1`.
    pub fn swap_values(&mut self, i: u32) {
        let (p, q) = (self.position(i), self.position(i + 1));
        self.images.swap(p, q);
    }
}

fn require_type_a(sys: &CoxeterSystem) -> Result<()> {
    if sys.matrix().is_type_a() {
        Ok(())
    } else {
        Err(CoxeterError::NotTypeA)
    }
}

pub fn perm_from_element(sys: &CoxeterSystem, w: &GroupElement) -> Result<Permutation> {
    require_type_a(sys)?;
    let mut p = Permutation::identity(sys.rank() + 1);
    for &s in w.word() {
        p.swap_values(u32::from(s) + 1);
    }
    Ok(p)
}

/// Inverse of [`perm_from_element`]: peels off the smallest value `i` that sits to
/// the right of `i+1`.
pub fn element_from_perm(sys: &CoxeterSystem, p: &Permutation) -> Result<GroupElement> {
    require_type_a(sys)?;
    if p.size() != sys.rank() + 1 || !p.is_valid() {
        return Err(CoxeterError::Parse(format!("not a permutation of 1..={}", sys.rank() + 1)));
    }
    let mut q = p.clone();
    let mut rev = Vec::new();
    while let Some(i) = (1..q.size() as u32).find(|&i| q.position(i + 1) < q.position(i)) {
        q.swap_values(i);
        rev.push((i - 1) as u8);
    }
    rev.reverse();
    sys.element_from_letters(&rev)
}

/// Pairs `(i, j)`, `i < j`, with `p(i) > p(j)`.
pub fn inversion_pairs(p: &Permutation) -> BTreeSet<Transposition> {
    let n = p.size() as u32;
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if p.images[i as usize - 1] > p.images[j as usize - 1] {
                out.insert(Transposition { a: i, b: j });
            }
        }
    }
    out
}

/// Reflection id of a transposition.
pub fn reflection_of_transposition(sys: &CoxeterSystem, t: Transposition) -> Result<u32> {
    require_type_a(sys)?;
    let n = sys.rank() as u32 + 1;
    if t.b > n {
        return Err(CoxeterError::TranspositionOutOfRange(t.a as usize, t.b as usize));
    }
    // (a, b) = s_a s_{a+1} ... s_{b-2} s_{b-1} s_{b-2} ... s_a
    let mut letters: Vec<u8> = (t.a - 1..t.b - 1).map(|i| i as u8).collect();
    letters.extend((t.a - 1..t.b - 2).rev().map(|i| i as u8));
    let w = sys.element_from_letters(&letters)?;
    Ok(sys.reflection_from_element(&w)?.root_id)
}

pub fn transposition_of_reflection(sys: &CoxeterSystem, root_id: u32) -> Result<Transposition> {
    let p = perm_from_element(sys, sys.reflection_word(root_id))?;
    let moved: Vec<u32> = (1..=p.size() as u32).filter(|&i| p.images[i as usize - 1] != i).collect();
    Transposition::new(moved[0], moved[1])
}

pub fn to_reflection_set(sys: &CoxeterSystem, set: &BTreeSet<Transposition>) -> Result<ReflectionSet> {
    let mut out = sys.empty_set();
    for &t in set {
        out.insert(reflection_of_transposition(sys, t)?);
    }
    Ok(out)
}

pub fn to_transpositions(sys: &CoxeterSystem, set: &ReflectionSet) -> Result<BTreeSet<Transposition>> {
    set.iter().map(|id| transposition_of_reflection(sys, id)).collect()
}

/// `[A]` in `A_n`: all `(a, b)` joined by an increasing chain `a < c_1 < ... < b`
/// whose consecutive pairs lie in `A`.
pub fn preclosure_type_a(n: usize, a: &BTreeSet<Transposition>) -> Result<BTreeSet<Transposition>> {
    let size = n as u32 + 1;
    let mut succ = vec![Vec::new(); size as usize + 1];
    for t in a {
        if t.a == 0 || t.a >= t.b || t.b > size {
            return Err(CoxeterError::TranspositionOutOfRange(t.a as usize, t.b as usize));
        }
        succ[t.a as usize].push(t.b);
    }
    let mut out = BTreeSet::new();
    // reach[i] = values reachable from i; arcs go upward, so fill from the top
    let mut reach = vec![0u64; size as usize + 2];
    for i in (1..=size).rev() {
        let mut r = 0u64;
        for &j in &succ[i as usize] {
            r |= (1 << j) | reach[j as usize];
        }
        reach[i as usize] = r;
        for j in i + 1..=size {
            if r & (1 << j) != 0 {
                out.insert(Transposition { a: i, b: j });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(a: u32, b: u32) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    #[test]
    fn one_line_notation() {
        let sys = CoxeterSystem::preset("A2", 8).unwrap();
        let st = sys.element_from_word("st").unwrap();
        assert_eq!(perm_from_element(&sys, &st).unwrap().images, vec![3, 1, 2]);
        assert_eq!(perm_from_element(&sys, &GroupElement::identity()).unwrap(), Permutation::identity(3));
        let b3 = CoxeterSystem::preset("B3", 8).unwrap();
        assert!(matches!(perm_from_element(&b3, &GroupElement::identity()), Err(CoxeterError::NotTypeA)));
    }

    #[test]
    fn round_trip_on_a3() {
        let sys = CoxeterSystem::preset("A3", 16).unwrap();
        let ball = crate::ball::Ball::whole(&sys).unwrap();
        let mut perms = BTreeSet::new();
        for w in ball.elements() {
            let p = perm_from_element(&sys, w).unwrap();
            assert_eq!(&element_from_perm(&sys, &p).unwrap(), w);
            let pairs = inversion_pairs(&p);
            assert_eq!(to_reflection_set(&sys, &pairs).unwrap(), sys.inversion_set(w).unwrap());
            perms.insert(p.images);
        }
        assert_eq!(perms.len(), 24);
    }

    #[test]
    fn inversion_pair_examples() {
        let p = Permutation { images: vec![3, 1, 2] };
        assert_eq!(inversion_pairs(&p), BTreeSet::from([tr(1, 2), tr(1, 3)]));
        assert!(inversion_pairs(&Permutation::identity(4)).is_empty());
        let rev = Permutation { images: vec![5, 4, 3, 2, 1] };
        assert_eq!(inversion_pairs(&rev).len(), 10);
        let sys = CoxeterSystem::preset("A2", 8).unwrap();
        let names: Vec<String> =
            to_reflection_set(&sys, &inversion_pairs(&p)).map(|s| sys.format_reflection_set(&s)).unwrap();
        assert_eq!(names, vec!["s", "sts"]);
    }

    #[test]
    fn chain_preclosure() {
        let got = preclosure_type_a(2, &BTreeSet::from([tr(1, 2), tr(2, 3)])).unwrap();
        assert_eq!(got, BTreeSet::from([tr(1, 2), tr(2, 3), tr(1, 3)]));
        assert!(preclosure_type_a(2, &BTreeSet::new()).unwrap().is_empty());
        let a = BTreeSet::from([tr(1, 3), tr(2, 4)]);
        assert_eq!(preclosure_type_a(3, &a).unwrap(), a);
        assert!(preclosure_type_a(2, &BTreeSet::from([tr(1, 4)])).is_err());
    }
}
