//! Positive roots of the geometric representation and the action of the simple
//! reflections on them.
//!
//! Roots are enumerated breadth-first by depth: the simple roots have depth 1 and
//! `s(beta)` has depth one more than `beta` exactly when `B(beta, alpha_s) < 0`.
//! After construction every query is a table lookup.

use std::collections::HashMap;

use crate::error::{CoxeterError, Result};
use crate::field::{CyclotomicField, FieldElement};

/// Coordinates of a root in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector {
    pub coords: Vec<FieldElement>,
}

impl RootVector {
    /// 1 if every coordinate is >= 0, -1 if every coordinate is <= 0, 0 for mixed signs.
    pub fn sign(&self, field: &CyclotomicField) -> i32 {
        let signs: Vec<i32> = self.coords.iter().map(|c| field.sign(c)).collect();
        let pos = signs.iter().any(|&s| s > 0);
        let neg = signs.iter().any(|&s| s < 0);
        match (pos, neg) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }
}

/// A root given by a registry id and a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot {
    pub id: u32,
    pub positive: bool,
}

impl SignedRoot {
    pub fn pos(id: u32) -> Self {
        Self { id, positive: true }
    }

    pub fn negate(self) -> Self {
        Self { id: self.id, positive: !self.positive }
    }
}

#[derive(Debug, Clone)]
pub struct RootRegistry {
    rank: usize,
    depth_cap: usize,
    complete: bool,
    roots: Vec<RootVector>,
    depth: Vec<u32>,
    /// For non-simple roots: the root one level up the BFS tree and the generator
    /// carrying it here.
    parent: Vec<Option<(u32, u8)>>,
    /// `action[s][beta]` is `s(beta)` for a positive root `beta`; `None` when the
    /// image lies beyond the depth cap.
    action: Vec<Vec<Option<SignedRoot>>>,
}

impl RootRegistry {
    /// `gram2[i][j] = 2 B(alpha_i, alpha_j)`.
    pub fn build(field: &CyclotomicField, gram2: &[Vec<FieldElement>], depth_cap: usize) -> Self {
        let rank = gram2.len();
        let unit = |i: usize| RootVector { coords: (0..rank).map(|j| field.from_integer(i64::from(i == j))).collect() };
        let mut roots: Vec<RootVector> = (0..rank).map(unit).collect();
        let mut depth: Vec<u32> = vec![1; rank];
        let mut parent: Vec<Option<(u32, u8)>> = vec![None; rank];
        let mut index: HashMap<RootVector, u32> = roots.iter().cloned().zip(0..).collect();

        let pairing = |beta: &RootVector, s: usize| -> FieldElement {
            beta.coords.iter().zip(gram2.iter()).fold(field.zero(), |acc, (c, row)| &acc + &field.mul(c, &row[s]))
        };
        let reflect = |beta: &RootVector, s: usize, c: &FieldElement| -> RootVector {
            let mut coords = beta.coords.clone();
            coords[s] = &coords[s] - c;
            RootVector { coords }
        };

        let mut level: Vec<u32> = (0..rank as u32).collect();
        let mut d = 1;
        while d < depth_cap && !level.is_empty() {
            let mut next = Vec::new();
            for &b in &level {
                for s in 0..rank {
                    let c = pairing(&roots[b as usize], s);
                    if field.sign(&c) < 0 {
                        let img = reflect(&roots[b as usize], s, &c);
                        if !index.contains_key(&img) {
                            let id = roots.len() as u32;
                            index.insert(img.clone(), id);
                            roots.push(img);
                            depth.push(d as u32 + 1);
                            parent.push(Some((b, s as u8)));
                            next.push(id);
                        }
                    }
                }
            }
            level = next;
            d += 1;
        }

        let mut action = vec![vec![None; roots.len()]; rank];
        let mut complete = true;
        for (s, row) in action.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                if b == s {
                    *slot = Some(SignedRoot { id: s as u32, positive: false });
                    continue;
                }
                let c = pairing(&roots[b], s);
                if c.is_zero() {
                    *slot = Some(SignedRoot::pos(b as u32));
                    continue;
                }
                let img = reflect(&roots[b], s, &c);
                match index.get(&img) {
                    Some(&id) => *slot = Some(SignedRoot::pos(id)),
                    None => complete = false,
                }
            }
        }

        Self { rank, depth_cap, complete, roots, depth, parent, action }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    /// True when the registry is closed under all simple reflections, i.e. it holds
    /// every positive root of a finite group.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, id: u32) -> &RootVector {
        &self.roots[id as usize]
    }

    pub fn depth(&self, id: u32) -> u32 {
        self.depth[id as usize]
    }

    pub fn parent(&self, id: u32) -> Option<(u32, u8)> {
        self.parent[id as usize]
    }

    fn exceeded(&self) -> CoxeterError {
        CoxeterError::RootDepthExceeded { cap: self.depth_cap }
    }

    /// `s(r)`.
    #[inline]
    pub fn apply_generator(&self, s: usize, r: SignedRoot) -> Result<SignedRoot> {
        let img = self.action[s][r.id as usize].ok_or_else(|| self.exceeded())?;
        Ok(if r.positive { img } else { img.negate() })
    }

    /// Applies the product `a_1 a_2 ... a_k` to `r` (rightmost letter first).
    pub fn apply_word(&self, word: &[u8], r: SignedRoot) -> Result<SignedRoot> {
        word.iter().rev().try_fold(r, |acc, &s| self.apply_generator(s as usize, acc))
    }

    /// Applies the inverse of the product `a_1 ... a_k`, i.e. `a_k ... a_1`.
    pub fn apply_word_inverse(&self, word: &[u8], r: SignedRoot) -> Result<SignedRoot> {
        word.iter().try_fold(r, |acc, &s| self.apply_generator(s as usize, acc))
    }

    /// Roots `a_1 ... a_{i-1}(alpha_{a_i})` of a reduced word, in order.
    pub fn inversion_roots(&self, word: &[u8]) -> Result<Vec<u32>> {
        (0..word.len())
            .map(|i| {
                let r = self.apply_word(&word[..i], SignedRoot::pos(u32::from(word[i])))?;
                debug_assert!(r.positive, "word is not reduced");
                Ok(r.id)
            })
            .collect()
    }

    /// Reduces an arbitrary word left to right using the exchange condition.
    pub fn reduce(&self, letters: &[u8]) -> Result<Vec<u8>> {
        let mut word: Vec<u8> = Vec::with_capacity(letters.len());
        for &a in letters {
            let img = self.apply_word(&word, SignedRoot::pos(u32::from(a)))?;
            if img.positive {
                word.push(a);
                continue;
            }
            // find j with c_{j+1} ... c_k (alpha_a) = alpha_{c_j}
            let mut r = SignedRoot::pos(u32::from(a));
            let mut removed = false;
            for j in (0..word.len()).rev() {
                if r == SignedRoot::pos(u32::from(word[j])) {
                    word.remove(j);
                    removed = true;
                    break;
                }
                r = self.apply_generator(word[j] as usize, r)?;
            }
            debug_assert!(removed, "exchange condition failed");
        }
        Ok(word)
    }

    /// ShortLex-least reduced word of the element given by a reduced word: the
    /// smallest left descent is extracted repeatedly.
    pub fn shortlex(&self, reduced: &[u8]) -> Result<Vec<u8>> {
        let mut rest = reduced.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let inv = self.inversion_roots(&rest)?;
            let (pos, s) = inv
                .iter()
                .enumerate()
                .filter(|&(_, &r)| (r as usize) < self.rank)
                .min_by_key(|&(_, &r)| r)
                .map(|(i, &r)| (i, r as u8))
                .expect("nonidentity element has a left descent");
            out.push(s);
            rest.remove(pos);
        }
        Ok(out)
    }

    /// Renumbers roots; `order[new] = old`.
    pub(crate) fn renumber(&mut self, order: &[u32]) {
        let mut new_of_old = vec![0u32; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let map = |r: SignedRoot| SignedRoot { id: new_of_old[r.id as usize], positive: r.positive };
        self.roots = order.iter().map(|&o| self.roots[o as usize].clone()).collect();
        self.depth = order.iter().map(|&o| self.depth[o as usize]).collect();
        self.parent =
            order.iter().map(|&o| self.parent[o as usize].map(|(p, s)| (new_of_old[p as usize], s))).collect();
        self.action = self.action.iter().map(|row| order.iter().map(|&o| row[o as usize].map(map)).collect()).collect();
    }
}
