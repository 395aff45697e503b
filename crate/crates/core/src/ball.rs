//! Length-bounded balls of group elements with integer ids and precomputed tables.
//!
//! Every sweep in the crate works on a ball: elements of length at most `cap`,
//! sorted by (length, lex), together with Cayley tables for generators and
//! reflections and the inversion set of each element.

use std::collections::HashMap;

use crate::error::{CoxeterError, Result};
use crate::reflection::ReflectionSet;
use crate::roots::SignedRoot;
use crate::system::{CoxeterSystem, GroupElement};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct Ball<'a> {
    sys: &'a CoxeterSystem,
    cap: usize,
    whole_group: bool,
    elements: Vec<GroupElement>,
    index: HashMap<Vec<SignedRoot>, u32>,
    signatures: Vec<Vec<SignedRoot>>,
    right: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
    inversions: Vec<ReflectionSet>,
    /// Inversion sets as bitmasks when there are at most 64 roots.
    masks: Option<Vec<u64>>,
    reflections: Vec<u32>,
    /// Reflections usable as right labels inside the ball, ascending.
    labels: Vec<u32>,
    /// `rmul[id * labels.len() + k]` is the id of `elements[id] * labels[k]`.
    rmul: Vec<u32>,
}

impl<'a> Ball<'a> {
    /// Enumerates all elements of length at most `cap`.
    ///
    /// For an infinite group the registry must reach depth `3 * cap + 1`, otherwise
    /// `RootDepthExceeded` is returned.
    pub fn build(sys: &'a CoxeterSystem, cap: usize) -> Result<Self> {
        let n = sys.rank();
        let reg = sys.registry();
        if !sys.is_complete() && reg.depth_cap() < 3 * cap + 1 {
            return Err(CoxeterError::RootDepthExceeded { cap: reg.depth_cap() });
        }
        let simple: Vec<SignedRoot> = (0..n as u32).map(SignedRoot::pos).collect();
        let mut elements = vec![GroupElement::identity()];
        let mut signatures = vec![simple.clone()];
        let mut index: HashMap<Vec<SignedRoot>, u32> = HashMap::new();
        index.insert(simple, 0);
        let mut inversions = vec![sys.empty_set()];
        let mut right = vec![vec![NONE; 1]; n];

        let mut layer = 0..1usize;
        let mut whole_group = true;
        let mut len = 0;
        while !layer.is_empty() {
            let next_start = elements.len();
            for id in layer.clone() {
                for s in 0..n {
                    let sig = &signatures[id];
                    if !sig[s].positive {
                        continue;
                    }
                    if len == cap {
                        whole_group = false;
                        continue;
                    }
                    // sig(ws)[i] = w(s(alpha_i))
                    let new_sig: Vec<SignedRoot> = (0..n)
                        .map(|i| {
                            let r = reg.apply_generator(s, SignedRoot::pos(i as u32))?;
                            reg.apply_word(elements[id].word(), r)
                        })
                        .collect::<Result<_>>()?;
                    let target = match index.get(&new_sig) {
                        Some(&t) => t,
                        None => {
                            let t = elements.len() as u32;
                            let mut word = elements[id].word().to_vec();
                            word.push(s as u8);
                            elements.push(GroupElement::from_canonical(word));
                            let mut inv = inversions[id].clone();
                            inv.insert(sig[s].id);
                            inversions.push(inv);
                            index.insert(new_sig.clone(), t);
                            signatures.push(new_sig);
                            for row in right.iter_mut() {
                                row.push(NONE);
                            }
                            t
                        }
                    };
                    right[s][id] = target;
                    right[s][target as usize] = id as u32;
                }
            }
            layer = next_start..elements.len();
            len += 1;
        }
        whole_group &= sys.is_complete();

        let total = elements.len();
        let mut left = vec![vec![NONE; total]; n];
        for (s, row) in left.iter_mut().enumerate() {
            for (id, slot) in row.iter_mut().enumerate() {
                let sig: Vec<SignedRoot> =
                    signatures[id].iter().map(|&r| reg.apply_generator(s, r)).collect::<Result<_>>()?;
                *slot = index.get(&sig).copied().unwrap_or(NONE);
            }
        }

        let labels: Vec<u32> =
            (0..sys.num_positive_roots() as u32).filter(|&t| sys.reflection_word(t).length() <= 2 * cap).collect();
        let mut refl_images = Vec::with_capacity(labels.len());
        for &t in &labels {
            let img: Vec<SignedRoot> = (0..n as u32)
                .map(|i| reg.apply_word(sys.reflection_word(t).word(), SignedRoot::pos(i)))
                .collect::<Result<_>>()?;
            refl_images.push(img);
        }
        let mut rmul = vec![NONE; total * labels.len()];
        for id in 0..total {
            let w = elements[id].word();
            for (k, img) in refl_images.iter().enumerate() {
                let sig: Vec<SignedRoot> = img.iter().map(|&r| reg.apply_word(w, r)).collect::<Result<_>>()?;
                rmul[id * labels.len() + k] = index.get(&sig).copied().unwrap_or(NONE);
            }
        }

        let masks = (sys.num_positive_roots() <= 64)
            .then(|| inversions.iter().map(|set| set.iter().fold(0u64, |m, i| m | 1 << i)).collect());
        let reflections = elements.iter().map(|w| sys.reflection_id(w).unwrap_or(NONE)).collect();
        Ok(Self {
            sys,
            cap,
            whole_group,
            elements,
            index,
            signatures,
            right,
            left,
            inversions,
            masks,
            reflections,
            labels,
            rmul,
        })
    }

    /// The whole finite group.
    pub fn whole(sys: &'a CoxeterSystem) -> Result<Self> {
        if !sys.is_complete() {
            return Err(CoxeterError::TruncationUnsound);
        }
        let cap = sys.num_positive_roots();
        Self::build(sys, cap)
    }

    pub fn system(&self) -> &'a CoxeterSystem {
        self.sys
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// True when the ball is the entire (finite) group.
    pub fn is_whole_group(&self) -> bool {
        self.whole_group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, id: u32) -> &GroupElement {
        &self.elements[id as usize]
    }

    pub fn length(&self, id: u32) -> usize {
        self.elements[id as usize].length()
    }

    pub fn id_of(&self, w: &GroupElement) -> Option<u32> {
        if w.length() > self.cap {
            return None;
        }
        let reg = self.sys.registry();
        let sig: Vec<SignedRoot> = (0..self.sys.rank() as u32)
            .map(|i| reg.apply_word(w.word(), SignedRoot::pos(i)))
            .collect::<Result<_>>()
            .ok()?;
        self.index.get(&sig).copied()
    }

    /// Root id when the element is a reflection.
    pub fn reflection_id(&self, id: u32) -> Option<u32> {
        Some(self.reflections[id as usize]).filter(|&x| x != NONE)
    }

    /// Images of the simple roots; they determine the element.
    pub fn signature(&self, id: u32) -> &[SignedRoot] {
        &self.signatures[id as usize]
    }

    pub fn inversion_set(&self, id: u32) -> &ReflectionSet {
        &self.inversions[id as usize]
    }

    /// `N(w)` as a bitmask over root ids, available when there are at most 64 roots.
    pub fn mask(&self, id: u32) -> Option<u64> {
        self.masks.as_ref().map(|m| m[id as usize])
    }

    /// `w s`, if inside the ball.
    pub fn right_mul(&self, id: u32, s: usize) -> Option<u32> {
        Some(self.right[s][id as usize]).filter(|&x| x != NONE)
    }

    /// `s w`, if inside the ball.
    pub fn left_mul(&self, id: u32, s: usize) -> Option<u32> {
        Some(self.left[s][id as usize]).filter(|&x| x != NONE)
    }

    pub fn is_right_descent(&self, id: u32, s: usize) -> bool {
        !self.signatures[id as usize][s].positive
    }

    /// Reflections whose products with ball elements may land in the ball.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// `w t` for a reflection `t`; `None` when the product leaves the ball.
    pub fn mul_reflection(&self, id: u32, t: u32) -> Option<u32> {
        let k = self.labels.binary_search(&t).ok()?;
        Some(self.rmul[id as usize * self.labels.len() + k]).filter(|&x| x != NONE)
    }

    /// `w(beta_t)`.
    pub fn act(&self, id: u32, r: SignedRoot) -> Result<SignedRoot> {
        self.sys.registry().apply_word(self.elements[id as usize].word(), r)
    }

    /// `uv` computed through the right Cayley table.
    pub fn mul(&self, u: u32, v: u32) -> Option<u32> {
        self.element(v).word().iter().try_fold(u, |acc, &s| self.right_mul(acc, s as usize))
    }

    /// `w^{-1}`.
    pub fn inverse(&self, id: u32) -> Option<u32> {
        self.element(id).word().iter().try_fold(0u32, |acc, &s| self.left_mul(acc, s as usize))
    }

    /// `u <=_R v`.
    pub fn weak_leq(&self, u: u32, v: u32) -> bool {
        if self.length(u) > self.length(v) {
            return false;
        }
        match &self.masks {
            Some(m) => m[u as usize] & !m[v as usize] == 0,
            None => self.inversions[u as usize].is_subset(&self.inversions[v as usize]),
        }
    }

    /// Ids of all elements carrying exactly the reflections of `set` as inversion set.
    pub fn find_by_inversion_set(&self, set: &ReflectionSet) -> Option<u32> {
        let n = set.len();
        (0..self.len() as u32).find(|&id| self.length(id) == n && self.inversions[id as usize] == *set)
    }
}
