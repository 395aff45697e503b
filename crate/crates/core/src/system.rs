//! Coxeter systems: construction from a matrix, canonical elements and the basic
//! queries (products, descents, inversion sets, reflections, parabolic cosets).

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{CoxeterError, Result};
use crate::field::{CyclotomicField, FieldElement};
use crate::matrix::CoxeterMatrix;
use crate::reflection::{Reflection, ReflectionSet};
use crate::roots::{RootRegistry, RootVector, SignedRoot};

/// A group element in canonical form: its ShortLex-least reduced word.
///
/// Letters are generator indices. Elements are ordered by length first and then
/// lexicographically, which is the order used for every listing in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    word: Vec<u8>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Wraps a word that is already canonical.
    pub(crate) fn from_canonical(word: Vec<u8>) -> Self {
        Self { word }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An immutable Coxeter system with its exact root registry.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    field: CyclotomicField,
    gram: Vec<Vec<FieldElement>>,
    registry: RootRegistry,
    reflection_words: Vec<GroupElement>,
    reflection_by_word: HashMap<Vec<u8>, u32>,
}

impl CoxeterSystem {
    /// Builds the system with every positive root of depth at most `depth_cap`.
    pub fn build(matrix: CoxeterMatrix, depth_cap: usize) -> Result<Self> {
        if depth_cap == 0 {
            return Err(CoxeterError::InvalidMatrix("depth cap must be at least 1".into()));
        }
        let n = matrix.rank();
        let modulus = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| matrix.bond(i, j))
            .filter(|&m| m >= 3)
            .fold(1u32, |acc, m| acc / gcd(acc, m) * m);
        let field = CyclotomicField::new(modulus);
        let gram2: Vec<Vec<FieldElement>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match matrix.bond(i, j) {
                        Some(1) => field.from_integer(2),
                        Some(2) => field.zero(),
                        Some(m) => -&field.two_cos_pi_over(m),
                        None => field.from_integer(-2),
                    })
                    .collect()
            })
            .collect();
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let gram = gram2.iter().map(|row| row.iter().map(|x| x.scale(&half)).collect()).collect();

        let mut registry = RootRegistry::build(&field, &gram2, depth_cap);
        // Reflections of depth d have reduced words of length 2d - 1; putting those
        // in ShortLex form needs roots up to that depth.
        let extended;
        let aux = if registry.is_complete() {
            &registry
        } else {
            extended = RootRegistry::build(&field, &gram2, 2 * depth_cap - 1);
            &extended
        };
        let mut words: Vec<Vec<u8>> = Vec::with_capacity(registry.len());
        for id in 0..registry.len() as u32 {
            let word = match registry.parent(id) {
                None => vec![id as u8],
                Some((p, s)) => {
                    let mut w = Vec::with_capacity(words[p as usize].len() + 2);
                    w.push(s);
                    w.extend_from_slice(&words[p as usize]);
                    w.push(s);
                    aux.shortlex(&aux.reduce(&w)?)?
                }
            };
            words.push(word);
        }
        let mut order: Vec<u32> = (0..registry.len() as u32).collect();
        order.sort_by(|&a, &b| {
            let (wa, wb) = (&words[a as usize], &words[b as usize]);
            wa.len().cmp(&wb.len()).then_with(|| wa.cmp(wb))
        });
        registry.renumber(&order);
        let reflection_words: Vec<GroupElement> =
            order.iter().map(|&o| GroupElement::from_canonical(words[o as usize].clone())).collect();
        let reflection_by_word = reflection_words.iter().enumerate().map(|(i, w)| (w.word.clone(), i as u32)).collect();

        Ok(Self { matrix, field, gram, registry, reflection_words, reflection_by_word })
    }

    /// Builds a preset by name with the given depth cap.
    pub fn preset(id: &str, depth_cap: usize) -> Result<Self> {
        Self::build(CoxeterMatrix::preset(id)?, depth_cap)
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn registry(&self) -> &RootRegistry {
        &self.registry
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn generator_names(&self) -> &[String] {
        self.matrix.names()
    }

    /// `B(alpha_s, alpha_t)`.
    pub fn gram(&self, s: usize, t: usize) -> &FieldElement {
        &self.gram[s][t]
    }

    /// True when the registry holds every positive root (the group is finite).
    pub fn is_complete(&self) -> bool {
        self.registry.is_complete()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.registry.len()
    }

    pub fn root(&self, id: u32) -> &RootVector {
        self.registry.root(id)
    }

    // ---- words -------------------------------------------------------------

    /// Splits `text` into generator indices. Whitespace separates tokens; inside a
    /// token, generator names are matched greedily (longest name first), so both
    /// `"r s t"` and `"rst"` parse. `"e"` denotes the identity unless it names a
    /// generator.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<u8>> {
        let names = self.generator_names();
        let mut by_len: Vec<(usize, &str)> = names.iter().enumerate().map(|(i, s)| (i, s.as_str())).collect();
        by_len.sort_by_key(|&(_, s)| std::cmp::Reverse(s.len()));
        let e_is_name = names.iter().any(|n| n == "e");
        let mut out = Vec::new();
        for chunk in text.split_whitespace() {
            if chunk == "e" && !e_is_name {
                continue;
            }
            let mut rest = chunk;
            while !rest.is_empty() {
                let (i, name) = by_len
                    .iter()
                    .find(|(_, name)| rest.starts_with(name))
                    .copied()
                    .ok_or_else(|| CoxeterError::UnknownGenerator(rest.to_string()))?;
                out.push(i as u8);
                rest = &rest[name.len()..];
            }
        }
        Ok(out)
    }

    /// Canonical element for an arbitrary word of generator indices.
    pub fn element_from_letters(&self, letters: &[u8]) -> Result<GroupElement> {
        if let Some(&bad) = letters.iter().find(|&&a| a as usize >= self.rank()) {
            return Err(CoxeterError::UnknownGenerator(format!("#{bad}")));
        }
        let reduced = self.registry.reduce(letters)?;
        Ok(GroupElement { word: self.registry.shortlex(&reduced)? })
    }

    pub fn element_from_word(&self, text: &str) -> Result<GroupElement> {
        let letters = self.parse_letters(text)?;
        self.element_from_letters(&letters)
    }

    /// Printable form: names concatenated when all are single characters,
    /// space-separated otherwise; the identity prints as `e`.
    pub fn format_letters(&self, word: &[u8]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        let names = self.generator_names();
        let sep = if names.iter().all(|n| n.chars().count() == 1) { "" } else { " " };
        word.iter().map(|&a| names[a as usize].as_str()).collect::<Vec<_>>().join(sep)
    }

    pub fn format(&self, w: &GroupElement) -> String {
        self.format_letters(&w.word)
    }

    // ---- group operations --------------------------------------------------

    pub fn generator(&self, s: usize) -> GroupElement {
        GroupElement { word: vec![s as u8] }
    }

    pub fn multiply(&self, u: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
        let mut letters = u.word.clone();
        letters.extend_from_slice(&v.word);
        self.element_from_letters(&letters)
    }

    pub fn inverse(&self, w: &GroupElement) -> Result<GroupElement> {
        let rev: Vec<u8> = w.word.iter().rev().copied().collect();
        Ok(GroupElement { word: self.registry.shortlex(&rev)? })
    }

    pub fn length(&self, w: &GroupElement) -> usize {
        w.word.len()
    }

    /// Generator indices occurring in the canonical word, ascending.
    pub fn support(&self, w: &GroupElement) -> Vec<usize> {
        let mut s: Vec<usize> = w.word.iter().map(|&a| a as usize).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// `w(r)` for a signed root.
    pub fn act(&self, w: &GroupElement, r: SignedRoot) -> Result<SignedRoot> {
        self.registry.apply_word(&w.word, r)
    }

    /// `w^{-1}(r)`.
    pub fn act_inverse(&self, w: &GroupElement, r: SignedRoot) -> Result<SignedRoot> {
        self.registry.apply_word_inverse(&w.word, r)
    }

    pub fn is_left_descent(&self, w: &GroupElement, s: usize) -> Result<bool> {
        Ok(!self.act_inverse(w, SignedRoot::pos(s as u32))?.positive)
    }

    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> Result<bool> {
        Ok(!self.act(w, SignedRoot::pos(s as u32))?.positive)
    }

    /// `D_L(w)` as a set of simple-reflection ids.
    pub fn left_descents(&self, w: &GroupElement) -> Result<ReflectionSet> {
        let mut set = self.empty_set();
        for s in 0..self.rank() {
            if self.is_left_descent(w, s)? {
                set.insert(s as u32);
            }
        }
        Ok(set)
    }

    pub fn right_descents(&self, w: &GroupElement) -> Result<ReflectionSet> {
        let mut set = self.empty_set();
        for s in 0..self.rank() {
            if self.is_right_descent(w, s)? {
                set.insert(s as u32);
            }
        }
        Ok(set)
    }

    pub fn empty_set(&self) -> ReflectionSet {
        ReflectionSet::empty(self.num_positive_roots())
    }

    /// `N(w)`: the roots of `s_1 ... s_{i-1} s_i s_{i-1} ... s_1` along the canonical word.
    pub fn inversion_set(&self, w: &GroupElement) -> Result<ReflectionSet> {
        let roots = self.registry.inversion_roots(&w.word)?;
        Ok(ReflectionSet::from_ids(self.num_positive_roots(), roots))
    }

    // ---- reflections -------------------------------------------------------

    pub fn reflection(&self, root_id: u32) -> Reflection {
        Reflection { root_id, canonical_word: self.reflection_words[root_id as usize].clone() }
    }

    pub fn reflection_word(&self, root_id: u32) -> &GroupElement {
        &self.reflection_words[root_id as usize]
    }

    pub fn reflection_to_element(&self, r: &Reflection) -> GroupElement {
        self.reflection_words[r.root_id as usize].clone()
    }

    /// Root id of a canonical element if it is a reflection in the registry.
    pub fn reflection_id(&self, w: &GroupElement) -> Option<u32> {
        self.reflection_by_word.get(&w.word).copied()
    }

    /// Recognizes a reflection: `w^2 = e` and exactly one positive root is negated to
    /// its own negative.
    pub fn reflection_from_element(&self, w: &GroupElement) -> Result<Reflection> {
        let not = || CoxeterError::NotAReflection(self.format(w));
        if w.is_identity() || w.length().is_multiple_of(2) {
            return Err(not());
        }
        if !self.multiply(w, w)?.is_identity() {
            return Err(not());
        }
        let mut found = None;
        for beta in self.registry.inversion_roots(&w.word)? {
            let img = self.act(w, SignedRoot::pos(beta))?;
            if img == SignedRoot::pos(beta).negate() {
                if found.is_some() {
                    return Err(not());
                }
                found = Some(beta);
            }
        }
        let id = found.ok_or_else(not)?;
        debug_assert_eq!(self.reflection_words[id as usize], *w);
        Ok(self.reflection(id))
    }

    /// Root id of `w t w^{-1}`.
    pub fn conjugate_reflection(&self, w: &GroupElement, t: u32) -> Result<u32> {
        Ok(self.act(w, SignedRoot::pos(t))?.id)
    }

    /// All registry reflections with canonical length at most `length_cap`, sorted by
    /// (length, lex), and whether that list is known to contain every such reflection.
    pub fn enumerate_reflections(&self, length_cap: usize) -> (Vec<Reflection>, bool) {
        let list: Vec<Reflection> = (0..self.num_positive_roots() as u32)
            .filter(|&id| self.reflection_words[id as usize].length() <= length_cap)
            .map(|id| self.reflection(id))
            .collect();
        // depth d <-> length 2d - 1
        let complete = self.is_complete() || 2 * self.registry.depth_cap() > length_cap;
        (list, complete)
    }

    // ---- parabolic subgroups -----------------------------------------------

    /// `w = x y` with `x` the minimal representative of `w W_I` and `y` in `W_I`.
    pub fn coset_decompose(&self, w: &GroupElement, subset: &[usize]) -> Result<(GroupElement, GroupElement)> {
        let mut x = w.clone();
        let mut removed: Vec<u8> = Vec::new();
        'outer: loop {
            for &s in subset {
                if self.is_right_descent(&x, s)? {
                    x = self.multiply(&x, &self.generator(s))?;
                    removed.push(s as u8);
                    continue 'outer;
                }
            }
            break;
        }
        removed.reverse();
        let y = self.element_from_letters(&removed)?;
        Ok((x, y))
    }

    /// Long element of `W_{s,t}`.
    pub fn dihedral_long_element(&self, s: usize, t: usize) -> Result<GroupElement> {
        let names = self.generator_names();
        let m = self.matrix.bond(s, t).ok_or_else(|| CoxeterError::InfiniteBond(names[s].clone(), names[t].clone()))?;
        let letters: Vec<u8> = (0..m).map(|i| if i % 2 == 0 { s as u8 } else { t as u8 }).collect();
        self.element_from_letters(&letters)
    }

    /// Parses a comma-separated list of reflection words into a reflection set.
    pub fn parse_reflection_set(&self, text: &str) -> Result<ReflectionSet> {
        let mut set = self.empty_set();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let w = self.element_from_word(part)?;
            let r = self.reflection_from_element(&w)?;
            set.insert(r.root_id);
        }
        Ok(set)
    }

    /// Canonical words of a reflection set, sorted by (length, lex).
    pub fn format_reflection_set(&self, set: &ReflectionSet) -> Vec<String> {
        // ids are already in (length, lex) order of their canonical words
        set.iter().map(|id| self.format(&self.reflection_words[id as usize])).collect()
    }
}
