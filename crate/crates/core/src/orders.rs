//! Right weak order, Bruhat graphs and Bruhat order.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::ball::Ball;
use crate::error::{CoxeterError, Result};
use crate::matrix::Bond;
use crate::reflection::ReflectionSet;
use crate::roots::SignedRoot;
use crate::system::{CoxeterSystem, GroupElement};

/// `u <=_R v`, i.e. `N(u) ⊆ N(v)`.
pub fn weak_leq(sys: &CoxeterSystem, u: &GroupElement, v: &GroupElement) -> Result<bool> {
    if u.length() > v.length() {
        return Ok(false);
    }
    Ok(sys.inversion_set(u)?.is_subset(&sys.inversion_set(v)?))
}

/// The interval `[e, w]_R`, sorted by (length, lex).
pub fn lower_set(sys: &CoxeterSystem, w: &GroupElement) -> Result<Vec<GroupElement>> {
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    let mut queue = VecDeque::from([w.clone()]);
    seen.insert(w.clone());
    while let Some(x) = queue.pop_front() {
        for s in 0..sys.rank() {
            if sys.is_right_descent(&x, s)? {
                let y = sys.multiply(&x, &sys.generator(s))?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `u ∧_R v`: climbs from `e` by right ascents whose new inversion lies in `N(u) ∩ N(v)`.
pub fn meet_r(sys: &CoxeterSystem, u: &GroupElement, v: &GroupElement) -> Result<GroupElement> {
    let common = sys.inversion_set(u)?.intersection(&sys.inversion_set(v)?);
    let mut word: Vec<u8> = Vec::new();
    'climb: loop {
        for s in 0..sys.rank() {
            let r = sys.registry().apply_word(&word, SignedRoot::pos(s as u32))?;
            if r.positive && common.contains(r.id) {
                word.push(s as u8);
                continue 'climb;
            }
        }
        break;
    }
    sys.element_from_letters(&word)
}

/// The weak-order queries the join algorithm needs, so it runs both on words and on
/// ball ids.
pub trait WeakOrderModel {
    type Elem: Clone + PartialEq;

    fn bond(&self, s: usize, t: usize) -> Bond;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// Smallest `s` with `x ⋖ xs <=_R b`.
    fn ascent_toward(&self, x: &Self::Elem, b: &Self::Elem) -> Result<Option<usize>>;
    /// `x * w_{s,t}` (`m = m(s,t)`), or `None` when it leaves the search region.
    fn times_long(&self, x: &Self::Elem, s: usize, t: usize, m: u32) -> Result<Option<Self::Elem>>;
    fn iteration_cap(&self) -> usize;
}

/// Words in a system, optionally confined below an upper bound.
pub struct SystemModel<'a> {
    sys: &'a CoxeterSystem,
    bound: Option<ReflectionSet>,
    cap: usize,
}

impl<'a> SystemModel<'a> {
    pub fn new(sys: &'a CoxeterSystem, upper_bound: Option<&GroupElement>) -> Result<Self> {
        let (bound, cap) = match upper_bound {
            Some(w) => (Some(sys.inversion_set(w)?), lower_set(sys, w)?.len()),
            None => (None, 1 << 20),
        };
        Ok(Self { sys, bound, cap })
    }
}

impl WeakOrderModel for SystemModel<'_> {
    type Elem = GroupElement;

    fn bond(&self, s: usize, t: usize) -> Bond {
        self.sys.matrix().bond(s, t)
    }

    fn leq(&self, a: &GroupElement, b: &GroupElement) -> Result<bool> {
        weak_leq(self.sys, a, b)
    }

    fn meet(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        meet_r(self.sys, a, b)
    }

    fn ascent_toward(&self, x: &GroupElement, b: &GroupElement) -> Result<Option<usize>> {
        let nb = self.sys.inversion_set(b)?;
        for s in 0..self.sys.rank() {
            let r = self.sys.act(x, SignedRoot::pos(s as u32))?;
            if r.positive && nb.contains(r.id) {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    fn times_long(&self, x: &GroupElement, s: usize, t: usize, m: u32) -> Result<Option<GroupElement>> {
        let mut letters = x.word().to_vec();
        letters.extend((0..m).map(|i| if i % 2 == 0 { s as u8 } else { t as u8 }));
        let y = self.sys.element_from_letters(&letters)?;
        match &self.bound {
            Some(b) if !self.sys.inversion_set(&y)?.is_subset(b) => Ok(None),
            _ => Ok(Some(y)),
        }
    }

    fn iteration_cap(&self) -> usize {
        self.cap
    }
}

impl WeakOrderModel for Ball<'_> {
    type Elem = u32;

    fn bond(&self, s: usize, t: usize) -> Bond {
        self.system().matrix().bond(s, t)
    }

    fn leq(&self, a: &u32, b: &u32) -> Result<bool> {
        Ok(self.weak_leq(*a, *b))
    }

    fn meet(&self, a: &u32, b: &u32) -> Result<u32> {
        Ok(meet_in_ball(self, *a, *b))
    }

    fn ascent_toward(&self, x: &u32, b: &u32) -> Result<Option<usize>> {
        let nb = self.inversion_set(*b);
        let sig = self.signature(*x);
        Ok((0..sig.len()).find(|&s| sig[s].positive && nb.contains(sig[s].id)))
    }

    fn times_long(&self, x: &u32, s: usize, t: usize, m: u32) -> Result<Option<u32>> {
        Ok((0..m).try_fold(*x, |acc, i| self.right_mul(acc, if i % 2 == 0 { s } else { t })))
    }

    fn iteration_cap(&self) -> usize {
        self.len()
    }
}

/// Meet of two ball elements.
pub fn meet_in_ball(ball: &Ball<'_>, a: u32, b: u32) -> u32 {
    if let (Some(ma), Some(mb)) = (ball.mask(a), ball.mask(b)) {
        let common = ma & mb;
        let mut x = 0u32;
        'fast: loop {
            let sig = ball.signature(x);
            for (s, r) in sig.iter().enumerate() {
                if r.positive && common >> r.id & 1 == 1 {
                    x = ball.right_mul(x, s).expect("meet stays below a");
                    continue 'fast;
                }
            }
            return x;
        }
    }
    let common = ball.inversion_set(a).intersection(ball.inversion_set(b));
    let mut x = 0u32;
    'climb: loop {
        let sig = ball.signature(x);
        for (s, r) in sig.iter().enumerate() {
            if r.positive && common.contains(r.id) {
                x = ball.right_mul(x, s).expect("meet stays below a");
                continue 'climb;
            }
        }
        return x;
    }
}

/// Join by iterated dihedral completion.
///
/// Keeps `a` and a stack of pending elements; each round takes `x = a ∧ b` for the
/// top `b`, the smallest `s`, `t` with `x ⋖ xs <= b` and `x ⋖ xt <= a`, and replaces
/// `a` or `b` by `x w_{s,t}` depending on which of them lie below it.
pub fn join_with<M: WeakOrderModel>(model: &M, u: &M::Elem, v: &M::Elem) -> Result<M::Elem> {
    let mut a = u.clone();
    let mut stack = vec![v.clone()];
    let cap = model.iteration_cap();
    let mut rounds = 0usize;
    while let Some(b) = stack.last().cloned() {
        rounds += 1;
        if rounds > cap {
            return Err(CoxeterError::IterationCapExceeded(cap));
        }
        if model.leq(&b, &a)? {
            stack.pop();
            continue;
        }
        if model.leq(&a, &b)? {
            a = b;
            stack.pop();
            continue;
        }
        let x = model.meet(&a, &b)?;
        let s = model.ascent_toward(&x, &b)?.expect("x < b has an ascent toward b");
        let t = model.ascent_toward(&x, &a)?.expect("x < a has an ascent toward a");
        let m = model.bond(s, t).ok_or(CoxeterError::NoJoin)?;
        let y = model.times_long(&x, s, t, m)?.ok_or(CoxeterError::NoJoin)?;
        match (model.leq(&a, &y)?, model.leq(&b, &y)?) {
            (false, false) => stack.push(y),
            (false, true) => *stack.last_mut().expect("nonempty") = y,
            (true, false) => a = y,
            (true, true) => {
                a = y;
                stack.pop();
            }
        }
    }
    Ok(a)
}

/// `u ∨_R v`. Infinite systems should pass an upper bound to confine the search.
pub fn join_r(
    sys: &CoxeterSystem,
    u: &GroupElement,
    v: &GroupElement,
    upper_bound: Option<&GroupElement>,
) -> Result<GroupElement> {
    let model = SystemModel::new(sys, upper_bound)?;
    if let Some(b) = &model.bound {
        if !sys.inversion_set(u)?.is_subset(b) || !sys.inversion_set(v)?.is_subset(b) {
            return Err(CoxeterError::NoJoin);
        }
    }
    let (u, v) = if u.length() >= v.length() { (u, v) } else { (v, u) };
    join_with(&model, u, v)
}

/// Join of two ball elements.
pub fn join_in_ball(ball: &Ball<'_>, u: u32, v: u32) -> Result<u32> {
    let (u, v) = if ball.length(u) >= ball.length(v) { (u, v) } else { (v, u) };
    join_with(ball, &u, &v)
}

/// Join by exhaustive search over the ball: the least common upper bound.
pub fn join_brute_in_ball(ball: &Ball<'_>, u: u32, v: u32) -> Result<u32> {
    let uppers: Vec<u32> = match (ball.mask(u), ball.mask(v)) {
        (Some(mu), Some(mv)) => {
            let need = mu | mv;
            (0..ball.len() as u32).filter(|&w| need & !ball.mask(w).unwrap_or(0) == 0).collect()
        }
        _ => {
            let need = ball.inversion_set(u).union(ball.inversion_set(v));
            (0..ball.len() as u32).filter(|&w| need.is_subset(ball.inversion_set(w))).collect()
        }
    };
    // ids are sorted by length, so the first upper bound is a minimal one
    let &least = uppers.first().ok_or(CoxeterError::NoJoinWithinCap(ball.cap()))?;
    if uppers.iter().all(|&w| ball.weak_leq(least, w)) {
        Ok(least)
    } else {
        Err(CoxeterError::NoJoinWithinCap(ball.cap()))
    }
}

pub fn join_brute(sys: &CoxeterSystem, u: &GroupElement, v: &GroupElement, length_cap: usize) -> Result<GroupElement> {
    let ball = Ball::build(sys, length_cap)?;
    let (Some(iu), Some(iv)) = (ball.id_of(u), ball.id_of(v)) else {
        return Err(CoxeterError::NoJoinWithinCap(length_cap));
    };
    Ok(ball.element(join_brute_in_ball(&ball, iu, iv)?).clone())
}

/// A piece of the Bruhat graph: edges `u -> ut` with `l(u) < l(ut)`.
#[derive(Debug, Clone)]
pub struct BruhatGraphSlice {
    pub vertices: Vec<GroupElement>,
    /// (source index, target index, reflection id)
    pub edges: Vec<(u32, u32, u32)>,
    pub label_filter: Option<ReflectionSet>,
}

impl BruhatGraphSlice {
    pub fn edge_count_by_label(&self) -> HashMap<u32, usize> {
        let mut counts = HashMap::new();
        for &(_, _, t) in &self.edges {
            *counts.entry(t).or_insert(0) += 1;
        }
        counts
    }
}

/// Bruhat graph on an explicit vertex set, using every registry reflection as a label.
pub fn bruhat_graph(sys: &CoxeterSystem, vertices: &[GroupElement]) -> Result<BruhatGraphSlice> {
    let mut vertices = vertices.to_vec();
    vertices.sort();
    vertices.dedup();
    let position: HashMap<&GroupElement, u32> = vertices.iter().zip(0..).collect();
    let mut edges = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        for t in 0..sys.num_positive_roots() as u32 {
            if !sys.act(u, SignedRoot::pos(t))?.positive {
                continue;
            }
            let ut = sys.multiply(u, sys.reflection_word(t))?;
            if let Some(&j) = position.get(&ut) {
                edges.push((i as u32, j, t));
            }
        }
    }
    Ok(BruhatGraphSlice { vertices, edges, label_filter: None })
}

/// Keeps only the edges labelled by `A` (the graph `Ω_A`).
pub fn restrict_labels(graph: &BruhatGraphSlice, a: &ReflectionSet) -> BruhatGraphSlice {
    let filter = match &graph.label_filter {
        Some(f) => f.intersection(a),
        None => a.clone(),
    };
    BruhatGraphSlice {
        vertices: graph.vertices.clone(),
        edges: graph.edges.iter().copied().filter(|&(_, _, t)| filter.contains(t)).collect(),
        label_filter: Some(filter),
    }
}

/// `u <=_B v` in a ball containing `v`: a directed Bruhat path from `u` to `v`.
pub fn bruhat_leq_in_ball(ball: &Ball<'_>, u: u32, v: u32) -> bool {
    let target_len = ball.length(v);
    let mut seen = vec![false; ball.len()];
    seen[u as usize] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            return true;
        }
        for &t in ball.labels() {
            if let Some(y) = ball.mul_reflection(x, t) {
                let ly = ball.length(y);
                if ly > ball.length(x) && ly <= target_len && !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    false
}

/// `u <=_B v`.
pub fn bruhat_leq(sys: &CoxeterSystem, u: &GroupElement, v: &GroupElement) -> Result<bool> {
    if u.length() > v.length() {
        return Ok(false);
    }
    let ball = Ball::build(sys, v.length())?;
    let iu = ball.id_of(u).expect("shorter than v");
    let iv = ball.id_of(v).expect("in its own ball");
    Ok(bruhat_leq_in_ball(&ball, iu, iv))
}

/// Graphviz rendering; edges are labelled by canonical reflection words.
pub fn to_dot(sys: &CoxeterSystem, graph: &BruhatGraphSlice) -> String {
    let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n");
    for (i, v) in graph.vertices.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", sys.format(v));
    }
    for &(a, b, t) in &graph.edges {
        let _ = writeln!(out, "  n{a} -> n{b} [label=\"{}\"];", sys.format(sys.reflection_word(t)));
    }
    out.push_str("}\n");
    out
}
