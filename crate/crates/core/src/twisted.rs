//! Twisted inversion sets `w·A`, twisted lengths and twisted Bruhat graphs.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::ball::Ball;
use crate::error::{CoxeterError, Result};
use crate::reflection::ReflectionSet;
use crate::roots::SignedRoot;
use crate::system::{CoxeterSystem, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistKind {
    /// `A = N(witness)`.
    Finite {
        witness: GroupElement,
    },
    /// Rank-2 system with `m = ∞`: all reflections `r` with `l(s r) < l(r)`.
    InfiniteDihedral {
        generator: usize,
    },
    Explicit {
        set: ReflectionSet,
        claimed_initial: bool,
    },
}

#[derive(Debug, Clone)]
pub struct TwistDescriptor {
    pub kind: TwistKind,
    /// Reflections longer than this are outside the window of an infinite twist.
    pub truncation_length: usize,
    set: Option<ReflectionSet>,
}

impl TwistDescriptor {
    pub fn finite(sys: &CoxeterSystem, witness: GroupElement) -> Result<Self> {
        let set = sys.inversion_set(&witness)?;
        Ok(Self { kind: TwistKind::Finite { witness }, truncation_length: usize::MAX, set: Some(set) })
    }

    pub fn explicit(set: ReflectionSet, claimed_initial: bool) -> Self {
        Self {
            kind: TwistKind::Explicit { set: set.clone(), claimed_initial },
            truncation_length: usize::MAX,
            set: Some(set),
        }
    }

    pub fn empty(sys: &CoxeterSystem) -> Self {
        Self::explicit(sys.empty_set(), true)
    }

    /// The reflections whose canonical word begins with `generator`.
    pub fn infinite_dihedral(sys: &CoxeterSystem, generator: usize, truncation_length: usize) -> Result<Self> {
        if sys.rank() != 2 || sys.matrix().bond(0, 1).is_some() {
            return Err(CoxeterError::InvalidTwist(
                "the infinite-dihedral family needs a rank-2 system with an infinite bond".into(),
            ));
        }
        if generator >= 2 {
            return Err(CoxeterError::InvalidTwist(format!("no generator #{generator}")));
        }
        Ok(Self { kind: TwistKind::InfiniteDihedral { generator }, truncation_length, set: None })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.kind, TwistKind::InfiniteDihedral { .. })
    }

    /// `t ∈ A`.
    pub fn contains(&self, sys: &CoxeterSystem, t: u32) -> Result<bool> {
        match (&self.set, &self.kind) {
            (Some(set), _) => Ok(set.contains(t)),
            (None, TwistKind::InfiniteDihedral { generator }) => {
                let word = sys.reflection_word(t);
                if word.length() > self.truncation_length {
                    return Err(CoxeterError::TruncationUnsound);
                }
                Ok(word.word()[0] as usize == *generator)
            }
            (None, _) => unreachable!("finite kinds carry their set"),
        }
    }

    /// The members of `A` of canonical length at most `length_cap` (all of `A` when finite).
    pub fn members(&self, sys: &CoxeterSystem, length_cap: usize) -> Result<ReflectionSet> {
        match &self.set {
            Some(set) => Ok(set.clone()),
            None => {
                let mut out = sys.empty_set();
                let cap = length_cap.min(self.truncation_length);
                for t in 0..sys.num_positive_roots() as u32 {
                    if sys.reflection_word(t).length() <= cap && self.contains(sys, t)? {
                        out.insert(t);
                    }
                }
                Ok(out)
            }
        }
    }
}

fn window_error(a: &TwistDescriptor, e: CoxeterError) -> CoxeterError {
    match e {
        CoxeterError::RootDepthExceeded { .. } if a.is_infinite() => CoxeterError::TruncationUnsound,
        e => e,
    }
}

/// `r ∈ w·A`, i.e. `r ∈ N(w)` xor `w^{-1} r w ∈ A`.
pub fn twisted_contains(sys: &CoxeterSystem, a: &TwistDescriptor, w: &GroupElement, r: u32) -> Result<bool> {
    let back = sys.act_inverse(w, SignedRoot::pos(r)).map_err(|e| window_error(a, e))?;
    Ok(!back.positive ^ a.contains(sys, back.id)?)
}

/// `w·A = N(w) ⊖ wAw^{-1}`. For an infinite twist only reflections of canonical
/// length at most `truncation_length` are listed.
pub fn twisted_inversion(sys: &CoxeterSystem, a: &TwistDescriptor, w: &GroupElement) -> Result<ReflectionSet> {
    let n = sys.inversion_set(w)?;
    match &a.set {
        Some(set) => {
            let mut conj = sys.empty_set();
            for t in set.iter() {
                conj.insert(sys.conjugate_reflection(w, t)?);
            }
            Ok(n.symmetric_difference(&conj))
        }
        None => {
            let mut out = sys.empty_set();
            for r in 0..sys.num_positive_roots() as u32 {
                if sys.reflection_word(r).length() <= a.truncation_length && twisted_contains(sys, a, w, r)? {
                    out.insert(r);
                }
            }
            Ok(out)
        }
    }
}

/// `l_A(v, w) = l(w v^{-1}) - 2 |N(v w^{-1}) ∩ v·A|`.
pub fn twisted_length(sys: &CoxeterSystem, a: &TwistDescriptor, v: &GroupElement, w: &GroupElement) -> Result<i64> {
    let vi = sys.inverse(v)?;
    let wi = sys.inverse(w)?;
    let wv = sys.multiply(w, &vi)?;
    let vw = sys.multiply(v, &wi)?;
    let mut hits = 0i64;
    for r in sys.inversion_set(&vw).map_err(|e| window_error(a, e))?.iter() {
        if twisted_contains(sys, a, v, r)? {
            hits += 1;
        }
    }
    Ok(wv.length() as i64 - 2 * hits)
}

/// `l_A(w) = l_A(e, w)`.
pub fn twisted_length_of(sys: &CoxeterSystem, a: &TwistDescriptor, w: &GroupElement) -> Result<i64> {
    twisted_length(sys, a, &GroupElement::identity(), w)
}

/// Whether `(u, v)` is an edge of the twisted Bruhat graph: `v = ut` and either
/// `t ∉ A` with `l(u) < l(v)`, or `t ∈ A` with `l(u) > l(v)`.
pub fn twisted_edge(sys: &CoxeterSystem, a: &TwistDescriptor, u: &GroupElement, v: &GroupElement) -> Result<bool> {
    let t = sys.multiply(&sys.inverse(u)?, v)?;
    let t = sys.reflection_id(&t).ok_or_else(|| CoxeterError::NoConnectingReflection(sys.format(u), sys.format(v)))?;
    let up = u.length() < v.length();
    Ok(if a.contains(sys, t)? { !up } else { up })
}

#[derive(Debug, Clone)]
pub struct TwistedEdge {
    pub source: u32,
    pub target: u32,
    /// `t` with `target = source * t`.
    pub label: u32,
    /// `t' = source * t * source^{-1}`, so `target = t' * source`.
    pub left_label: u32,
    /// The edge points down in length (its label lies in `A`).
    pub reversed: bool,
}

#[derive(Debug, Clone)]
pub struct TwistedGraph {
    pub vertices: Vec<GroupElement>,
    /// Out-edges of each vertex sorted by left label.
    pub edges: Vec<TwistedEdge>,
    /// The vertex set is the whole group, so verdicts on it are exact.
    pub exact: bool,
}

impl TwistedGraph {
    fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.source as usize].push(e.target);
        }
        adj
    }
}

/// Twisted graph on all elements of a ball.
pub fn twisted_graph_in_ball(ball: &Ball<'_>, a: &TwistDescriptor) -> Result<TwistedGraph> {
    let sys = ball.system();
    let mut in_a = HashMap::new();
    for &t in ball.labels() {
        in_a.insert(t, a.contains(sys, t)?);
    }
    let mut edges = Vec::new();
    for u in 0..ball.len() as u32 {
        let mut out = Vec::new();
        for &t in ball.labels() {
            let Some(v) = ball.mul_reflection(u, t) else { continue };
            let up = ball.length(u) < ball.length(v);
            if up != in_a[&t] {
                let left_label = ball.act(u, SignedRoot::pos(t))?.id;
                out.push(TwistedEdge { source: u, target: v, label: t, left_label, reversed: !up });
            }
        }
        out.sort_by_key(|e| e.left_label);
        edges.extend(out);
    }
    Ok(TwistedGraph { vertices: ball.elements().to_vec(), edges, exact: ball.is_whole_group() })
}

/// Twisted graph on an explicit vertex set.
pub fn twisted_graph(sys: &CoxeterSystem, a: &TwistDescriptor, vertices: &[GroupElement]) -> Result<TwistedGraph> {
    let mut vertices = vertices.to_vec();
    vertices.sort();
    vertices.dedup();
    let position: HashMap<&GroupElement, u32> = vertices.iter().zip(0..).collect();
    let mut edges = Vec::new();
    for (i, u) in vertices.iter().enumerate() {
        let mut out = Vec::new();
        for t in 0..sys.num_positive_roots() as u32 {
            let img = sys.act(u, SignedRoot::pos(t))?;
            let v = sys.multiply(u, sys.reflection_word(t))?;
            let Some(&j) = position.get(&v) else { continue };
            if img.positive != a.contains(sys, t)? {
                out.push(TwistedEdge {
                    source: i as u32,
                    target: j,
                    label: t,
                    left_label: img.id,
                    reversed: !img.positive,
                });
            }
        }
        out.sort_by_key(|e| e.left_label);
        edges.extend(out);
    }
    let exact = sys.is_complete() && vertices.len() == crate::ball::Ball::whole(sys).map(|b| b.len()).unwrap_or(0);
    Ok(TwistedGraph { vertices, edges, exact })
}

/// Three-valued verdict for searches that may be cut off by a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// `u <=_A v`: a directed path in the twisted graph on elements of length at most
/// `length_window`.
pub fn twisted_leq(
    sys: &CoxeterSystem,
    a: &TwistDescriptor,
    u: &GroupElement,
    v: &GroupElement,
    length_window: usize,
) -> Result<Verdict> {
    let cap = if sys.is_complete() { length_window.min(sys.num_positive_roots()) } else { length_window };
    let ball = Ball::build(sys, cap)?;
    let graph = twisted_graph_in_ball(&ball, a)?;
    let (Some(iu), Some(iv)) = (ball.id_of(u), ball.id_of(v)) else {
        return Ok(Verdict::Unknown);
    };
    Ok(reaches(&graph, iu, iv))
}

/// Reachability inside a prebuilt twisted graph.
pub fn reaches(graph: &TwistedGraph, from: u32, to: u32) -> Verdict {
    let adj = graph.adjacency();
    let mut seen = vec![false; graph.vertices.len()];
    seen[from as usize] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            return Verdict::Yes;
        }
        for &y in &adj[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    if graph.exact {
        Verdict::No
    } else {
        Verdict::Unknown
    }
}

/// Recognizes a finite initial section: returns `w` with `N(w) = A`, or `None`.
///
/// Peels off the smallest simple reflection `s ∈ A` and recurses on `s(A∖{s})s`.
pub fn is_initial_section_finite(sys: &CoxeterSystem, a: &ReflectionSet) -> Result<Option<GroupElement>> {
    let mut current = a.clone();
    let mut word = Vec::new();
    while !current.is_empty() {
        let Some(s) = current.iter().next().filter(|&s| (s as usize) < sys.rank()) else {
            return Ok(None);
        };
        let mut next = sys.empty_set();
        for b in current.iter().filter(|&b| b != s) {
            next.insert(sys.registry().apply_generator(s as usize, SignedRoot::pos(b))?.id);
        }
        word.push(s as u8);
        current = next;
    }
    Ok(Some(sys.element_from_letters(&word)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acyclicity {
    Acyclic,
    /// A closed walk `v_0 -> v_1 -> ... -> v_0`, listed with the start repeated.
    CycleFound(Vec<GroupElement>),
    Unknown,
}

/// Cycle detection on a twisted graph. The reported cycle is a shortest one through
/// the smallest vertex lying on any cycle, exploring out-edges by left label.
pub fn find_cycle(graph: &TwistedGraph) -> Option<Vec<u32>> {
    let n = graph.vertices.len();
    let adj = graph.adjacency();
    let mut indeg = vec![0usize; n];
    for e in &graph.edges {
        indeg[e.target as usize] += 1;
    }
    let mut queue: VecDeque<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
    let mut removed = vec![false; n];
    while let Some(x) = queue.pop_front() {
        removed[x as usize] = true;
        for &y in &adj[x as usize] {
            indeg[y as usize] -= 1;
            if indeg[y as usize] == 0 {
                queue.push_back(y);
            }
        }
    }
    for start in (0..n as u32).filter(|&v| !removed[v as usize]) {
        let mut parent: Vec<Option<u32>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([start]);
        seen[start as usize] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x as usize] {
                if y == start {
                    let mut walk = vec![x];
                    let mut cur = x;
                    while cur != start {
                        cur = parent[cur as usize].expect("on the BFS tree");
                        walk.push(cur);
                    }
                    walk.reverse();
                    walk.push(start);
                    return Some(walk);
                }
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = Some(x);
                    queue.push_back(y);
                }
            }
        }
    }
    None
}

/// Cycle check on the twisted graph over elements of length at most `length_window`.
pub fn check_acyclic(sys: &CoxeterSystem, a: &TwistDescriptor, length_window: usize) -> Result<Acyclicity> {
    let cap = if sys.is_complete() { length_window.min(sys.num_positive_roots()) } else { length_window };
    let ball = Ball::build(sys, cap)?;
    let graph = twisted_graph_in_ball(&ball, a)?;
    Ok(match find_cycle(&graph) {
        Some(walk) => Acyclicity::CycleFound(walk.iter().map(|&i| graph.vertices[i as usize].clone()).collect()),
        None if graph.exact => Acyclicity::Acyclic,
        None => Acyclicity::Unknown,
    })
}

/// Vertices without incoming (bottom) or outgoing (top) edges.
pub fn extremes(graph: &TwistedGraph) -> (Vec<u32>, Vec<u32>) {
    let n = graph.vertices.len();
    let mut has_in = vec![false; n];
    let mut has_out = vec![false; n];
    for e in &graph.edges {
        has_out[e.source as usize] = true;
        has_in[e.target as usize] = true;
    }
    let bottoms = (0..n as u32).filter(|&v| !has_in[v as usize]).collect();
    let tops = (0..n as u32).filter(|&v| !has_out[v as usize]).collect();
    (bottoms, tops)
}

/// Graphviz rendering; edges whose label lies in `A` are drawn dashed and red.
pub fn twisted_to_dot(sys: &CoxeterSystem, graph: &TwistedGraph) -> String {
    let mut out = String::from("digraph twisted {\n");
    for (i, v) in graph.vertices.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", sys.format(v));
    }
    for e in &graph.edges {
        let style = if e.reversed { " style=dashed color=red" } else { "" };
        let _ = writeln!(
            out,
            "  n{} -> n{} [label=\"{}\"{style}];",
            e.source,
            e.target,
            sys.format(sys.reflection_word(e.label))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> CoxeterSystem {
        CoxeterSystem::preset("A2", 8).unwrap()
    }

    fn el(sys: &CoxeterSystem, w: &str) -> GroupElement {
        sys.element_from_word(w).unwrap()
    }

    const A2_ORDER: [&str; 6] = ["e", "s", "t", "st", "ts", "sts"];

    #[test]
    fn a2_length_tables() {
        let sys = a2();
        let a = TwistDescriptor::finite(&sys, el(&sys, "st")).unwrap();
        let got: Vec<i64> = A2_ORDER.iter().map(|w| twisted_length_of(&sys, &a, &el(&sys, w)).unwrap()).collect();
        assert_eq!(got, vec![0, -1, 1, 0, -2, -1]);
        let a2 = TwistDescriptor::explicit(sys.parse_reflection_set("s, t").unwrap(), false);
        let got: Vec<i64> = A2_ORDER.iter().map(|w| twisted_length_of(&sys, &a2, &el(&sys, w)).unwrap()).collect();
        assert_eq!(got, vec![0, -1, -1, 0, 0, -1]);
        let empty = TwistDescriptor::empty(&sys);
        for w in A2_ORDER {
            let w = el(&sys, w);
            assert_eq!(twisted_length_of(&sys, &empty, &w).unwrap(), w.length() as i64);
        }
    }

    #[test]
    fn twisted_inversion_examples() {
        let sys = a2();
        let st = el(&sys, "st");
        let empty = TwistDescriptor::empty(&sys);
        assert_eq!(twisted_inversion(&sys, &empty, &st).unwrap(), sys.inversion_set(&st).unwrap());
        let a = TwistDescriptor::finite(&sys, st.clone()).unwrap();
        assert_eq!(twisted_inversion(&sys, &a, &GroupElement::identity()).unwrap(), sys.inversion_set(&st).unwrap());
        let stst = sys.multiply(&st, &st).unwrap();
        assert_eq!(twisted_inversion(&sys, &a, &st).unwrap(), sys.inversion_set(&stst).unwrap());
    }

    #[test]
    fn a2_twisted_graph() {
        let sys = a2();
        let a = TwistDescriptor::finite(&sys, el(&sys, "st")).unwrap();
        assert!(twisted_edge(&sys, &a, &el(&sys, "s"), &GroupElement::identity()).unwrap());
        assert!(twisted_edge(&sys, &a, &el(&sys, "sts"), &GroupElement::identity()).unwrap());
        assert!(twisted_edge(&sys, &a, &GroupElement::identity(), &el(&sys, "t")).unwrap());
        assert!(matches!(
            twisted_edge(&sys, &a, &GroupElement::identity(), &el(&sys, "st")),
            Err(CoxeterError::NoConnectingReflection(..))
        ));
        assert_eq!(check_acyclic(&sys, &a, 3).unwrap(), Acyclicity::Acyclic);
        let ball = Ball::whole(&sys).unwrap();
        let g = twisted_graph_in_ball(&ball, &a).unwrap();
        let (bottoms, tops) = extremes(&g);
        assert_eq!(bottoms.iter().map(|&i| sys.format(&g.vertices[i as usize])).collect::<Vec<_>>(), vec!["ts"]);
        assert_eq!(tops.iter().map(|&i| sys.format(&g.vertices[i as usize])).collect::<Vec<_>>(), vec!["t"]);
        assert_eq!(twisted_leq(&sys, &a, &el(&sys, "ts"), &el(&sys, "t"), 3).unwrap(), Verdict::Yes);
        assert_eq!(twisted_leq(&sys, &a, &el(&sys, "t"), &el(&sys, "ts"), 3).unwrap(), Verdict::No);
        assert!(twisted_to_dot(&sys, &g).contains("style=dashed"));
    }

    #[test]
    fn a2_non_initial_has_the_four_cycle() {
        let sys = a2();
        let a = TwistDescriptor::explicit(sys.parse_reflection_set("s, t").unwrap(), false);
        let cycle = match check_acyclic(&sys, &a, 3).unwrap() {
            Acyclicity::CycleFound(c) => c,
            other => panic!("{other:?}"),
        };
        let words: Vec<String> = cycle.iter().map(|w| sys.format(w)).collect();
        assert_eq!(words, vec!["e", "sts", "ts", "t", "e"]);
    }

    #[test]
    fn standard_graph_is_acyclic() {
        let sys = CoxeterSystem::preset("A3", 16).unwrap();
        assert_eq!(check_acyclic(&sys, &TwistDescriptor::empty(&sys), 6).unwrap(), Acyclicity::Acyclic);
    }

    #[test]
    fn recognition() {
        let sys = a2();
        let w = is_initial_section_finite(&sys, &sys.parse_reflection_set("s, sts").unwrap()).unwrap();
        assert_eq!(w, Some(el(&sys, "st")));
        assert_eq!(is_initial_section_finite(&sys, &sys.parse_reflection_set("s, t").unwrap()).unwrap(), None);
        assert_eq!(is_initial_section_finite(&sys, &sys.empty_set()).unwrap(), Some(GroupElement::identity()));
    }

    #[test]
    fn infinite_dihedral_lengths() {
        let sys = CoxeterSystem::preset("AINF", 40).unwrap();
        let a = TwistDescriptor::infinite_dihedral(&sys, 0, 40).unwrap();
        let got: Vec<i64> = ["s", "ts", "sts", "t", "st", "tst", "stst"]
            .iter()
            .map(|w| twisted_length_of(&sys, &a, &el(&sys, w)).unwrap())
            .collect();
        assert_eq!(got, vec![-1, -2, -3, 1, 2, 3, 4]);
        assert!(TwistDescriptor::infinite_dihedral(&CoxeterSystem::preset("A2", 4).unwrap(), 0, 5).is_err());
        assert_eq!(twisted_leq(&sys, &a, &el(&sys, "s"), &GroupElement::identity(), 8).unwrap(), Verdict::Yes);
        assert_eq!(check_acyclic(&sys, &a, 8).unwrap(), Acyclicity::Unknown);
    }
}
