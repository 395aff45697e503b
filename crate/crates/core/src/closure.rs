//! Bruhat preclosure `[A]` and its iterates, including the infinite closure `[A]^∞`.

use std::collections::BTreeMap;

use crate::ball::Ball;
use crate::error::{CoxeterError, Result};
use crate::reflection::ReflectionSet;
use crate::system::{CoxeterSystem, GroupElement};

#[derive(Debug, Clone)]
pub struct PreclosureResult {
    pub input: ReflectionSet,
    pub closure: ReflectionSet,
    /// Vertices reached from `e` by `A`-paths in the last pass, sorted by (length, lex).
    pub reachable: Vec<GroupElement>,
    /// An `A`-path reached a vertex whose successor fell outside the length cap.
    pub truncated: bool,
    /// Number of preclosure passes performed.
    pub iterations: usize,
    /// For each reflection of the closure, the labels of the first path found from `e`.
    pub witnesses: BTreeMap<u32, Vec<u32>>,
}

/// `(vertex, label)` that first reached each vertex.
type Parents = Vec<Option<(u32, u32)>>;

/// One BFS pass over the ball. Returns the reached ids (ascending), the parent
/// pointers `(vertex, label)` and the truncation flag.
fn reach(ball: &Ball<'_>, a: &ReflectionSet) -> (Vec<u32>, Parents, bool) {
    let n = ball.len();
    let mut parent: Parents = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut truncated = false;
    let mut reached = Vec::new();
    // every edge raises length, and ids are sorted by length, so ascending ids is a
    // topological order
    for x in 0..n as u32 {
        if !seen[x as usize] {
            continue;
        }
        reached.push(x);
        let lx = ball.length(x);
        for t in a.iter() {
            match ball.mul_reflection(x, t) {
                Some(y) => {
                    if ball.length(y) > lx && !seen[y as usize] {
                        seen[y as usize] = true;
                        parent[y as usize] = Some((x, t));
                    }
                }
                None => {
                    // the product is outside the ball, hence longer than x
                    truncated = true;
                }
            }
        }
    }
    (reached, parent, truncated)
}

/// `[A]` and the truncation flag, without witnesses.
pub fn preclosure_set(ball: &Ball<'_>, a: &ReflectionSet) -> (ReflectionSet, bool) {
    let (reached, _, truncated) = reach(ball, a);
    let mut closure = ReflectionSet::empty(ball.system().num_positive_roots());
    for id in reached {
        if let Some(t) = ball.reflection_id(id) {
            closure.insert(t);
        }
    }
    (closure, truncated)
}

/// `[A]` on a prebuilt ball, with reachable set and witness paths.
pub fn preclosure_in_ball(ball: &Ball<'_>, a: &ReflectionSet) -> PreclosureResult {
    let (reached, parent, truncated) = reach(ball, a);
    let mut closure = ReflectionSet::empty(ball.system().num_positive_roots());
    let mut witnesses = BTreeMap::new();
    for &id in &reached {
        if let Some(t) = ball.reflection_id(id) {
            closure.insert(t);
            let mut labels = Vec::new();
            let mut cur = id;
            while let Some((p, l)) = parent[cur as usize] {
                labels.push(l);
                cur = p;
            }
            labels.reverse();
            witnesses.insert(t, labels);
        }
    }
    PreclosureResult {
        input: a.clone(),
        closure,
        reachable: reached.iter().map(|&id| ball.element(id).clone()).collect(),
        truncated,
        iterations: 1,
        witnesses,
    }
}

fn ball_for(sys: &CoxeterSystem, length_cap: usize) -> Result<Ball<'_>> {
    let cap = if sys.is_complete() { length_cap.min(sys.num_positive_roots()) } else { length_cap };
    Ball::build(sys, cap)
}

/// `[A]`: reflections reachable from `e` by paths `u -> ut`, `t ∈ A`, `l(u) < l(ut)`,
/// through elements of length at most `length_cap`.
pub fn bruhat_preclosure(sys: &CoxeterSystem, a: &ReflectionSet, length_cap: usize) -> Result<PreclosureResult> {
    Ok(preclosure_in_ball(&ball_for(sys, length_cap)?, a))
}

/// `n`-fold preclosure; `n = 0` returns `A`.
pub fn iterate_in_ball(ball: &Ball<'_>, a: &ReflectionSet, n: usize) -> PreclosureResult {
    let mut result = PreclosureResult {
        input: a.clone(),
        closure: a.clone(),
        reachable: vec![GroupElement::identity()],
        truncated: false,
        iterations: 0,
        witnesses: BTreeMap::new(),
    };
    for _ in 0..n {
        let next = preclosure_in_ball(ball, &result.closure);
        result = PreclosureResult {
            input: a.clone(),
            truncated: result.truncated || next.truncated,
            iterations: result.iterations + 1,
            ..next
        };
    }
    result
}

pub fn iterate_preclosure(
    sys: &CoxeterSystem,
    a: &ReflectionSet,
    n: usize,
    length_cap: usize,
) -> Result<PreclosureResult> {
    Ok(iterate_in_ball(&ball_for(sys, length_cap)?, a, n))
}

/// `[A]^∞` and the number of passes, the last of which confirms the fixpoint.
pub fn infinite_closure_set(ball: &Ball<'_>, a: &ReflectionSet) -> Result<(ReflectionSet, usize)> {
    let mut current = a.clone();
    let mut passes = 0;
    loop {
        let (next, truncated) = preclosure_set(ball, &current);
        passes += 1;
        if truncated {
            return Err(CoxeterError::TruncationUnsound);
        }
        if next == current {
            return Ok((current, passes));
        }
        current = next;
    }
}

pub fn infinite_closure_in_ball(ball: &Ball<'_>, a: &ReflectionSet) -> Result<PreclosureResult> {
    let mut result = preclosure_in_ball(ball, a);
    loop {
        if result.truncated {
            return Err(CoxeterError::TruncationUnsound);
        }
        if result.closure == result.input {
            return Ok(PreclosureResult { input: a.clone(), ..result });
        }
        let iterations = result.iterations;
        result = preclosure_in_ball(ball, &result.closure);
        result.iterations = iterations + 1;
    }
}

pub fn infinite_closure(sys: &CoxeterSystem, a: &ReflectionSet, length_cap: usize) -> Result<PreclosureResult> {
    infinite_closure_in_ball(&ball_for(sys, length_cap)?, a)
}

/// `[A] = A` with an untruncated pass.
pub fn is_closed(sys: &CoxeterSystem, a: &ReflectionSet, length_cap: usize) -> Result<bool> {
    let r = bruhat_preclosure(sys, a, length_cap)?;
    if r.truncated {
        return Err(CoxeterError::TruncationUnsound);
    }
    Ok(r.closure == *a)
}
