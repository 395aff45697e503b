//! Sweeps over whole finite groups. Each returns a [`CheckReport`]; work is spread
//! with rayon and merged in input order, so reports do not depend on scheduling.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::time::Instant;

use bruhat_core::closure::{infinite_closure_set, preclosure_set};
use bruhat_core::orders::join_in_ball;
use bruhat_core::type_a::{preclosure_type_a, to_reflection_set, to_transpositions};
use bruhat_core::{Ball, CoxeterSystem, ReflectionSet};
use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    All,
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetStrategy {
    Exhaustive,
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DyerMode {
    Preclosure,
    Infinite,
}

fn parse_sample(text: &str, prefix: &str) -> Result<(usize, u64), String> {
    let rest = text.strip_prefix(prefix).ok_or_else(|| format!("expected `{prefix}K:SEED`, got `{text}`"))?;
    let (k, seed) = rest.split_once(':').ok_or_else(|| format!("expected `{prefix}K:SEED`, got `{text}`"))?;
    Ok((k.parse().map_err(|e| format!("{e}"))?, seed.parse().map_err(|e| format!("{e}"))?))
}

impl FromStr for PairSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Self::All);
        }
        let (count, seed) = parse_sample(s, "sample:")?;
        Ok(Self::Sample { count, seed })
    }
}

impl FromStr for SubsetStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exhaustive" {
            return Ok(Self::Exhaustive);
        }
        let (count, seed) = parse_sample(s, "random:")?;
        Ok(Self::Random { count, seed })
    }
}

pub fn fmt_set(sys: &CoxeterSystem, set: &ReflectionSet) -> String {
    format!("{{{}}}", sys.format_reflection_set(set).join(", "))
}

fn fmt_id(ball: &Ball<'_>, id: u32) -> String {
    ball.system().format(ball.element(id))
}

pub fn pairs(ball: &Ball<'_>, selection: PairSelection) -> Vec<(u32, u32)> {
    let n = ball.len() as u32;
    match selection {
        PairSelection::All => (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect(),
        PairSelection::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect()
        }
    }
}

fn seed_of(selection: PairSelection) -> Option<u64> {
    match selection {
        PairSelection::All => None,
        PairSelection::Sample { seed, .. } => Some(seed),
    }
}

/// `[N(w)] = N(w)` for every element of the ball.
pub fn closure_theorem(ball: &Ball<'_>, group: &str) -> CheckReport {
    let start = Instant::now();
    let sys = ball.system();
    let mut report = CheckReport::new("check-closure-theorem", group);
    let results: Vec<(ReflectionSet, bool)> =
        (0..ball.len() as u32).into_par_iter().map(|w| preclosure_set(ball, ball.inversion_set(w))).collect();
    for (w, (closure, truncated)) in results.into_iter().enumerate() {
        let n = ball.inversion_set(w as u32);
        report.instances_checked += 1;
        report.truncated_any |= truncated;
        if closure != *n {
            report.fail(vec![fmt_id(ball, w as u32)], fmt_set(sys, n), fmt_set(sys, &closure));
        }
    }
    report.finish(start.elapsed())
}

/// `N(u ∨ v)` against `[N(u) ∪ N(v)]` (one pass) or `[N(u) ∪ N(v)]^∞`. In infinite mode the
/// pass count must also stay within `|T| - |N(u) ∪ N(v)| + 1`.
pub fn dyer(ball: &Ball<'_>, group: &str, mode: DyerMode, selection: PairSelection) -> CheckReport {
    let start = Instant::now();
    let sys = ball.system();
    let total = sys.num_positive_roots();
    let name = match mode {
        DyerMode::Preclosure => "check-dyer/preclosure",
        DyerMode::Infinite => "check-dyer/infinite",
    };
    let mut report = CheckReport::new(name, group);
    report.seed = seed_of(selection);
    let work = pairs(ball, selection);
    let results: Vec<_> = work
        .par_iter()
        .map(|&(u, v)| {
            let union = ball.inversion_set(u).union(ball.inversion_set(v));
            let join = join_in_ball(ball, u, v);
            let closure = match mode {
                DyerMode::Preclosure => {
                    let (c, t) = preclosure_set(ball, &union);
                    Ok((c, 1, t))
                }
                DyerMode::Infinite => infinite_closure_set(ball, &union).map(|(c, p)| (c, p, false)),
            };
            (union, join, closure)
        })
        .collect();
    let mut max_passes = 0;
    let mut histogram = std::collections::BTreeMap::<usize, u64>::new();
    for (&(u, v), (union, join, closure)) in work.iter().zip(results) {
        report.instances_checked += 1;
        let inputs = vec![fmt_id(ball, u), fmt_id(ball, v)];
        let join = match join {
            Ok(j) => j,
            Err(e) => {
                report.fail(inputs, "a join", e.to_string());
                continue;
            }
        };
        let (closure, passes, truncated) = match closure {
            Ok(c) => c,
            Err(e) => {
                report.truncated_any = true;
                report.fail(inputs, "an untruncated closure", e.to_string());
                continue;
            }
        };
        report.truncated_any |= truncated;
        max_passes = max_passes.max(passes);
        *histogram.entry(passes).or_default() += 1;
        let expected = ball.inversion_set(join);
        if closure != *expected {
            report.fail(inputs.clone(), fmt_set(sys, expected), fmt_set(sys, &closure));
        }
        if mode == DyerMode::Infinite && passes > total - union.len() + 1 {
            report.fail(inputs, format!("at most {} passes", total - union.len() + 1), format!("{passes} passes"));
        }
    }
    report.details = json!({ "max_passes": max_passes, "pass_histogram": histogram });
    report.finish(start.elapsed())
}

/// Subsets of `0..n` as sorted id lists, in size-then-lex order or seeded random.
pub struct SubsetStream {
    n: usize,
    max_size: usize,
    strategy: SubsetStrategy,
    size: usize,
    combos: Option<Box<dyn Iterator<Item = Vec<u32>> + Send>>,
    rng: ChaCha8Rng,
    emitted: usize,
}

impl SubsetStream {
    pub fn new(n: usize, strategy: SubsetStrategy, max_size: Option<usize>) -> Self {
        let seed = match strategy {
            SubsetStrategy::Random { seed, .. } => seed,
            SubsetStrategy::Exhaustive => 0,
        };
        Self {
            n,
            max_size: max_size.unwrap_or(n).min(n),
            strategy,
            size: 0,
            combos: None,
            rng: ChaCha8Rng::seed_from_u64(seed),
            emitted: 0,
        }
    }

    /// Number of subsets the stream yields.
    pub fn total(&self) -> u128 {
        match self.strategy {
            SubsetStrategy::Random { count, .. } => count as u128,
            SubsetStrategy::Exhaustive => (0..=self.max_size).map(|k| binomial(self.n, k)).sum(),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

impl Iterator for SubsetStream {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        match self.strategy {
            SubsetStrategy::Random { count, .. } => {
                if self.emitted == count {
                    return None;
                }
                self.emitted += 1;
                let ids = if self.max_size == self.n {
                    (0..self.n as u32).filter(|_| self.rng.random::<bool>()).collect()
                } else {
                    let k = self.rng.random_range(0..=self.max_size);
                    let mut ids: Vec<u32> = sample(&mut self.rng, self.n, k).into_iter().map(|i| i as u32).collect();
                    ids.sort_unstable();
                    ids
                };
                Some(ids)
            }
            SubsetStrategy::Exhaustive => loop {
                if let Some(c) = self.combos.as_mut().and_then(|c| c.next()) {
                    return Some(c);
                }
                if self.size > self.max_size {
                    return None;
                }
                let n = self.n as u32;
                self.combos = Some(Box::new((0..n).combinations(self.size)));
                self.size += 1;
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    pub max_size: Option<usize>,
    /// Maximum number of subsets to examine.
    pub budget: Option<u64>,
    /// Subsets to skip first, for resuming an interrupted search.
    pub start: u64,
    pub stop_at_first: bool,
    pub progress: bool,
}

/// Looks for `A` with `[[A]] ≠ [A]`. In type A the chain description of `[A]` is
/// compared with the graph search as well.
pub fn idempotence_search(
    ball: &Ball<'_>,
    group: &str,
    name: &str,
    strategy: SubsetStrategy,
    limits: SearchLimits,
) -> CheckReport {
    let start = Instant::now();
    let sys = ball.system();
    let n = sys.num_positive_roots();
    let type_a = sys.matrix().is_type_a();
    let mut report = CheckReport::new(name, group);
    if let SubsetStrategy::Random { seed, .. } = strategy {
        report.seed = Some(seed);
    }
    let mut stream = SubsetStream::new(n, strategy, limits.max_size).skip(limits.start as usize).peekable();
    let budget = limits.budget.unwrap_or(u64::MAX);
    let mut first_hit: Option<String> = None;
    let mut checked = 0u64;
    const BATCH: usize = 4096;
    loop {
        let take = BATCH.min((budget - checked) as usize);
        let batch: Vec<Vec<u32>> = stream.by_ref().take(take).collect();
        if batch.is_empty() {
            break;
        }
        let results: Vec<_> = batch
            .par_iter()
            .map(|ids| {
                let a = ReflectionSet::from_ids(n, ids.iter().copied());
                let (once, t1) = preclosure_set(ball, &a);
                let (twice, t2) = preclosure_set(ball, &once);
                let chains = type_a.then(|| {
                    let tr = to_transpositions(sys, &a).expect("type A");
                    let c = preclosure_type_a(sys.rank(), &tr).expect("in range");
                    to_reflection_set(sys, &c).expect("type A")
                });
                (a, once, twice, chains, t1 || t2)
            })
            .collect();
        for (a, once, twice, chains, truncated) in results {
            checked += 1;
            report.instances_checked += 1;
            report.truncated_any |= truncated;
            if twice != once {
                if first_hit.is_none() {
                    first_hit = Some(fmt_set(sys, &a));
                }
                report.fail(vec![fmt_set(sys, &a)], fmt_set(sys, &once), fmt_set(sys, &twice));
            }
            if let Some(c) = chains {
                if c != once {
                    report.fail(vec![fmt_set(sys, &a), "chains".into()], fmt_set(sys, &once), fmt_set(sys, &c));
                }
            }
            if limits.stop_at_first && first_hit.is_some() {
                break;
            }
        }
        if limits.progress {
            eprintln!("checked {} subsets", limits.start + checked);
        }
        if (limits.stop_at_first && first_hit.is_some()) || checked >= budget {
            break;
        }
    }
    let exhausted = stream.peek().is_none();
    if !exhausted && !(limits.stop_at_first && first_hit.is_some()) {
        report.truncated_any = true;
    }
    report.details = json!({
        "first_counterexample": first_hit,
        "next_start": limits.start + checked,
        "search_complete": exhausted,
    });
    report.finish(start.elapsed())
}

/// A single preclosure in type A computes joins: `N(u ∨ v) = [N(u) ∪ N(v)]` via chains.
pub fn type_a_join(ball: &Ball<'_>, group: &str, selection: PairSelection) -> CheckReport {
    let start = Instant::now();
    let sys = ball.system();
    let mut report = CheckReport::new("type-a-join", group);
    report.seed = seed_of(selection);
    let work = pairs(ball, selection);
    let results: Vec<_> = work
        .par_iter()
        .map(|&(u, v)| {
            let union = ball.inversion_set(u).union(ball.inversion_set(v));
            let chains: BTreeSet<_> =
                preclosure_type_a(sys.rank(), &to_transpositions(sys, &union).expect("type A")).expect("in range");
            let got = to_reflection_set(sys, &chains).expect("type A");
            (join_in_ball(ball, u, v).expect("finite group"), got)
        })
        .collect();
    for (&(u, v), (join, got)) in work.iter().zip(results) {
        report.instances_checked += 1;
        if *ball.inversion_set(join) != got {
            report.fail(
                vec![fmt_id(ball, u), fmt_id(ball, v)],
                fmt_set(sys, ball.inversion_set(join)),
                fmt_set(sys, &got),
            );
        }
    }
    report.finish(start.elapsed())
}
