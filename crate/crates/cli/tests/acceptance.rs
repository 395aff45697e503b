//! Acceptance run: one PASS/FAIL line per criterion with its runtime and limit.

use std::collections::{HashMap, VecDeque};
use std::process::ExitCode;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use bruhat_cli::checks::{self, DyerMode, PairSelection, SearchLimits, SubsetStrategy};
use bruhat_cli::golden;
use bruhat_cli::CheckReport;
use bruhat_core::closure::preclosure_set;
use bruhat_core::orders::{join_brute_in_ball, join_in_ball};
use bruhat_core::twisted::{
    twisted_contains, twisted_graph_in_ball, twisted_inversion, twisted_length, twisted_length_of, TwistDescriptor,
};
use bruhat_core::{Ball, CoxeterSystem, ReflectionSet, SignedRoot};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FINITE: &[&str] = &["A1", "A2", "A3", "A4", "A5", "B3", "B4", "D4", "H3", "H4", "F4"];
const CASES: usize = 10_000;

fn ball(id: &str) -> &'static Ball<'static> {
    static CACHE: OnceLock<Mutex<HashMap<String, &'static Ball<'static>>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache.entry(id.to_string()).or_insert_with(|| {
        let sys: &'static CoxeterSystem = Box::leak(Box::new(CoxeterSystem::preset(id, 64).unwrap()));
        Box::leak(Box::new(Ball::whole(sys).unwrap()))
    })
}

/// Outcome of one sweep: cases examined and a description of the first few failures.
#[derive(Default)]
struct Tally {
    cases: u64,
    failures: Vec<String>,
    failure_count: u64,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn absorb(&mut self, r: &CheckReport) {
        self.cases += r.instances_checked;
        self.failure_count += r.failure_count;
        if r.truncated_any {
            self.failure_count += 1;
            self.failures.push(format!("{} on {} was truncated", r.check_name, r.group));
        }
        for f in r.failures.iter().take(5) {
            self.failures
                .push(format!("{} on {}: {:?} expected {} got {}", r.check_name, r.group, f.inputs, f.expected, f.got));
        }
    }

    fn ok(&self) -> bool {
        self.failure_count == 0
    }
}

fn criterion(n: u32, title: &str, limit: Duration, run: impl FnOnce() -> Tally) -> bool {
    let start = Instant::now();
    let tally = run();
    let elapsed = start.elapsed();
    let ok = tally.ok() && elapsed <= limit;
    println!(
        "criterion {n:>2}: {}  {title}  [{} cases, {} failures]  ({:.2}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        tally.cases,
        tally.failure_count,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for f in &tally.failures {
        println!("      {f}");
    }
    if elapsed > limit {
        println!("      over the time limit");
    }
    ok
}

fn subsweep(name: &str, tally: &mut Tally, run: impl FnOnce() -> Tally) {
    let start = Instant::now();
    let t = run();
    println!("      {name}: {} cases, {} failures ({:.2}s)", t.cases, t.failure_count, start.elapsed().as_secs_f64());
    let enough = t.cases >= CASES as u64;
    tally.cases += t.cases;
    tally.failure_count += t.failure_count;
    tally.failures.extend(t.failures.into_iter().map(|f| format!("{name}: {f}")));
    if !enough {
        tally.failure_count += 1;
        tally.failures.push(format!("{name}: fewer than {CASES} cases"));
    }
}

fn reproduce(example: &str) -> Tally {
    let mut t = Tally::default();
    t.absorb(&golden::reproduce(example).unwrap());
    t
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> ReflectionSet {
    let k = rng.random_range(0..=n);
    ReflectionSet::from_ids(n, sample(rng, n, k).into_iter().map(|i| i as u32))
}

fn pick(rng: &mut ChaCha8Rng) -> &'static Ball<'static> {
    ball(FINITE[rng.random_range(0..FINITE.len())])
}

fn random_element(rng: &mut ChaCha8Rng, b: &Ball<'_>) -> u32 {
    rng.random_range(0..b.len() as u32)
}

fn conjugate(b: &Ball<'_>, x: u32, set: &ReflectionSet) -> ReflectionSet {
    ReflectionSet::from_ids(set.universe(), set.iter().map(|t| b.act(x, SignedRoot::pos(t)).unwrap().id))
}

fn cocycle() -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut t = Tally::default();
    for _ in 0..CASES {
        let b = pick(&mut rng);
        let (u, v) = (random_element(&mut rng, b), random_element(&mut rng, b));
        let uv = b.mul(u, v).unwrap();
        let expected = b.inversion_set(u).symmetric_difference(&conjugate(b, u, b.inversion_set(v)));
        t.check(*b.inversion_set(uv) == expected, || format!("u={u} v={v}"));
    }
    t
}

fn inversion_counts() -> Tally {
    let mut t = Tally::default();
    for id in FINITE {
        let b = ball(id);
        let sys = b.system();
        for (w, x) in b.elements().iter().enumerate() {
            let n = b.inversion_set(w as u32);
            t.check(n.len() == x.length() && *n == sys.inversion_set(x).unwrap(), || format!("{id} {}", sys.format(x)));
        }
    }
    t
}

fn preclosure_axioms() -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut t = Tally::default();
    for _ in 0..CASES {
        let b = pick(&mut rng);
        let n = b.system().num_positive_roots();
        let a = random_set(&mut rng, n);
        let bigger = a.union(&random_set(&mut rng, n));
        let (ca, t1) = preclosure_set(b, &a);
        let (cb, t2) = preclosure_set(b, &bigger);
        t.check(!t1 && !t2 && a.is_subset(&ca) && ca.is_subset(&cb), || format!("A={:?}", a.ids()));
    }
    t
}

fn union_inclusion() -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut t = Tally::default();
    for _ in 0..CASES {
        let b = pick(&mut rng);
        let n = b.system().num_positive_roots();
        let (a, other) = (random_set(&mut rng, n), random_set(&mut rng, n));
        let lhs = preclosure_set(b, &a).0.union(&other);
        let rhs = preclosure_set(b, &a.union(&other)).0;
        t.check(lhs.is_subset(&rhs), || format!("A={:?} B={:?}", a.ids(), other.ids()));
    }
    t
}

fn bounded_union() -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut t = Tally::default();
    for _ in 0..CASES {
        let b = pick(&mut rng);
        let rank = b.system().rank();
        let (u, v) = (random_element(&mut rng, b), random_element(&mut rng, b));
        // an arbitrary upper bound: the join followed by a random ascent
        let mut w = join_in_ball(b, u, v).unwrap();
        for _ in 0..rng.random_range(0..6) {
            let ascents: Vec<usize> = (0..rank).filter(|&s| !b.is_right_descent(w, s)).collect();
            if ascents.is_empty() {
                break;
            }
            w = b.right_mul(w, ascents[rng.random_range(0..ascents.len())]).unwrap();
        }
        let union = b.inversion_set(u).union(b.inversion_set(v));
        let ok = b.weak_leq(u, w) && b.weak_leq(v, w) && preclosure_set(b, &union).0.is_subset(b.inversion_set(w));
        t.check(ok, || format!("u={u} v={v} w={w}"));
    }
    t
}

/// The reflection swap `t ∉ w·A ⇔ t ∈ tw·A` and twisted-length identities, for arbitrary `A`, against the
/// definition `l_A(w) = l(w) - 2 |N(w^{-1}) ∩ A|` evaluated on the ball.
fn twisted_identities() -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut t = Tally::default();
    for _ in 0..CASES {
        let b = pick(&mut rng);
        let sys = b.system();
        let n = sys.num_positive_roots();
        let set = random_set(&mut rng, n);
        let a = TwistDescriptor::explicit(set.clone(), false);
        let [u, v, w] = [0; 3].map(|_| random_element(&mut rng, b));
        let (eu, ev, ew) = (b.element(u), b.element(v), b.element(w));
        let r = rng.random_range(0..n as u32);
        let l = |x, y| twisted_length(sys, &a, x, y).unwrap();
        let def =
            |x: u32| b.length(x) as i64 - 2 * b.inversion_set(b.inverse(x).unwrap()).intersection(&set).len() as i64;
        let tw = sys.multiply(sys.reflection_word(r), ew).unwrap();
        let va = TwistDescriptor::explicit(twisted_inversion(sys, &a, ev).unwrap(), false);
        let ua = TwistDescriptor::explicit(twisted_inversion(sys, &a, eu).unwrap(), false);
        let wv = sys.multiply(ew, &sys.inverse(ev).unwrap()).unwrap();
        let vu = sys.multiply(ev, eu).unwrap();
        let tref = sys.reflection_word(r);
        let ta = TwistDescriptor::explicit(twisted_inversion(sys, &a, tref).unwrap(), false);
        let ok = twisted_length_of(sys, &a, ew).unwrap() == def(w)
            && !twisted_contains(sys, &a, ew, r).unwrap() == twisted_contains(sys, &a, &tw, r).unwrap()
            && l(ev, ew) == twisted_length_of(sys, &va, &wv).unwrap()
            && l(eu, ev) + l(ev, ew) == l(eu, ew)
            && twisted_length_of(sys, &a, eu).unwrap() + twisted_length_of(sys, &ua, ev).unwrap()
                == twisted_length_of(sys, &a, &vu).unwrap()
            && l(ev, ew) == def(w) - def(v)
            && l(eu, ev) == -l(ev, eu)
            && twisted_length_of(sys, &ta, tref).unwrap() == -twisted_length_of(sys, &a, tref).unwrap();
        t.check(ok, || format!("{} A={:?} u={u} v={v} w={w} t={r}", sys.matrix().rank(), set.ids()));
    }
    t
}

/// Twisted lengths, graph edges, reachability of `e` and `[A]` for `A = N(w)`, every `w`
/// (H4: a seeded sample of sections).
fn initial_sections() -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut t = Tally::default();
    for id in FINITE {
        let b = ball(id);
        let sys = b.system();
        let n = sys.num_positive_roots();
        let size = b.len();
        let inverse: Vec<u32> = (0..size as u32).map(|x| b.inverse(x).unwrap()).collect();
        let refl: Vec<u32> = (0..n as u32).map(|r| b.id_of(sys.reflection_word(r)).unwrap()).collect();
        // left multiplication by each reflection
        let lmul: Vec<Vec<u32>> =
            refl.iter().map(|&r| (0..size as u32).map(|x| b.mul(r, x).unwrap()).collect()).collect();
        let sections: Vec<u32> = if *id == "H4" {
            sample(&mut rng, size, 24).into_iter().map(|i| i as u32).collect()
        } else {
            (0..size as u32).collect()
        };
        for w in sections {
            let a_mask = b.mask(w).unwrap();
            let a = TwistDescriptor::finite(sys, b.element(w).clone()).unwrap();
            let la: Vec<i64> = (0..size)
                .map(|x| b.length(x as u32) as i64 - 2 * i64::from((b.mask(inverse[x]).unwrap() & a_mask).count_ones()))
                .collect();
            let graph = twisted_graph_in_ball(b, &a).unwrap();
            let mut adj = vec![Vec::new(); size];
            let mut radj = vec![Vec::new(); size];
            for e in &graph.edges {
                // edges raise the twisted length
                t.check(la[e.target as usize] > la[e.source as usize], || {
                    format!("{id} w={w} edge {}->{}", e.source, e.target)
                });
                adj[e.source as usize].push(e.target);
                radj[e.target as usize].push(e.source);
            }
            // l_A(x, tx) > 0 iff t ∉ x·A, where x·N(w) = N(xw)
            for x in 0..size as u32 {
                let xa = b.mask(b.mul(x, w).unwrap()).unwrap();
                for r in 0..n {
                    let rises = la[lmul[r][x as usize] as usize] > la[x as usize];
                    t.check(rises == (xa >> r & 1 == 0), || format!("{id} w={w} x={x} t={r}"));
                }
            }
            let below_e = reach(&radj, 0);
            let closure = preclosure_set(b, b.inversion_set(w)).0;
            for r in 0..n {
                let in_a = a_mask >> r & 1 == 1;
                let negative = la[refl[r] as usize] < 0;
                // t ∈ A iff l_A(t) < 0 iff t reaches e iff t ∈ [A]
                t.check(
                    negative == in_a && negative == below_e[refl[r] as usize] && negative == closure.contains(r as u32),
                    || format!("{id} w={w} t={r}"),
                );
            }
            // reachability never lowers l_A: every source in small groups, one seeded source otherwise
            let sources: Vec<u32> =
                if size <= 192 { (0..size as u32).collect() } else { vec![rng.random_range(0..size as u32)] };
            for u in sources {
                let seen = reach(&adj, u);
                let ok = (0..size).all(|v| !seen[v] || la[u as usize] <= la[v]);
                t.check(ok, || format!("{id} w={w} u={u}"));
            }
        }
    }
    t
}

fn reach(adj: &[Vec<u32>], from: u32) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[from as usize] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `x [I] x^{-1} = [x I x^{-1}]` for every pair `I ⊆ S` and every `x ∈ W^I`.
fn parabolic_conjugation() -> Tally {
    let mut t = Tally::default();
    for id in FINITE {
        let b = ball(id);
        let sys = b.system();
        let (rank, n) = (sys.rank(), sys.num_positive_roots());
        for i in 0..rank {
            for j in i + 1..rank {
                let parabolic = ReflectionSet::from_ids(n, [i as u32, j as u32]);
                let closed = preclosure_set(b, &parabolic).0;
                for x in 0..b.len() as u32 {
                    if b.is_right_descent(x, i) || b.is_right_descent(x, j) {
                        continue;
                    }
                    let lhs = conjugate(b, x, &closed);
                    let rhs = preclosure_set(b, &conjugate(b, x, &parabolic)).0;
                    t.check(lhs == rhs, || format!("{id} I={{{i},{j}}} x={}", sys.format(b.element(x))));
                }
            }
        }
    }
    t
}

fn join_vs_brute() -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut t = Tally::default();
    for id in FINITE {
        let b = ball(id);
        let pairs: Vec<(u32, u32)> = if *id == "H4" {
            (0..CASES).map(|_| (random_element(&mut rng, b), random_element(&mut rng, b))).collect()
        } else {
            checks::pairs(b, PairSelection::All)
        };
        for (u, v) in pairs {
            let ok = join_in_ball(b, u, v).unwrap() == join_brute_in_ball(b, u, v).unwrap();
            t.check(ok, || format!("{id} u={u} v={v}"));
        }
    }
    t
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut all = true;

    all &= criterion(1, "H3 preclosure and its second iterate", secs(1), || reproduce("h3"));
    all &= criterion(2, "F4 preclosure and its second iterate", secs(5), || reproduce("f4"));
    all &= criterion(3, "A3 fixed set and reachable vertices", secs(1), || reproduce("a3"));
    all &= criterion(4, "[N(w)] = N(w) on A3, B3, H3, F4", secs(120), || {
        let mut t = Tally::default();
        for id in ["A3", "B3", "H3", "F4"] {
            t.absorb(&checks::closure_theorem(ball(id), id));
        }
        t
    });
    all &= criterion(5, "N(u ∨ v) = [N(u) ∪ N(v)]^∞ on all A3 and H3 pairs, with pass bound", secs(600), || {
        let mut t = Tally::default();
        for id in ["A3", "H3"] {
            t.absorb(&checks::dyer(ball(id), id, DyerMode::Infinite, PairSelection::All));
        }
        t
    });
    all &= criterion(6, "[[A]] = [A] and chains agree: A3 exhaustive, A4 10^4 seeded", secs(300), || {
        let mut t = Tally::default();
        let limits = SearchLimits::default();
        t.absorb(&checks::idempotence_search(ball("A3"), "A3", "type-a", SubsetStrategy::Exhaustive, limits));
        let random = SubsetStrategy::Random { count: CASES, seed: 8 };
        t.absorb(&checks::idempotence_search(ball("A4"), "A4", "type-a", random, limits));
        t
    });
    all &= criterion(7, "single preclosure gives the join: A3 all pairs, A4 10^3 sampled", secs(300), || {
        let mut t = Tally::default();
        t.absorb(&checks::type_a_join(ball("A3"), "A3", PairSelection::All));
        t.absorb(&checks::type_a_join(ball("A4"), "A4", PairSelection::Sample { count: 1000, seed: 9 }));
        t
    });
    all &= criterion(8, "dihedral I2(2..7) preclosure identity; no join of s, t when m = ∞", secs(60), || {
        let mut t = Tally::default();
        for r in golden::dihedral(7).unwrap() {
            t.absorb(&r);
        }
        t
    });
    all &= criterion(9, "A2 twisted tables, cycle, extremes; infinite dihedral lengths", secs(1), || {
        let mut t = reproduce("a2-twisted");
        let ainf = reproduce("ainf");
        t.cases += ainf.cases;
        t.failure_count += ainf.failure_count;
        t.failures.extend(ainf.failures);
        t
    });
    all &= criterion(10, "property suites", secs(900), || {
        let mut t = Tally::default();
        subsweep("reflection cocycle", &mut t, cocycle);
        subsweep("|N(w)| = l(w)", &mut t, inversion_counts);
        subsweep("preclosure extensive and monotone", &mut t, preclosure_axioms);
        subsweep("[A] ∪ B ⊆ [A ∪ B]", &mut t, union_inclusion);
        subsweep("u, v ≤ w implies [N(u) ∪ N(v)] ⊆ N(w)", &mut t, bounded_union);
        subsweep("twisted length identities", &mut t, twisted_identities);
        subsweep("initial sections: twisted lengths, graph and closure", &mut t, initial_sections);
        subsweep("x [I] x^-1 = [x I x^-1]", &mut t, parabolic_conjugation);
        subsweep("join = brute-force join", &mut t, join_vs_brute);
        t
    });

    println!("acceptance: {}", if all { "all criteria passed" } else { "some criteria FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
