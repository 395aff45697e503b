//! Worked examples with their known values. Expected words are canonicalized
//! before comparison, so any reduced word for the same element is accepted.

use std::collections::BTreeSet;
use std::time::Instant;

use bruhat_core::closure::{infinite_closure_in_ball, iterate_in_ball, preclosure_in_ball};
use bruhat_core::orders::join_r;
use bruhat_core::twisted::{
    check_acyclic, extremes, is_initial_section_finite, twisted_graph_in_ball, twisted_length_of, Acyclicity,
};
use bruhat_core::{Ball, CoxeterError, CoxeterSystem, ReflectionSet, Result, TwistDescriptor};

use crate::checks::{dyer, DyerMode, PairSelection};
use crate::report::CheckReport;

pub const EXAMPLES: &[&str] = &["a3", "h3", "f4", "a2-twisted", "ainf"];

pub const H3_SET: &str = "r, srs, tsrsrst, strstrstrstrs";
pub const F4_SET: &str = "utstu, sts, usrtsrtsu, utu, u, tsrutsrtsut, rstsrutsrtsutsr";
pub const A3_SET: &str = "r, rstsr, t";

fn words(sys: &CoxeterSystem, set: &ReflectionSet) -> Vec<String> {
    sys.format_reflection_set(set)
}

/// Canonical words of a comma-separated list of reflections.
fn canonical(sys: &CoxeterSystem, text: &str) -> Result<Vec<String>> {
    Ok(words(sys, &sys.parse_reflection_set(text)?))
}

fn canonical_elements(sys: &CoxeterSystem, list: &[&str]) -> Result<BTreeSet<String>> {
    list.iter().map(|w| Ok(sys.format(&sys.element_from_word(w)?))).collect()
}

fn whole(id: &str) -> Result<CoxeterSystem> {
    CoxeterSystem::preset(id, 64)
}

pub fn reproduce(example: &str) -> Result<CheckReport> {
    let start = Instant::now();
    let report = match example {
        "a3" => a3()?,
        "h3" => h3()?,
        "f4" => f4()?,
        "a2-twisted" => a2_twisted()?,
        "ainf" => ainf()?,
        other => return Err(CoxeterError::Parse(format!("unknown example `{other}`; expected one of {EXAMPLES:?}"))),
    };
    Ok(report.finish(start.elapsed()))
}

/// Iterates once and twice, comparing the newly added reflections each time.
fn two_iterates(group: &str, name: &str, set: &str, first: &str, second: &str) -> Result<CheckReport> {
    let sys = whole(group)?;
    let ball = Ball::whole(&sys)?;
    let mut report = CheckReport::new(name, group);
    let a = sys.parse_reflection_set(set)?;
    let once = iterate_in_ball(&ball, &a, 1);
    let twice = iterate_in_ball(&ball, &a, 2);
    report.truncated_any = once.truncated || twice.truncated;
    report.expect_eq("[A] \\ A", canonical(&sys, first)?, words(&sys, &once.closure.difference(&a)));
    report.expect_eq("[[A]] \\ [A]", canonical(&sys, second)?, words(&sys, &twice.closure.difference(&once.closure)));
    report.expect_eq("[A] closed", false, once.closure == twice.closure);
    Ok(report)
}

fn h3() -> Result<CheckReport> {
    let mut report = two_iterates("H3", "reproduce/h3", H3_SET, "srsrs", "rstrsrstrsr")?;
    let sys = whole("H3")?;
    let ball = Ball::whole(&sys)?;
    let a = sys.parse_reflection_set(H3_SET)?;
    let fix = infinite_closure_in_ball(&ball, &a)?;
    report.expect_eq("[A]^∞", canonical(&sys, &format!("{H3_SET}, srsrs, rstrsrstrsr"))?, words(&sys, &fix.closure));
    report.expect_eq("passes to the fixpoint", 3, fix.iterations);
    Ok(report)
}

fn f4() -> Result<CheckReport> {
    two_iterates("F4", "reproduce/f4", F4_SET, "ustsu, tsutsut", "utsrtsutsrutstu")
}

fn a3() -> Result<CheckReport> {
    let sys = whole("A3")?;
    let ball = Ball::whole(&sys)?;
    let mut report = CheckReport::new("reproduce/a3", "A3");
    let a = sys.parse_reflection_set(A3_SET)?;
    let r = preclosure_in_ball(&ball, &a);
    report.truncated_any = r.truncated;
    report.expect_eq("[A]", canonical(&sys, A3_SET)?, words(&sys, &r.closure));
    let reached: BTreeSet<String> = r.reachable.iter().map(|w| sys.format(w)).collect();
    report.expect_eq(
        "reachable",
        canonical_elements(&sys, &["e", "r", "t", "rt", "str", "stsr", "rstr", "rstsr"])?,
        reached,
    );
    report.expect_eq("A = N(rts)", sys.inversion_set(&sys.element_from_word("rts")?)?, a);
    Ok(report)
}

fn a2_twisted() -> Result<CheckReport> {
    let sys = whole("A2")?;
    let ball = Ball::whole(&sys)?;
    let mut report = CheckReport::new("reproduce/a2-twisted", "A2");
    let a = TwistDescriptor::finite(&sys, sys.element_from_word("st")?)?;
    let a_prime = TwistDescriptor::explicit(sys.parse_reflection_set("s, t")?, false);
    let table: [(&str, i64, i64); 6] =
        [("e", 0, 0), ("s", -1, -1), ("t", 1, -1), ("st", 0, 0), ("ts", -2, 0), ("sts", -1, -1)];
    for (w, la, lap) in table {
        let x = sys.element_from_word(w)?;
        report.expect_eq(&format!("l_A({w})"), la, twisted_length_of(&sys, &a, &x)?);
        report.expect_eq(&format!("l_A'({w})"), lap, twisted_length_of(&sys, &a_prime, &x)?);
    }
    let cycle = match check_acyclic(&sys, &a_prime, 3)? {
        Acyclicity::CycleFound(walk) => walk.iter().map(|w| sys.format(w)).collect(),
        other => vec![format!("{other:?}")],
    };
    let expected: Vec<String> = ["e", "sts", "ts", "t", "e"]
        .iter()
        .map(|w| Ok(sys.format(&sys.element_from_word(w)?)))
        .collect::<Result<_>>()?;
    report.expect_eq("A' cycle", expected, cycle);
    report.expect_eq("A acyclic", Acyclicity::Acyclic, check_acyclic(&sys, &a, 3)?);
    let graph = twisted_graph_in_ball(&ball, &a)?;
    let (bottoms, tops) = extremes(&graph);
    let fmt = |ids: Vec<u32>| ids.into_iter().map(|i| sys.format(ball.element(i))).collect::<Vec<_>>();
    report.expect_eq("bottom", vec!["ts".to_string()], fmt(bottoms));
    report.expect_eq("top", vec!["t".to_string()], fmt(tops));
    let witness = is_initial_section_finite(&sys, &sys.parse_reflection_set("s, sts")?)?.map(|w| sys.format(&w));
    report.expect_eq("{s, sts} = N(?)", Some("st".to_string()), witness);
    let not_initial = is_initial_section_finite(&sys, &sys.parse_reflection_set("s, t")?)?;
    report.expect_eq("{s, t} initial", false, not_initial.is_some());
    Ok(report)
}

fn ainf() -> Result<CheckReport> {
    let sys = CoxeterSystem::preset("AINF", 24)?;
    let mut report = CheckReport::new("reproduce/ainf", "AINF");
    let a = TwistDescriptor::infinite_dihedral(&sys, 0, 12)?;
    let table: [(&str, i64); 8] =
        [("e", 0), ("s", -1), ("ts", -2), ("sts", -3), ("t", 1), ("st", 2), ("tst", 3), ("stst", 4)];
    for (w, l) in table {
        report.expect_eq(&format!("l_A({w})"), l, twisted_length_of(&sys, &a, &sys.element_from_word(w)?)?);
    }
    let s = sys.generator(0);
    let t = sys.generator(1);
    report.expect_eq("s ∨ t", Err(CoxeterError::NoJoin), join_r(&sys, &s, &t, None).map(|w| sys.format(&w)));
    Ok(report)
}

/// Single preclosure computes joins in every finite dihedral group, and `s ∨ t`
/// does not exist when the bond is infinite.
pub fn dihedral(max_m: u32) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for m in 2..=max_m {
        let id = format!("I2({m})");
        let sys = CoxeterSystem::preset(&id, 64)?;
        let ball = Ball::whole(&sys)?;
        reports.push(dyer(&ball, &id, DyerMode::Preclosure, PairSelection::All));
    }
    let start = Instant::now();
    let sys = CoxeterSystem::preset("AINF", 16)?;
    let mut report = CheckReport::new("dihedral/no-join", "AINF");
    let got = join_r(&sys, &sys.generator(0), &sys.generator(1), None).map(|w| sys.format(&w));
    report.expect_eq("s ∨ t", Err(CoxeterError::NoJoin), got);
    reports.push(report.finish(start.elapsed()));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_reproduces() {
        for ex in EXAMPLES {
            let r = reproduce(ex).unwrap();
            assert!(r.passed(), "{ex}: {:?}", r.failures);
            assert!(!r.truncated_any);
        }
        assert!(reproduce("e8").is_err());
    }

    #[test]
    fn dihedral_identity_holds() {
        let reports = dihedral(5).unwrap();
        assert_eq!(reports.len(), 5);
        assert!(reports.iter().all(CheckReport::passed));
        assert_eq!(reports[1].instances_checked, 36);
    }
}
