//! Exhaustive property suites run against a single graph.

use serde::Serialize;

use crate::block::block_profiles;
use crate::distinguish::{kappa, opposite_corner_pair, relevant_set};
use crate::error::Result;
use crate::graph::Graph;
use crate::profile::Profile;
use crate::random::{nested_set, rng};
use crate::separation::{
    corners, crossing_set, enumerate_separations, is_nested, CornerLabel, Restrict, Separation, SeparationSet,
};
use crate::tangle::maximal_tangles;
use crate::tree::{build_td_from_nested, induced_separations, verify_td};

const MAX_REPORTED: usize = 20;

/// Outcome of one suite.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl OracleReport {
    fn new(suite: &str) -> Self {
        OracleReport {
            suite: suite.into(),
            ..Default::default()
        }
    }

    fn violation(&mut self, msg: impl FnOnce() -> String) {
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(msg());
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Names accepted by [`run_suite`].
pub const SUITES: [&str; 4] = ["corners", "crossing-inequality", "opposite-corners", "roundtrip"];

pub fn run_suite(g: &Graph, suite: &str, max_order: usize, seed: u64) -> Result<OracleReport> {
    match suite {
        "corners" => corner_suite(g, max_order),
        "crossing-inequality" => crossing_inequality_suite(g, max_order),
        "opposite-corners" => opposite_corner_suite(g),
        "roundtrip" => roundtrip_suite(g, max_order, seed, 20),
        other => Err(crate::error::Error::precondition(format!("unknown oracle suite {other:?}"))),
    }
}

fn crossing_pairs(universe: &[Separation]) -> Vec<(Separation, Separation)> {
    let mut out = Vec::new();
    for (i, &s1) in universe.iter().enumerate() {
        for &s2 in &universe[i + 1..] {
            if !is_nested(s1, s2) {
                out.push((s1, s2));
            }
        }
    }
    out
}

/// Order identity of opposite corner separations and the adjacent-corner
/// lemma over every crossing pair of proper separations of bounded order.
pub fn corner_suite(g: &Graph, max_order: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new("corners");
    let universe: Vec<Separation> = enumerate_separations(g, max_order, Restrict::Proper)?.into_iter().collect();
    for (s1, s2) in crossing_pairs(&universe) {
        let c = corners(s1, s2);
        for (x, y) in c.opposite_pairs() {
            report.checked += 1;
            if x.order() + y.order() != s1.order() + s2.order() {
                report.violation(|| format!("orders of {x:?} and {y:?} do not sum to those of {s1:?} and {s2:?}"));
            }
        }
        let seps = CornerLabel::ALL.map(|l| c.separation(l));
        for &s3 in &universe {
            let with1 = is_nested(s3, s1);
            let with2 = is_nested(s3, s2);
            let nested: [bool; 4] = seps.map(|x| is_nested(x, s3));
            if with1 && with2 {
                report.checked += 1;
                if nested.iter().any(|&b| !b) {
                    report.violation(|| format!("{s3:?} is nested with {s1:?} and {s2:?} but not with all their corners"));
                }
            }
            if with1 || with2 {
                report.checked += 1;
                let adjacent = (0..4).any(|i| {
                    (0..4).any(|j| i != j && CornerLabel::ALL[i].is_adjacent(CornerLabel::ALL[j]) && nested[i] && nested[j])
                });
                if !adjacent {
                    report.violation(|| format!("{s3:?} is nested with no two adjacent corners of {s1:?} and {s2:?}"));
                }
            }
        }
    }
    Ok(report)
}

/// Crossing-set inclusions and the crossing-number inequality for opposite
/// corner separations.
pub fn crossing_inequality_suite(g: &Graph, max_order: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new("crossing-inequality");
    let set = enumerate_separations(g, max_order, Restrict::Proper)?;
    let universe: Vec<Separation> = set.iter().copied().collect();
    for (s1, s2) in crossing_pairs(&universe) {
        let c1 = crossing_set(s1, &set);
        let c2 = crossing_set(s2, &set);
        let both: SeparationSet = c1.intersection(&c2).copied().collect();
        let either: SeparationSet = c1.union(&c2).copied().collect();
        for (x, y) in corners(s1, s2).opposite_pairs() {
            report.checked += 1;
            let d1 = crossing_set(x, &set);
            let d2 = crossing_set(y, &set);
            let meet: SeparationSet = d1.intersection(&d2).copied().collect();
            let join: SeparationSet = d1.union(&d2).copied().collect();
            if !meet.is_subset(&both) {
                report.violation(|| format!("common crossings of {x:?}, {y:?} escape those of {s1:?}, {s2:?}"));
            }
            if !(join.is_subset(&either) && join.len() < either.len()) {
                report.violation(|| format!("crossings of {x:?}, {y:?} are not strictly inside those of {s1:?}, {s2:?}"));
            }
            if d1.len() + d2.len() >= c1.len() + c2.len() {
                report.violation(|| {
                    format!(
                        "crossing numbers {} + {} of {x:?}, {y:?} are not below {} + {}",
                        d1.len(),
                        d2.len(),
                        c1.len(),
                        c2.len()
                    )
                });
            }
        }
    }
    Ok(report)
}

fn distinct(mut ps: Vec<Profile>) -> Vec<Profile> {
    ps.sort_by(|a, b| a.oriented.cmp(&b.oriented));
    ps.dedup_by(|a, b| a.oriented == b.oriented);
    ps
}

/// Profile families used by the opposite-corner suite: block profiles for
/// each `k` up to 4 and all maximal tangles of order 2 to 4, each truncated
/// to `κ + 1`.
pub fn profile_families(g: &Graph) -> Result<Vec<Vec<Profile>>> {
    let mut families = Vec::new();
    for k in 1..=4 {
        families.push(block_profiles(g, k)?);
    }
    families.push(maximal_tangles(g, 2..=4)?);
    let mut out = Vec::new();
    for f in families {
        let Ok(kp) = kappa(&f) else { continue };
        let truncated = distinct(f.iter().filter(|p| p.bound > kp).map(|p| p.truncate(kp + 1)).collect());
        if truncated.len() >= 2 {
            out.push(truncated);
        }
    }
    Ok(out)
}

/// Every two relevant separations of order `κ` have opposite corner
/// separations that are relevant too.
pub fn opposite_corner_suite(g: &Graph) -> Result<OracleReport> {
    let mut report = OracleReport::new("opposite-corners");
    for family in profile_families(g)? {
        let k = kappa(&family)?;
        let relevant: Vec<Separation> = relevant_set(k, &family).into_iter().collect();
        for (i, &s1) in relevant.iter().enumerate() {
            for &s2 in &relevant[i + 1..] {
                report.checked += 1;
                if let Err(e) = opposite_corner_pair(g, &family, s1, s2) {
                    report.violation(|| format!("{s1:?}, {s2:?}: {e}"));
                }
            }
        }
    }
    Ok(report)
}

/// Random nested sets survive the trip through a tree-decomposition.
pub fn roundtrip_suite(g: &Graph, max_order: usize, seed: u64, trials: usize) -> Result<OracleReport> {
    let mut report = OracleReport::new("roundtrip");
    let mut r = rng(seed);
    for _ in 0..trials {
        let n = nested_set(&mut r, g, max_order, 8);
        report.checked += 1;
        let td = build_td_from_nested(g, &n)?;
        if !verify_td(g, &td)?.ok() {
            report.violation(|| format!("decomposition of {n:?} is not valid"));
        }
        if induced_separations(&td) != n {
            report.violation(|| format!("round trip of {n:?} gave {:?}", induced_separations(&td)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn suites_pass_on_fixtures() {
        for g in fixtures::all() {
            for suite in SUITES {
                let r = run_suite(&g, suite, 3, 0).unwrap();
                assert!(r.ok(), "{} on {:?}: {:?}", suite, g.name(), r.violations);
            }
        }
    }
}
