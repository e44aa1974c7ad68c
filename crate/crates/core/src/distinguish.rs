//! Distinguishing separations and the minimum-crossing nested set.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::{check_profile_axioms, Profile};
use crate::separation::{
    component_separation, corners, crossing_number, degenerated_separations, first_crossing_pair,
    is_left_connected, Separation, SeparationSet,
};

/// `s ∈ P` and `s⁻¹ ∈ Q`, or the other way round.
pub fn distinguishes(s: Separation, p: &Profile, q: &Profile) -> bool {
    (p.contains(s) && q.contains(s.reverse())) || (p.contains(s.reverse()) && q.contains(s))
}

/// Least order of a separation distinguishing `p` and `q`.
pub fn lambda(p: &Profile, q: &Profile) -> Option<usize> {
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    small
        .oriented
        .iter()
        .filter(|s| large.contains(s.reverse()))
        .map(|s| s.order())
        .min()
}

pub fn distinguishes_efficiently(s: Separation, p: &Profile, q: &Profile) -> bool {
    distinguishes(s, p, q) && lambda(p, q) == Some(s.order())
}

/// Least order of a separation distinguishing two members of `profiles`.
pub fn kappa(profiles: &[Profile]) -> Result<usize> {
    let mut best: Option<usize> = None;
    for (i, p) in profiles.iter().enumerate() {
        for q in &profiles[i + 1..] {
            if let Some(l) = lambda(p, q) {
                best = Some(best.map_or(l, |b| b.min(l)));
            }
        }
    }
    best.ok_or(Error::NoKappa)
}

fn between(p: &Profile, q: &Profile, pred: impl Fn(Separation) -> bool, out: &mut SeparationSet) {
    for &s in &p.oriented {
        if pred(s) && q.contains(s.reverse()) {
            out.insert(s);
            out.insert(s.reverse());
        }
    }
}

/// Separations of order at most `k` distinguishing two members.
pub fn relevant_set(k: usize, profiles: &[Profile]) -> SeparationSet {
    let mut out = SeparationSet::new();
    for (i, p) in profiles.iter().enumerate() {
        for q in &profiles[i + 1..] {
            between(p, q, |s| s.order() <= k, &mut out);
        }
    }
    out
}

/// Separations of order `κ` distinguishing some pair efficiently.
pub fn efficient_set(profiles: &[Profile]) -> Result<SeparationSet> {
    let k = kappa(profiles)?;
    let mut out = SeparationSet::new();
    for (i, p) in profiles.iter().enumerate() {
        for q in &profiles[i + 1..] {
            if lambda(p, q) == Some(k) {
                between(p, q, |s| s.order() == k, &mut out);
            }
        }
    }
    Ok(out)
}

/// Members of [`efficient_set`] distinguishing `profiles[i]` and `profiles[j]` efficiently.
pub fn efficient_between(profiles: &[Profile], i: usize, j: usize) -> Result<SeparationSet> {
    let k = kappa(profiles)?;
    let (p, q) = (&profiles[i], &profiles[j]);
    let mut out = SeparationSet::new();
    if lambda(p, q) == Some(k) {
        between(p, q, |s| s.order() == k, &mut out);
    }
    Ok(out)
}

/// Separations degenerated relative to some member of the relevant set of order `k`.
pub fn degenerator(g: &Graph, k: usize, profiles: &[Profile]) -> SeparationSet {
    let mut out = SeparationSet::new();
    for s in relevant_set(k, profiles) {
        out.extend(degenerated_separations(g, s));
    }
    out
}

/// No relevant separation of order `κ` has a degenerated component.
pub fn is_well_separable(g: &Graph, profiles: &[Profile]) -> Result<bool> {
    let k = kappa(profiles)?;
    Ok(degenerator(g, k, profiles).is_empty())
}

/// Two opposite corner separations of `s1`, `s2` lying in the relevant set of order `κ`.
pub fn opposite_corner_pair(
    _g: &Graph,
    profiles: &[Profile],
    s1: Separation,
    s2: Separation,
) -> Result<(Separation, Separation)> {
    let k = kappa(profiles)?;
    let relevant = relevant_set(k, profiles);
    if !relevant.contains(&s1) || !relevant.contains(&s2) {
        return Err(Error::precondition(format!(
            "{s1:?} and {s2:?} must both be relevant of order {k}"
        )));
    }
    let c = corners(s1, s2);
    for (x, y) in c.opposite_pairs() {
        if relevant.contains(&x) && relevant.contains(&y) {
            if x.order() != k || y.order() != k {
                return Err(Error::lemma(format!(
                    "opposite corners {x:?}, {y:?} do not both have order {k}"
                )));
            }
            return Ok((x, y));
        }
    }
    Err(Error::lemma(format!(
        "no opposite corner pair of {s1:?} and {s2:?} is relevant"
    )))
}

/// `(X ∪ N(X), V ∖ X)` for the first component `X` of `A ∖ B` (by least
/// vertex) for which it still distinguishes the pair efficiently.
pub fn component_refine(
    g: &Graph,
    profiles: &[Profile],
    s: Separation,
    i: usize,
    j: usize,
) -> Result<Separation> {
    let eff = efficient_between(profiles, i, j)?;
    if !eff.contains(&s) {
        return Err(Error::precondition(format!(
            "{s:?} does not distinguish profiles {i} and {j} efficiently"
        )));
    }
    for x in g.components_within(s.left()) {
        let t = component_separation(g, x);
        if eff.contains(&t) {
            return Ok(t);
        }
    }
    Err(Error::lemma(format!(
        "no component of A\\B of {s:?} yields an efficient distinguisher"
    )))
}

/// Checks the hypotheses of [`min_crossing_nested_set_at`] at order `k`,
/// optionally including the robust-principal requirement.
fn check_min_crossing_preconditions(
    g: &Graph,
    profiles: &[Profile],
    k: usize,
    check_axioms: bool,
) -> Result<()> {
    if profiles.len() < 2 {
        return Err(Error::precondition("at least two profiles are required"));
    }
    if let Some(p) = profiles.iter().find(|p| p.bound <= k) {
        return Err(Error::precondition(format!(
            "profile with bound {} is not a ({})-profile",
            p.bound,
            k + 1
        )));
    }
    if k > 0 && !relevant_set(k - 1, profiles).is_empty() {
        return Err(Error::precondition(format!(
            "profiles are distinguished below order {k}"
        )));
    }
    let degenerate = degenerator(g, k, profiles);
    if let Some(s) = degenerate.iter().next() {
        return Err(Error::precondition(format!(
            "graph is not well-separable: {s:?} is degenerated"
        )));
    }
    if check_axioms {
        for (i, p) in profiles.iter().enumerate() {
            let r = check_profile_axioms(g, p)?;
            if !(r.principal && r.robust && r.consistent && r.p2) {
                return Err(Error::precondition(format!(
                    "profile {i} is not a robust principal profile: {r:?}"
                )));
            }
        }
    }
    Ok(())
}

/// The left-connected relevant separations of order `κ` with minimum
/// crossing number among themselves.
pub fn min_crossing_nested_set(g: &Graph, profiles: &[Profile]) -> Result<SeparationSet> {
    let k = kappa(profiles)?;
    check_min_crossing_preconditions(g, profiles, k, true)?;
    min_crossing_core(g, profiles, k)
}

/// As [`min_crossing_nested_set`] at an explicit order, for use on torsos
/// whose profiles were already validated.
pub fn min_crossing_nested_set_at(g: &Graph, profiles: &[Profile], k: usize) -> Result<SeparationSet> {
    check_min_crossing_preconditions(g, profiles, k, false)?;
    min_crossing_core(g, profiles, k)
}

fn min_crossing_core(g: &Graph, profiles: &[Profile], k: usize) -> Result<SeparationSet> {
    let relevant = relevant_set(k, profiles);
    if relevant.is_empty() {
        return Err(Error::precondition(format!("no relevant separation of order {k}")));
    }
    let lc: SeparationSet = relevant
        .iter()
        .copied()
        .filter(|&s| is_left_connected(g, s))
        .collect();
    let numbers: Vec<(Separation, usize)> = lc.iter().map(|&s| (s, crossing_number(s, &lc))).collect();
    let min = numbers.iter().map(|&(_, c)| c).min();
    let out: SeparationSet = match min {
        None => SeparationSet::new(),
        Some(m) => numbers
            .into_iter()
            .filter(|&(_, c)| c == m)
            .map(|(s, _)| s)
            .collect(),
    };
    if out.is_empty() {
        return Err(Error::lemma("minimum-crossing set is empty"));
    }
    if let Some((a, b)) = first_crossing_pair(&out) {
        return Err(Error::lemma(format!(
            "minimum-crossing set is not nested: {a:?} crosses {b:?}"
        )));
    }
    Ok(out)
}
