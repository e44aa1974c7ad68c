//! Torsos of parts, and moving separations and profiles between a graph
//! and a torso.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::profile::{check_profile_axioms, Profile, Provenance};
use crate::separation::{component_separation, Separation};

/// A part of a host graph together with its torso graph.
///
/// The torso graph lives on `0..part.len()`; `relabel[i]` is the host vertex
/// behind torso vertex `i`. `toward` lists host separations `(A, B)` with the
/// part inside `B`; a profile lives in the part when it contains all of them.
#[derive(Clone, Debug)]
pub struct Torso {
    pub host: Graph,
    pub part: VertexSet,
    pub adhesion_sets: Vec<VertexSet>,
    pub graph: Graph,
    pub relabel: Vec<usize>,
    pub toward: Vec<Separation>,
}

impl Serialize for Torso {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            part: VertexSet,
            adhesion_sets: &'a [VertexSet],
            graph: &'a Graph,
            relabel: &'a [usize],
        }
        Json {
            part: self.part,
            adhesion_sets: &self.adhesion_sets,
            graph: &self.graph,
            relabel: &self.relabel,
        }
        .serialize(serializer)
    }
}

/// Torso of `part` with a clique on each adhesion set. Profiles are taken to
/// live in the part when they orient every component of `g - part` away
/// from it.
pub fn build_torso(g: &Graph, part: VertexSet, adhesion_sets: &[VertexSet]) -> Result<Torso> {
    if !part.is_subset(g.vertices()) {
        return Err(Error::InvalidTorso(format!("{part:?} is not a vertex set of the graph")));
    }
    let toward = g
        .components(part)
        .into_iter()
        .map(|c| component_separation(g, c))
        .collect();
    build_torso_toward(g, part, adhesion_sets, toward)
}

/// As [`build_torso`] with an explicit list of separations pointing at the part.
pub fn build_torso_toward(
    g: &Graph,
    part: VertexSet,
    adhesion_sets: &[VertexSet],
    toward: Vec<Separation>,
) -> Result<Torso> {
    if !part.is_subset(g.vertices()) {
        return Err(Error::InvalidTorso(format!("{part:?} is not a vertex set of the graph")));
    }
    let mut sets: Vec<VertexSet> = adhesion_sets.to_vec();
    sets.sort();
    sets.dedup();
    if let Some(s) = sets.iter().find(|s| !s.is_subset(part)) {
        return Err(Error::InvalidTorso(format!("adhesion set {s:?} is not inside part {part:?}")));
    }
    let (mut graph, relabel) = g.induced(part);
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in relabel.iter().enumerate() {
        index[v] = i;
    }
    for &s in &sets {
        graph.add_clique(s.map(&index));
    }
    Ok(Torso {
        host: g.clone(),
        part,
        adhesion_sets: sets,
        graph,
        relabel,
        toward,
    })
}

impl Torso {
    /// Host vertex set to torso coordinates. Vertices outside the part are dropped.
    pub fn to_local(&self, s: VertexSet) -> VertexSet {
        self.relabel
            .iter()
            .enumerate()
            .filter(|&(_, &v)| s.contains(v))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn to_host(&self, s: VertexSet) -> VertexSet {
        s.map(&self.relabel)
    }

    pub fn separation_to_host(&self, s: Separation) -> Separation {
        s.map_table(&self.relabel)
    }

    pub fn adhesion(&self) -> usize {
        self.adhesion_sets.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// True if every separation in `toward` belongs to `p`.
    pub fn hosts(&self, p: &Profile) -> bool {
        self.toward.iter().all(|&s| p.contains(s))
    }
}

/// `(A ∩ part, B ∩ part)` in torso coordinates, or `None` if the separation
/// splits an adhesion set.
pub fn induce_separation(t: &Torso, s: Separation) -> Option<Separation> {
    if t
        .adhesion_sets
        .iter()
        .any(|&x| !x.is_subset(s.a) && !x.is_subset(s.b))
    {
        return None;
    }
    Some(Separation::new_unchecked(
        t.to_local(s.a & t.part),
        t.to_local(s.b & t.part),
    ))
}

fn lift_with(t: &Torso, s_t: Separation, to_a: impl Fn(VertexSet, Separation) -> bool) -> Result<Separation> {
    let local = t.separation_to_host(s_t);
    let mut a = local.a;
    let mut b = local.b;
    for c in t.host.components(t.part) {
        if to_a(c, local) {
            a |= c;
        } else {
            b |= c;
        }
    }
    let lifted = Separation::new_unchecked(a, b);
    if !lifted.is_valid_for(&t.host) {
        return Err(Error::InvalidTorso(format!(
            "lift {lifted:?} of {s_t:?} is not a separation of the host"
        )));
    }
    Ok(lifted)
}

/// Components `C` of `host - part` join the `A` side when `N(C) ⊆ A`, and
/// the `B` side otherwise.
pub fn lift_separation(t: &Torso, s_t: Separation) -> Result<Separation> {
    let host = &t.host;
    lift_with(t, s_t, |c, s| host.neighbourhood(c).is_subset(s.a))
}

/// Components `C` of `host - part` join the `A` side when they have a
/// neighbour in `A ∖ B`, and the `B` side otherwise.
pub fn lift_separation_left(t: &Torso, s_t: Separation) -> Result<Separation> {
    let host = &t.host;
    lift_with(t, s_t, |c, s| !host.neighbourhood(c).is_disjoint(s.left()))
}

/// Context for [`induce_profile`].
#[derive(Clone, Copy, Debug, Default)]
pub struct InduceContext {
    /// `κ` of the profile set, if known; the torso adhesion must not exceed it.
    pub kappa: Option<usize>,
    /// Also require `N(C) = S` for every adhesion set `S` and component `C` of `host - S`.
    pub strict: bool,
}

/// The profile induced by `p` on the torso.
pub fn induce_profile(t: &Torso, p: &Profile, ctx: InduceContext) -> Result<Profile> {
    if let Some(&s) = t.toward.iter().find(|&&s| !p.contains(s)) {
        return Err(Error::precondition(format!(
            "profile does not live in part {:?}: it does not contain {s:?}",
            t.part
        )));
    }
    if let Some(k) = ctx.kappa {
        if t.adhesion() > k {
            return Err(Error::precondition(format!(
                "torso adhesion {} exceeds kappa {k}",
                t.adhesion()
            )));
        }
    }
    if p.bound <= t.adhesion() {
        return Err(Error::precondition(format!(
            "profile bound {} does not exceed torso adhesion {}",
            p.bound,
            t.adhesion()
        )));
    }
    if ctx.strict {
        for &x in &t.adhesion_sets {
            for c in t.host.components(x) {
                if t.host.neighbourhood(c) != x {
                    return Err(Error::precondition(format!(
                        "component {c:?} of G - {x:?} does not see the whole adhesion set"
                    )));
                }
            }
        }
    }
    let oriented: BTreeSet<Separation> = p
        .oriented
        .iter()
        .filter_map(|&s| induce_separation(t, s))
        .collect();
    let induced = Profile::new(p.bound, oriented, Provenance::Induced);
    let report = check_profile_axioms(&t.graph, &induced).map_err(|e| match e {
        Error::IncompleteProfile { .. } | Error::InvalidProfile(_) => {
            Error::lemma(format!("induced orientation on torso {:?} is not a profile: {e}", t.part))
        }
        other => other,
    })?;
    if !(report.consistent && report.p2 && report.principal && report.robust) {
        return Err(Error::lemma(format!(
            "induced profile on torso {:?} fails an axiom: {report:?}",
            t.part
        )));
    }
    Ok(induced)
}
