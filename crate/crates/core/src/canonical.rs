//! The degenerate star and the canonical `k`-balanced nested set.

use std::collections::BTreeSet;

use crate::distinguish::{distinguishes, efficient_set, is_well_separable, kappa, lambda, min_crossing_nested_set_at, relevant_set};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::profile::{check_profile_axioms, Profile};
use crate::separation::{
    degenerated_components, enumerate_separations, first_crossing_pair, is_left_connected, is_proper,
    reversal_closure, Restrict, SeparationSet,
};
use crate::torso::{induce_profile, lift_separation_left, InduceContext};
use crate::tree::{
    build_td_from_nested, is_k_balanced, lives_in, lives_in_block, n_block_torso, n_blocks,
    node_torso, verify_td, TreeDecomposition,
};

pub(crate) fn require_robust_principal(g: &Graph, profiles: &[Profile]) -> Result<()> {
    for (i, p) in profiles.iter().enumerate() {
        let r = check_profile_axioms(g, p)?;
        if !(r.consistent && r.p2 && r.principal && r.robust) {
            return Err(Error::precondition(format!(
                "profile {i} is not a robust principal profile: {r:?}"
            )));
        }
    }
    Ok(())
}

/// Star decomposition cutting off every degenerated component of an
/// efficient separation. The centre is node 0; leaves follow in the order
/// of their components.
pub fn degenerate_star(g: &Graph, profiles: &[Profile]) -> Result<TreeDecomposition> {
    if profiles.len() < 2 {
        return Err(Error::precondition("at least two distinguishable profiles are required"));
    }
    require_robust_principal(g, profiles)?;
    degenerate_star_unchecked(g, profiles)
}

pub(crate) fn degenerate_star_unchecked(g: &Graph, profiles: &[Profile]) -> Result<TreeDecomposition> {
    let k = kappa(profiles)?;
    if let Some(p) = profiles.iter().find(|p| p.bound <= k) {
        return Err(Error::precondition(format!(
            "profile bound {} does not exceed kappa {k}",
            p.bound
        )));
    }
    let eff = efficient_set(profiles)?;
    let comps: BTreeSet<VertexSet> = eff.iter().flat_map(|&s| degenerated_components(g, s)).collect();
    let comps: Vec<VertexSet> = comps.into_iter().collect();
    for (i, &c) in comps.iter().enumerate() {
        if let Some(&d) = comps[i + 1..].iter().find(|&&d| !c.is_disjoint(d)) {
            return Err(Error::lemma(format!("degenerated components {c:?} and {d:?} overlap")));
        }
        if let Some(s) = eff.iter().find(|s| !c.is_disjoint(s.separator())) {
            return Err(Error::lemma(format!("component {c:?} meets the separator of {s:?}")));
        }
    }
    let covered = comps.iter().fold(VertexSet::EMPTY, |acc, &c| acc | c);
    let centre = g.vertices() - covered;
    let mut parts = vec![centre];
    parts.extend(comps.iter().map(|&c| c | g.neighbourhood(c)));
    let edges = (1..parts.len()).map(|i| (0, i)).collect();
    let td = TreeDecomposition::new(parts, edges)?;
    if !verify_td(g, &td)?.ok() {
        return Err(Error::lemma("degenerate star is not a tree-decomposition"));
    }
    for i in 0..td.edges.len() {
        let s = td.edge_separation(i);
        if !is_proper(s) {
            return Err(Error::lemma(format!("star edge separation {s:?} is not proper")));
        }
        if s.order() >= k {
            return Err(Error::lemma(format!("star adhesion {:?} is not below kappa {k}", s.separator())));
        }
    }
    if !td.edges.is_empty() {
        let torso = node_torso(g, &td, 0)?;
        let induced = profiles
            .iter()
            .map(|p| induce_profile(&torso, p, InduceContext { kappa: Some(k), strict: false }))
            .collect::<Result<Vec<_>>>()?;
        if !is_well_separable(&torso.graph, &induced)? {
            return Err(Error::lemma(format!("centre torso {centre:?} is not well-separable")));
        }
    }
    Ok(td)
}

/// Canonical nested set of left-connected separations of order `κ`
/// distinguishing every pair of profiles that some separation of order `κ`
/// distinguishes. Returned reversal-closed.
pub fn canonical_nested_set_fixed_k(g: &Graph, profiles: &[Profile]) -> Result<SeparationSet> {
    if profiles.len() < 2 {
        return Ok(SeparationSet::new());
    }
    require_robust_principal(g, profiles)?;
    canonical_nested_set_unchecked(g, profiles)
}

fn undistinguished_pair(nested: &SeparationSet, profiles: &[&Profile], k: usize) -> bool {
    profiles.iter().enumerate().any(|(i, p)| {
        profiles[i + 1..].iter().any(|q| {
            lambda(p, q).is_some_and(|l| l <= k) && !nested.iter().any(|&s| distinguishes(s, p, q))
        })
    })
}

pub(crate) fn canonical_nested_set_unchecked(g: &Graph, profiles: &[Profile]) -> Result<SeparationSet> {
    if profiles.len() < 2 {
        return Ok(SeparationSet::new());
    }
    let k = kappa(profiles)?;
    if let Some(p) = profiles.iter().find(|p| p.bound <= k) {
        return Err(Error::precondition(format!(
            "profile bound {} does not exceed kappa {k}",
            p.bound
        )));
    }
    if !is_well_separable(g, profiles)? {
        return Err(Error::precondition("graph is not well-separable for these profiles"));
    }
    let guard = enumerate_separations(g, k, Restrict::All)?.len() + 1;
    let mut generated = SeparationSet::new();
    let mut nested = SeparationSet::new();
    for _ in 0..guard {
        let mut round = SeparationSet::new();
        let mut pending = false;
        for x in n_blocks(g, &nested) {
            let living: Vec<&Profile> = profiles.iter().filter(|p| lives_in_block(p, &nested, x)).collect();
            if living.len() < 2 || !undistinguished_pair(&nested, &living, k) {
                continue;
            }
            pending = true;
            let torso = n_block_torso(g, &nested, x)?;
            let ctx = InduceContext { kappa: Some(k), strict: true };
            let induced = living
                .iter()
                .map(|p| induce_profile(&torso, p, ctx))
                .collect::<Result<Vec<_>>>()?;
            if relevant_set(k, &induced).is_empty() {
                continue;
            }
            for s in min_crossing_nested_set_at(&torso.graph, &induced, k)? {
                round.insert(lift_separation_left(&torso, s)?);
            }
        }
        if !pending {
            verify_canonical(g, &generated, &nested, k)?;
            return Ok(nested);
        }
        let before = nested.len();
        generated.extend(round.iter().copied());
        nested = reversal_closure(&generated);
        if let Some((a, b)) = first_crossing_pair(&nested) {
            return Err(Error::lemma(format!("canonical set is not nested: {a:?} crosses {b:?}")));
        }
        if nested.len() == before {
            return Err(Error::lemma(
                "a round made no progress although some pair is still undistinguished",
            ));
        }
    }
    Err(Error::Internal(format!("canonical construction exceeded {guard} rounds")))
}

fn verify_canonical(g: &Graph, generated: &SeparationSet, nested: &SeparationSet, k: usize) -> Result<()> {
    for &s in generated {
        if s.order() != k {
            return Err(Error::lemma(format!("{s:?} does not have order {k}")));
        }
        if !is_left_connected(g, s) {
            return Err(Error::lemma(format!("{s:?} is not left-connected")));
        }
    }
    if let Some((a, b)) = first_crossing_pair(nested) {
        return Err(Error::lemma(format!("canonical set is not nested: {a:?} crosses {b:?}")));
    }
    Ok(())
}

/// Tree-decomposition of [`canonical_nested_set_fixed_k`].
pub fn canonical_td_fixed_k(g: &Graph, profiles: &[Profile]) -> Result<TreeDecomposition> {
    if profiles.len() < 2 {
        return Ok(TreeDecomposition::single(g.vertices()));
    }
    require_robust_principal(g, profiles)?;
    canonical_td_unchecked(g, profiles)
}

pub(crate) fn canonical_td_unchecked(g: &Graph, profiles: &[Profile]) -> Result<TreeDecomposition> {
    if profiles.len() < 2 {
        return Ok(TreeDecomposition::single(g.vertices()));
    }
    let k = kappa(profiles)?;
    let nested = canonical_nested_set_unchecked(g, profiles)?;
    let td = build_td_from_nested(g, &nested)?;
    if !is_k_balanced(&td, k) {
        return Err(Error::lemma(format!("canonical decomposition is not {k}-balanced")));
    }
    let seps = crate::tree::induced_separations(&td);
    for (i, p) in profiles.iter().enumerate() {
        for q in &profiles[i + 1..] {
            if lambda(p, q) == Some(k) && !seps.iter().any(|&s| distinguishes(s, p, q)) {
                return Err(Error::lemma("canonical decomposition misses a distinguishable pair"));
            }
        }
    }
    Ok(td)
}

/// Node of `td` in which every profile lives, if there is exactly one.
pub(crate) fn hosting_node(td: &TreeDecomposition, profiles: &[Profile]) -> Result<Option<usize>> {
    let mut found = Vec::new();
    for t in 0..td.node_count() {
        let mut all = true;
        for p in profiles {
            all &= lives_in(p, td, t)?;
        }
        if all {
            found.push(t);
        }
    }
    Ok(if found.len() == 1 { Some(found[0]) } else { None })
}
