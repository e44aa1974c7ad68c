//! Profiles as explicit orientation tables, and their axioms.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPermutation, VertexSet};
use crate::separation::{enumerate_separations, Restrict, Separation};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Generic,
    Tangle,
    Block(VertexSet),
    Induced,
}

/// An orientation of every separation of order below `bound`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Profile {
    pub bound: usize,
    pub oriented: BTreeSet<Separation>,
    pub provenance: Provenance,
}

impl Profile {
    pub fn new(bound: usize, oriented: BTreeSet<Separation>, provenance: Provenance) -> Self {
        Profile {
            bound,
            oriented,
            provenance,
        }
    }

    pub fn contains(&self, s: Separation) -> bool {
        self.oriented.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.oriented.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oriented.is_empty()
    }

    pub fn map(&self, perm: &VertexPermutation) -> Profile {
        Profile {
            bound: self.bound,
            oriented: self.oriented.iter().map(|s| s.map(perm)).collect(),
            provenance: match &self.provenance {
                Provenance::Block(b) => Provenance::Block(perm.apply_set(*b)),
                p => p.clone(),
            },
        }
    }

    /// Same orientation table, ignoring provenance.
    pub fn same_orientation(&self, other: &Profile) -> bool {
        self.bound == other.bound && self.oriented == other.oriented
    }

    /// The subset of separations of order below `bound`.
    pub fn truncate(&self, bound: usize) -> Profile {
        Profile {
            bound: bound.min(self.bound),
            oriented: self
                .oriented
                .iter()
                .copied()
                .filter(|s| s.order() < bound)
                .collect(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Outcome of [`check_profile_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub consistent: bool,
    pub p2: bool,
    pub principal: bool,
    pub k_profile: bool,
    /// `robust_per_n[n]` for `n = 0..=bound`.
    pub robust_per_n: Vec<bool>,
    /// Robust against separations of every order.
    pub robust: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.consistent && self.p2 && self.principal && self.k_profile && self.robust
    }
}

/// All separations of `g` of order below `bound`.
pub fn profile_universe(g: &Graph, bound: usize) -> Result<BTreeSet<Separation>> {
    if bound == 0 {
        return Ok(BTreeSet::new());
    }
    enumerate_separations(g, bound - 1, Restrict::All)
}

/// Rejects tables that are not a total, reverse-free orientation of the
/// separations of order below the bound.
pub fn validate_orientation(g: &Graph, p: &Profile) -> Result<()> {
    let universe = profile_universe(g, p.bound)?;
    for &s in &p.oriented {
        if s.order() >= p.bound {
            return Err(Error::InvalidProfile(format!(
                "{s:?} has order {} but the bound is {}",
                s.order(),
                p.bound
            )));
        }
        if !universe.contains(&s) {
            return Err(Error::InvalidProfile(format!("{s:?} is not a separation of the graph")));
        }
        if s.reverse() != s && p.contains(s.reverse()) {
            return Err(Error::InvalidProfile(format!(
                "both {s:?} and its reverse are oriented"
            )));
        }
    }
    for &s in &universe {
        if !p.contains(s) && !p.contains(s.reverse()) {
            return Err(Error::IncompleteProfile { missing: s });
        }
    }
    Ok(())
}

/// Exhaustively checks (P1), (P2), principality and robustness.
pub fn check_profile_axioms(g: &Graph, p: &Profile) -> Result<AxiomReport> {
    validate_orientation(g, p)?;
    let members: Vec<Separation> = p.oriented.iter().copied().collect();
    let lookup: HashSet<Separation> = members.iter().copied().collect();
    let mut witness = None;

    // (P1): no (A,B) ∈ P and (D,C) ∈ P with (C,D) ≤ (A,B).
    let mut consistent = true;
    'p1: for &s in &members {
        for &t in &members {
            if t.reverse().le(s) {
                consistent = false;
                witness.get_or_insert_with(|| format!("(P1) fails for {s:?} and {t:?}"));
                break 'p1;
            }
        }
    }

    // (P2): (B∩D, A∪C) ∉ P for all (A,B), (C,D) ∈ P.
    let mut p2 = true;
    'p2: for &s in &members {
        for &t in &members {
            let corner = Separation::new_unchecked(s.b & t.b, s.a | t.a);
            if lookup.contains(&corner) {
                p2 = false;
                witness.get_or_insert_with(|| format!("(P2) fails for {s:?} and {t:?}"));
                break 'p2;
            }
        }
    }

    let mut by_separator: BTreeMap<VertexSet, VertexSet> = BTreeMap::new();
    for &s in &members {
        let entry = by_separator.entry(s.separator()).or_insert(g.vertices());
        *entry = *entry & s.right();
    }
    let principal = match by_separator.iter().find(|(_, common)| common.is_empty()) {
        None => true,
        Some((x, _)) => {
            witness.get_or_insert_with(|| format!("members with separator {x:?} share no vertex"));
            false
        }
    };

    let k_profile = members.iter().all(|s| s.order() < p.bound);

    let per_n_limit = p.bound.min(g.n());
    let bounded = enumerate_separations(g, per_n_limit, Restrict::All)?;
    let mut first_fail: Option<usize> = None;
    for &s in &members {
        let m = s.order();
        for &t in &bounded {
            if first_fail.is_some_and(|f| t.order() >= f) {
                break;
            }
            if robustness_fails(s, t, m, &lookup) {
                first_fail = Some(first_fail.map_or(t.order(), |f| f.min(t.order())));
                witness.get_or_insert_with(|| format!("robustness fails for {s:?} against {t:?}"));
            }
        }
    }
    let robust_per_n: Vec<bool> = (0..=p.bound)
        .map(|n| first_fail.is_none_or(|f| n < f))
        .collect();
    let robust = first_fail.is_none() && robust_against_all(g, p, &lookup, &mut witness);

    Ok(AxiomReport {
        consistent,
        p2,
        principal,
        k_profile,
        robust_per_n,
        robust,
        witness,
    })
}

fn robustness_fails(s: Separation, t: Separation, m: usize, lookup: &HashSet<Separation>) -> bool {
    let e1 = Separation::new_unchecked(s.b & t.a, s.a | t.b);
    let e2 = Separation::new_unchecked(s.b & t.b, s.a | t.a);
    e1.order() < m && e2.order() < m && lookup.contains(&e1) && lookup.contains(&e2)
}

/// Robustness against separations of arbitrary order.
///
/// The two corner separations only depend on `C ∩ B` and `D ∩ B`, so a
/// violation is a pair `(X1, A ∪ X2)`, `(X2, A ∪ X1)` in `P` with
/// `X1 ∪ X2 = B` and both orders below `|A ∩ B|`; any such pair is realised
/// by `(C, D) = (X1 ∪ (A∖B), X2 ∪ (A∖B))` as long as no edge joins
/// `X1 ∖ X2` to `X2 ∖ X1`.
fn robust_against_all(
    g: &Graph,
    p: &Profile,
    lookup: &HashSet<Separation>,
    witness: &mut Option<String>,
) -> bool {
    for &s in &p.oriented {
        let m = s.order();
        if m == 0 {
            continue;
        }
        let sep = s.separator();
        for &e1 in &p.oriented {
            if e1.order() >= m || !e1.a.is_subset(s.b) || !s.a.is_subset(e1.b) {
                continue;
            }
            let forced = e1.b - s.a;
            let must = sep - e1.a;
            let free = (sep & e1.a) - must;
            let free_members = free.to_vec();
            for mask in 0u32..(1u32 << free_members.len()) {
                let mut z = must;
                for (i, &v) in free_members.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        z.insert(v);
                    }
                }
                let x2 = forced | z;
                let e2 = Separation::new_unchecked(x2, s.a | e1.a);
                if e2.order() < m
                    && (e1.a | x2) == s.b
                    && lookup.contains(&e2)
                    && g.no_edge_between(e1.a - x2, x2 - e1.a)
                {
                    witness.get_or_insert_with(|| {
                        format!("robustness fails for {s:?}: corners {e1:?} and {e2:?} both oriented")
                    });
                    return false;
                }
            }
        }
    }
    true
}
