//! k-blocks and their profiles.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{check_cap, Graph, VertexSet};
use crate::profile::{profile_universe, Profile, Provenance};
use crate::separation::for_each_subset_up_to;

/// `table[u]` is the set of vertices that some set of fewer than `k`
/// vertices avoiding both separates from `u`.
fn separability(g: &Graph, k: usize) -> Vec<VertexSet> {
    let mut table = vec![VertexSet::EMPTY; g.n()];
    if k == 0 {
        return table;
    }
    for_each_subset_up_to(g.vertices(), k - 1, |x| {
        let comps = g.components(x);
        let rest = g.vertices() - x;
        for &c in &comps {
            for u in c {
                table[u] |= rest - c;
            }
        }
    });
    table
}

fn bron_kerbosch(
    adj: &[VertexSet],
    r: VertexSet,
    mut p: VertexSet,
    mut x: VertexSet,
    out: &mut Vec<VertexSet>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = (p | x).iter().max_by_key(|&u| (adj[u] & p).len()).unwrap();
    for v in p - adj[pivot] {
        let mut r2 = r;
        r2.insert(v);
        bron_kerbosch(adj, r2, p & adj[v], x & adj[v], out);
        p.remove(v);
        x.insert(v);
    }
}

/// All k-blocks of `g`, in canonical order.
pub fn enumerate_k_blocks(g: &Graph, k: usize) -> Result<Vec<VertexSet>> {
    check_cap(g.n())?;
    let sep = separability(g, k);
    let adj: Vec<VertexSet> = (0..g.n())
        .map(|u| g.vertices() - sep[u] - VertexSet::singleton(u))
        .collect();
    let mut cliques = Vec::new();
    if g.n() > 0 {
        bron_kerbosch(&adj, VertexSet::EMPTY, g.vertices(), VertexSet::EMPTY, &mut cliques);
    }
    let mut blocks: Vec<VertexSet> = cliques.into_iter().filter(|c| c.len() >= k).collect();
    blocks.sort();
    Ok(blocks)
}

pub fn is_k_block(g: &Graph, k: usize, b: VertexSet) -> Result<bool> {
    Ok(enumerate_k_blocks(g, k)?.contains(&b))
}

/// The profile `P_b` of separations of order below `k` with `b ⊆ B`.
pub fn block_profile(g: &Graph, k: usize, b: VertexSet) -> Result<Profile> {
    if !is_k_block(g, k, b)? {
        return Err(Error::InvalidBlock { block: b, k });
    }
    let oriented: BTreeSet<_> = profile_universe(g, k)?
        .into_iter()
        .filter(|s| b.is_subset(s.b))
        .collect();
    Ok(Profile::new(k, oriented, Provenance::Block(b)))
}

/// Block profiles of all k-blocks.
pub fn block_profiles(g: &Graph, k: usize) -> Result<Vec<Profile>> {
    enumerate_k_blocks(g, k)?
        .into_iter()
        .map(|b| block_profile(g, k, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::profile::check_profile_axioms;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn fixture_blocks() {
        assert_eq!(
            enumerate_k_blocks(&fixtures::p3(), 2).unwrap(),
            vec![vs(&[0, 1]), vs(&[1, 2])]
        );
        assert_eq!(
            enumerate_k_blocks(&fixtures::two_k4(), 4).unwrap(),
            vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5])]
        );
        assert!(enumerate_k_blocks(&fixtures::k4(), 5).unwrap().is_empty());
    }

    #[test]
    fn invalid_block_rejected() {
        assert!(matches!(
            block_profile(&fixtures::two_k4(), 4, vs(&[0, 1, 2])),
            Err(Error::InvalidBlock { .. })
        ));
    }

    #[test]
    fn block_profiles_are_principal_profiles() {
        for g in fixtures::all() {
            for k in 1..=4 {
                for p in block_profiles(&g, k).unwrap() {
                    let r = check_profile_axioms(&g, &p).unwrap();
                    assert!(r.consistent && r.p2 && r.principal, "{:?} k={k} {r:?}", g.name());
                }
            }
        }
    }
}
