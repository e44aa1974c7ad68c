//! Tree centres, refining a decomposition by decompositions of its torsos,
//! and gluing a tree of tree-decompositions into one decomposition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::distinguish::distinguishes_efficiently;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::profile::Profile;
use crate::separation::is_tight;
use crate::totd::TreeOfTds;
use crate::tree::{induced_separations, node_torso, verify_td, TreeDecomposition};

/// Centre of a finite tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Center {
    Vertex(usize),
    /// The two ends, smaller first.
    Edge(usize, usize),
}

/// Centre of the tree on `nodes` whose edges are `edges`, found by
/// stripping all leaves at once until at most two nodes remain.
pub fn tree_center(nodes: &BTreeSet<usize>, edges: &[(usize, usize)]) -> Center {
    let mut alive = nodes.clone();
    let inner: Vec<(usize, usize)> = edges
        .iter()
        .copied()
        .filter(|(u, v)| nodes.contains(u) && nodes.contains(v))
        .collect();
    while alive.len() > 2 {
        let mut degree: BTreeMap<usize, usize> = alive.iter().map(|&v| (v, 0)).collect();
        for &(u, v) in &inner {
            if alive.contains(&u) && alive.contains(&v) {
                *degree.get_mut(&u).unwrap() += 1;
                *degree.get_mut(&v).unwrap() += 1;
            }
        }
        for (v, d) in degree {
            if d <= 1 {
                alive.remove(&v);
            }
        }
    }
    let left: Vec<usize> = alive.into_iter().collect();
    match left[..] {
        [v] => Center::Vertex(v),
        [u, v] => Center::Edge(u, v),
        _ => unreachable!("a nonempty tree keeps one or two central nodes"),
    }
}

/// Fine nodes contracted onto each coarse node.
#[derive(Clone, Debug, Serialize)]
pub struct Subtree {
    pub coarse_node: usize,
    pub fine_nodes: Vec<usize>,
}

/// Witness that `fine` refines `coarse`.
#[derive(Clone, Debug, Serialize)]
pub struct Refinement {
    #[serde(skip)]
    pub coarse: TreeDecomposition,
    #[serde(skip)]
    pub fine: TreeDecomposition,
    pub subtrees: Vec<Subtree>,
}

pub fn refine_td(g: &Graph, coarse: &TreeDecomposition, per_node: &[TreeDecomposition]) -> Result<TreeDecomposition> {
    refine_td_with_witness(g, coarse, per_node).map(|r| r.fine)
}

/// Refines `coarse` by `per_node[t]`, a decomposition of the torso of node
/// `t` given in torso coordinates.
pub fn refine_td_with_witness(
    g: &Graph,
    coarse: &TreeDecomposition,
    per_node: &[TreeDecomposition],
) -> Result<Refinement> {
    if per_node.len() != coarse.node_count() {
        return Err(Error::precondition(format!(
            "{} decompositions given for {} nodes",
            per_node.len(),
            coarse.node_count()
        )));
    }
    let mut host_parts: Vec<Vec<VertexSet>> = Vec::new();
    for (t, td) in per_node.iter().enumerate() {
        let torso = node_torso(g, coarse, t)?;
        let report = verify_td(&torso.graph, td)?;
        if !report.ok() {
            return Err(Error::precondition(format!(
                "decomposition of torso {t} is not a tree-decomposition: {report:?}"
            )));
        }
        if !coarse.neighbours(t).is_empty() {
            let mut seen = BTreeSet::new();
            for i in 0..td.edges.len() {
                let s = td.edge_separation(i);
                if !is_tight(&torso.graph, s) {
                    return Err(Error::precondition(format!(
                        "separation {:?} of torso {t} is not tight",
                        torso.separation_to_host(s)
                    )));
                }
                let key = if s <= s.reverse() { s } else { s.reverse() };
                if !seen.insert(key) {
                    return Err(Error::precondition(format!(
                        "two edges of the decomposition of torso {t} induce {:?}",
                        torso.separation_to_host(s)
                    )));
                }
            }
        }
        host_parts.push(td.parts.iter().map(|&p| torso.to_host(p)).collect());
    }

    // Attachment point of every coarse edge at both ends, and the edges to subdivide.
    let mut subdivide: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); per_node.len()];
    let mut attach: Vec<[Center; 2]> = Vec::new();
    for (i, &(a, b)) in coarse.edges.iter().enumerate() {
        let sep = coarse.adhesion_set(i);
        let mut ends = [Center::Vertex(0); 2];
        for (slot, x) in [a, b].into_iter().enumerate() {
            let sub = containing_subtree(&per_node[x], &host_parts[x], sep)
                .ok_or_else(|| Error::lemma(format!("no part of torso {x} contains adhesion set {sep:?}")))?;
            let c = tree_center(&sub, &per_node[x].edges);
            if let Center::Edge(u, v) = c {
                subdivide[x].insert((u, v));
            }
            ends[slot] = c;
        }
        attach.push(ends);
    }

    let mut parts = Vec::new();
    let mut edges = Vec::new();
    let mut subtrees = Vec::new();
    let mut offset = Vec::new();
    let mut sub_index: Vec<BTreeMap<(usize, usize), usize>> = Vec::new();
    for (x, td) in per_node.iter().enumerate() {
        let base = parts.len();
        offset.push(base);
        parts.extend(host_parts[x].iter().copied());
        let mut map = BTreeMap::new();
        for &(u, v) in &td.edges {
            if subdivide[x].contains(&(u, v)) {
                let id = parts.len();
                parts.push(host_parts[x][u] & host_parts[x][v]);
                edges.push((base + u, id));
                edges.push((base + v, id));
                map.insert((u, v), id);
            } else {
                edges.push((base + u, base + v));
            }
        }
        subtrees.push(Subtree {
            coarse_node: x,
            fine_nodes: (base..parts.len()).collect(),
        });
        sub_index.push(map);
    }
    let locate = |x: usize, c: Center| match c {
        Center::Vertex(v) => offset[x] + v,
        Center::Edge(u, v) => sub_index[x][&(u, v)],
    };
    for (i, &(a, b)) in coarse.edges.iter().enumerate() {
        edges.push((locate(a, attach[i][0]), locate(b, attach[i][1])));
    }
    let fine = TreeDecomposition::new(parts, edges)
        .map_err(|e| Error::lemma(format!("refinement is not a tree: {e}")))?;
    let refinement = Refinement {
        coarse: coarse.clone(),
        fine,
        subtrees,
    };
    check_refinement(g, &refinement, per_node, &host_parts)?;
    Ok(refinement)
}

/// Nodes of `td` whose host part contains `sep`, if any; connected by (T3).
fn containing_subtree(td: &TreeDecomposition, parts: &[VertexSet], sep: VertexSet) -> Option<BTreeSet<usize>> {
    let start = (0..parts.len()).find(|&u| sep.is_subset(parts[u]))?;
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for w in td.neighbours(u) {
            if sep.is_subset(parts[w]) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    Some(seen)
}

fn check_refinement(
    g: &Graph,
    r: &Refinement,
    per_node: &[TreeDecomposition],
    host_parts: &[Vec<VertexSet>],
) -> Result<()> {
    let report = verify_td(g, &r.fine)?;
    if !report.ok() {
        return Err(Error::lemma(format!("refinement is not a tree-decomposition: {report:?}")));
    }
    let mut owner = vec![usize::MAX; r.fine.node_count()];
    for s in &r.subtrees {
        let union = s.fine_nodes.iter().fold(VertexSet::EMPTY, |acc, &u| acc | r.fine.parts[u]);
        if union != r.coarse.parts[s.coarse_node] {
            return Err(Error::lemma(format!("subtree of coarse node {} does not cover its part", s.coarse_node)));
        }
        for &u in &s.fine_nodes {
            owner[u] = s.coarse_node;
        }
    }
    let mut contracted: Vec<(usize, usize)> = r
        .fine
        .edges
        .iter()
        .filter(|&&(u, v)| owner[u] != owner[v])
        .map(|&(u, v)| (owner[u].min(owner[v]), owner[u].max(owner[v])))
        .collect();
    contracted.sort();
    let inner = r.fine.edges.len() - contracted.len();
    if contracted != r.coarse.edges || inner + r.coarse.node_count() != r.fine.node_count() {
        return Err(Error::lemma("contracting the subtrees does not give the coarse tree"));
    }
    let mut allowed: BTreeSet<VertexSet> = (0..r.coarse.edges.len()).map(|i| r.coarse.adhesion_set(i)).collect();
    for (td, parts) in per_node.iter().zip(host_parts) {
        allowed.extend(td.edges.iter().map(|&(u, v)| parts[u] & parts[v]));
    }
    for i in 0..r.fine.edges.len() {
        let a = r.fine.adhesion_set(i);
        if !allowed.contains(&a) {
            return Err(Error::lemma(format!("adhesion set {a:?} comes from no constituent decomposition")));
        }
    }
    Ok(())
}

/// Folds the tree of tree-decompositions bottom-up into one decomposition of
/// the root graph, and checks that it distinguishes `profiles` efficiently.
pub fn glue_tree_of_tds(g: &Graph, totd: &TreeOfTds, profiles: &[Profile]) -> Result<TreeDecomposition> {
    let td = glue_node(totd, 0)?;
    let seps = induced_separations(&td);
    for (i, p) in profiles.iter().enumerate() {
        for (j, q) in profiles.iter().enumerate().skip(i + 1) {
            if !seps.iter().any(|&s| distinguishes_efficiently(s, p, q)) {
                return Err(Error::lemma(format!("glued decomposition does not distinguish profiles {i} and {j} efficiently")));
            }
        }
    }
    let report = verify_td(g, &td)?;
    if !report.ok() {
        return Err(Error::lemma(format!("glued decomposition fails {report:?}")));
    }
    Ok(td)
}

fn glue_node(totd: &TreeOfTds, id: usize) -> Result<TreeDecomposition> {
    let node = &totd.nodes[id];
    if node.children.is_empty() {
        return Ok(node.td.clone());
    }
    let mut per_node = Vec::with_capacity(node.td.node_count());
    for t in 0..node.td.node_count() {
        let child = node.children.iter().copied().find(|&c| totd.nodes[c].parent == Some((id, t)));
        per_node.push(match child {
            Some(c) => glue_node(totd, c)?,
            None => TreeDecomposition::single(VertexSet::full(node.td.parts[t].len())),
        });
    }
    refine_td(&node.graph, &node.td, &per_node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::block_profiles;
    use crate::fixtures;
    use crate::totd::build_tree_of_tds;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    fn path(n: usize) -> (BTreeSet<usize>, Vec<(usize, usize)>) {
        ((0..n).collect(), (1..n).map(|i| (i - 1, i)).collect())
    }

    #[test]
    fn centres_of_paths() {
        let (n, e) = path(3);
        assert_eq!(tree_center(&n, &e), Center::Vertex(1));
        let (n, e) = path(4);
        assert_eq!(tree_center(&n, &e), Center::Edge(1, 2));
        let (n, e) = path(1);
        assert_eq!(tree_center(&n, &e), Center::Vertex(0));
    }

    #[test]
    fn single_coarse_node_keeps_the_fine_decomposition() {
        let g = fixtures::two_k4();
        let coarse = TreeDecomposition::single(g.vertices());
        let fine = TreeDecomposition::new(vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5])], vec![(0, 1)]).unwrap();
        assert_eq!(refine_td(&g, &coarse, &[fine.clone()]).unwrap(), fine);
    }

    #[test]
    fn three_cliques_refinement() {
        let g = fixtures::three_k4_path();
        let coarse = TreeDecomposition::new(vec![vs(&[0, 1, 2, 3, 4, 5]), vs(&[4, 5, 6, 7])], vec![(0, 1)]).unwrap();
        let left = TreeDecomposition::new(vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5])], vec![(0, 1)]).unwrap();
        let right = TreeDecomposition::single(VertexSet::full(4));
        let r = refine_td_with_witness(&g, &coarse, &[left, right]).unwrap();
        assert_eq!(r.fine.parts, vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5]), vs(&[4, 5, 6, 7])]);
        assert_eq!(r.fine.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(r.subtrees[0].fine_nodes, vec![0, 1]);
    }

    #[test]
    fn central_edge_is_subdivided() {
        let g = fixtures::two_k4_pendant();
        let coarse = TreeDecomposition::new(vec![vs(&[0, 1, 2, 3, 4, 5]), vs(&[2, 6])], vec![(0, 1)]).unwrap();
        let centre = TreeDecomposition::new(vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5])], vec![(0, 1)]).unwrap();
        let leaf = TreeDecomposition::single(VertexSet::full(2));
        let fine = refine_td(&g, &coarse, &[centre, leaf]).unwrap();
        assert_eq!(fine.parts, vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5]), vs(&[2, 3]), vs(&[2, 6])]);
    }

    #[test]
    fn glue_three_cliques() {
        let g = fixtures::three_k4_path();
        let ps = block_profiles(&g, 4).unwrap();
        let totd = build_tree_of_tds(&g, &ps).unwrap();
        let td = glue_tree_of_tds(&g, &totd, &ps).unwrap();
        assert_eq!(td.parts, vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5]), vs(&[4, 5, 6, 7])]);
    }
}
