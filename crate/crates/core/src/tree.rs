//! Tree-decompositions, the tree-decomposition of a nested separation set,
//! and blocks of nested sets.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::profile::Profile;
use crate::separation::{first_crossing_pair, is_proper, reversal_closure, Separation, SeparationSet};
use crate::torso::{build_torso_toward, Torso};

/// A tree with a part of the vertex set at each node. Edges satisfy `u < v`
/// and are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeDecomposition {
    pub parts: Vec<VertexSet>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: usize,
    part: VertexSet,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: usize,
    v: usize,
    #[serde(default)]
    adhesion: VertexSet,
}

#[derive(Serialize, Deserialize)]
struct TdJson {
    nodes: Vec<NodeJson>,
    edges: Vec<EdgeJson>,
}

impl Serialize for TreeDecomposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TdJson {
            nodes: self
                .parts
                .iter()
                .enumerate()
                .map(|(id, &part)| NodeJson { id, part })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| EdgeJson {
                    u,
                    v,
                    adhesion: self.parts[u] & self.parts[v],
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TreeDecomposition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = TdJson::deserialize(deserializer)?;
        let mut nodes = json.nodes;
        nodes.sort_by_key(|n| n.id);
        if nodes.iter().enumerate().any(|(i, n)| n.id != i) {
            return Err(D::Error::custom("node ids must be 0..number of nodes"));
        }
        let edges = json.edges.into_iter().map(|e| (e.u, e.v)).collect();
        TreeDecomposition::new(nodes.into_iter().map(|n| n.part).collect(), edges)
            .map_err(D::Error::custom)
    }
}

/// Outcome of [`verify_td`]. Each field holds a witness when the condition fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TdReport {
    pub t1: Option<String>,
    pub t2: Option<String>,
    pub t3: Option<String>,
}

impl TdReport {
    pub fn ok(&self) -> bool {
        self.t1.is_none() && self.t2.is_none() && self.t3.is_none()
    }
}

impl TreeDecomposition {
    /// Builds a decomposition, checking that the edges form a tree on the nodes.
    pub fn new(parts: Vec<VertexSet>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let m = parts.len();
        if m == 0 {
            return Err(Error::Structure("a tree-decomposition needs at least one node".into()));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= m || v >= m || u == v {
                return Err(Error::Structure(format!("edge {u}-{v} is not an edge between distinct nodes")));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort();
        let before = norm.len();
        norm.dedup();
        if norm.len() != before || norm.len() + 1 != m {
            return Err(Error::Structure(format!(
                "{} edges on {m} nodes do not form a tree",
                before
            )));
        }
        let td = TreeDecomposition { parts, edges: norm };
        let reached = td.side(0, usize::MAX);
        if reached.iter().any(|&r| !r) {
            return Err(Error::Structure("the decomposition tree is not connected".into()));
        }
        Ok(td)
    }

    pub fn single(part: VertexSet) -> Self {
        TreeDecomposition {
            parts: vec![part],
            edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.parts.len()
    }

    pub fn neighbours(&self, t: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == t {
                    Some(v)
                } else if v == t {
                    Some(u)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Nodes reachable from `start` without using edge number `skip`.
    fn side(&self, start: usize, skip: usize) -> Vec<bool> {
        let mut seen = vec![false; self.parts.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(t) = stack.pop() {
            for (i, &(u, v)) in self.edges.iter().enumerate() {
                if i == skip {
                    continue;
                }
                let w = if u == t {
                    v
                } else if v == t {
                    u
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn union_of(&self, nodes: &[bool]) -> VertexSet {
        self.parts
            .iter()
            .zip(nodes)
            .filter(|(_, &x)| x)
            .fold(VertexSet::EMPTY, |acc, (&p, _)| acc | p)
    }

    /// Separation induced by edge `i = (u, v)`, with the `u` side as `A`.
    pub fn edge_separation(&self, i: usize) -> Separation {
        let (u, _) = self.edges[i];
        let side_u = self.side(u, i);
        let side_v: Vec<bool> = side_u.iter().map(|x| !x).collect();
        Separation::new_unchecked(self.union_of(&side_u), self.union_of(&side_v))
    }

    /// Edge separation pointing towards node `t`, so that `t` lies on the `B` side.
    pub fn separation_towards(&self, i: usize, t: usize) -> Separation {
        let (u, _) = self.edges[i];
        let s = self.edge_separation(i);
        if self.side(u, i)[t] {
            s.reverse()
        } else {
            s
        }
    }

    pub fn adhesion_set(&self, i: usize) -> VertexSet {
        let (u, v) = self.edges[i];
        self.parts[u] & self.parts[v]
    }

    pub fn adhesion_sets_at(&self, t: usize) -> Vec<VertexSet> {
        (0..self.edges.len())
            .filter(|&i| self.edges[i].0 == t || self.edges[i].1 == t)
            .map(|i| self.adhesion_set(i))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph td {\n");
        for (i, p) in self.parts.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{i}: {p:?}\"];");
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "  n{u} -- n{v} [label=\"{:?}\"];", self.adhesion_set(i));
        }
        out.push_str("}\n");
        out
    }
}

/// Checks that the parts cover all vertices (T1) and all edges (T2) and that
/// each vertex occupies a connected subtree (T3).
pub fn verify_td(g: &Graph, td: &TreeDecomposition) -> Result<TdReport> {
    TreeDecomposition::new(td.parts.clone(), td.edges.clone())?;
    if let Some(p) = td.parts.iter().find(|p| !p.is_subset(g.vertices())) {
        return Err(Error::Structure(format!("part {p:?} is not a vertex set of the graph")));
    }
    let mut report = TdReport::default();
    let covered = td.parts.iter().fold(VertexSet::EMPTY, |acc, &p| acc | p);
    if let Some(v) = (g.vertices() - covered).min() {
        report.t1 = Some(format!("vertex {v} lies in no part"));
    }
    if let Some((u, v)) = g
        .edges()
        .find(|&(u, v)| !td.parts.iter().any(|p| p.contains(u) && p.contains(v)))
    {
        report.t2 = Some(format!("edge {u}-{v} lies in no part"));
    }
    for v in g.vertices() {
        let holding: Vec<usize> = (0..td.parts.len()).filter(|&t| td.parts[t].contains(v)).collect();
        if holding.is_empty() {
            continue;
        }
        // Connected iff the number of tree edges inside the holding set is one less than its size.
        let inner = td
            .edges
            .iter()
            .filter(|&&(a, b)| td.parts[a].contains(v) && td.parts[b].contains(v))
            .count();
        if inner + 1 != holding.len() {
            report.t3 = Some(format!("nodes holding vertex {v} do not form a subtree: {holding:?}"));
            break;
        }
    }
    Ok(report)
}

/// All separations induced by tree edges, in both orientations.
pub fn induced_separations(td: &TreeDecomposition) -> SeparationSet {
    let mut out = SeparationSet::new();
    for i in 0..td.edges.len() {
        let s = td.edge_separation(i);
        out.insert(s);
        out.insert(s.reverse());
    }
    out
}

/// Largest adhesion set size, or 0 for a single node.
pub fn adhesion(td: &TreeDecomposition) -> usize {
    (0..td.edges.len()).map(|i| td.adhesion_set(i).len()).max().unwrap_or(0)
}

/// True when every adhesion set has exactly `k` vertices.
pub fn is_k_balanced(td: &TreeDecomposition, k: usize) -> bool {
    (0..td.edges.len()).all(|i| td.adhesion_set(i).len() == k)
}

/// The tree-decomposition whose induced separations are the reversal closure of `nested`.
pub fn build_td_from_nested(g: &Graph, nested: &SeparationSet) -> Result<TreeDecomposition> {
    let closure = reversal_closure(nested);
    for &s in &closure {
        if !s.is_valid_for(g) {
            return Err(Error::precondition(format!("{s:?} is not a separation of the graph")));
        }
        if !is_proper(s) {
            return Err(Error::precondition(format!("{s:?} is not proper")));
        }
    }
    if let Some((x, y)) = first_crossing_pair(&closure) {
        return Err(Error::precondition(format!("{x:?} and {y:?} cross")));
    }
    if closure.is_empty() {
        return Ok(TreeDecomposition::single(g.vertices()));
    }
    let seps: Vec<Separation> = closure.iter().copied().collect();
    let m = seps.len();
    let index = |s: Separation| seps.binary_search(&s).expect("closure is reversal-closed");
    let lt: Vec<Vec<bool>> = seps
        .iter()
        .map(|&x| seps.iter().map(|&y| x.lt(y)).collect())
        .collect();
    let is_pred = |x: usize, z: usize| lt[x][z] && !(0..m).any(|y| lt[x][y] && lt[y][z]);
    let related = |i: usize, j: usize| i == j || is_pred(index(seps[i].reverse()), j);

    let mut class = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        if class[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..m).filter(|&j| related(i, j)).collect();
        for &j in &members {
            if class[j] != usize::MAX {
                return Err(Error::lemma(format!(
                    "the node relation is not an equivalence at {:?}",
                    seps[j]
                )));
            }
            class[j] = classes.len();
        }
        classes.push(members);
    }
    for members in &classes {
        for &a in members {
            for &b in members {
                if !related(a, b) {
                    return Err(Error::lemma(format!(
                        "the node relation is not an equivalence at {:?} and {:?}",
                        seps[a], seps[b]
                    )));
                }
            }
        }
    }
    let parts: Vec<VertexSet> = classes
        .iter()
        .map(|members| members.iter().fold(g.vertices(), |acc, &j| acc & seps[j].a))
        .collect();
    let mut edges = Vec::new();
    for (i, &s) in seps.iter().enumerate() {
        let r = index(s.reverse());
        if i < r {
            edges.push((class[i], class[r]));
        }
    }
    TreeDecomposition::new(parts, edges).map_err(|e| Error::lemma(format!("nested set does not yield a tree: {e}")))
}

/// Torso of node `t`. A profile lives in the part when it contains every
/// induced separation with the part on its `B` side.
pub fn node_torso(g: &Graph, td: &TreeDecomposition, t: usize) -> Result<Torso> {
    if t >= td.node_count() {
        return Err(Error::Structure(format!("node {t} does not exist")));
    }
    let toward = (0..td.edges.len()).map(|i| td.separation_towards(i, t)).collect();
    build_torso_toward(g, td.parts[t], &td.adhesion_sets_at(t), toward)
}

/// True if `p` contains every induced separation `(A, B)` of `td` with the part of `t` inside `B`.
pub fn lives_in(p: &Profile, td: &TreeDecomposition, t: usize) -> Result<bool> {
    if t >= td.node_count() {
        return Err(Error::Structure(format!("node {t} does not exist")));
    }
    let mut all = true;
    for i in 0..td.edges.len() {
        let s = td.separation_towards(i, t);
        if s.order() >= p.bound {
            return Err(Error::precondition(format!(
                "induced separation {s:?} has order {} outside the profile bound {}",
                s.order(),
                p.bound
            )));
        }
        all &= p.contains(s);
    }
    Ok(all)
}

/// Maximal vertex sets `X` such that every member of the closure of `nested`
/// has `X` on exactly one side. Sorted.
pub fn n_blocks(g: &Graph, nested: &SeparationSet) -> Vec<VertexSet> {
    let closure = reversal_closure(nested);
    let pairs: Vec<Separation> = closure.iter().copied().filter(|&s| s <= s.reverse()).collect();
    let mut found = BTreeSet::new();
    fn go(pairs: &[Separation], i: usize, current: VertexSet, found: &mut BTreeSet<VertexSet>) {
        if i == pairs.len() {
            found.insert(current);
            return;
        }
        let s = pairs[i];
        for side in [s.a, s.b] {
            let next = current & side;
            if !next.is_empty() && !next.is_subset(s.separator()) {
                go(pairs, i + 1, next, found);
            }
        }
    }
    go(&pairs, 0, g.vertices(), &mut found);
    let all: Vec<VertexSet> = found.iter().copied().collect();
    all.iter()
        .copied()
        .filter(|&x| !all.iter().any(|&y| x.is_proper_subset(y)))
        .collect()
}

/// Torso of an N-block `x`: the separators inside `x` become cliques.
pub fn n_block_torso(g: &Graph, nested: &SeparationSet, x: VertexSet) -> Result<Torso> {
    let closure = reversal_closure(nested);
    let adhesion: Vec<VertexSet> = closure
        .iter()
        .map(|s| s.separator())
        .filter(|s| s.is_subset(x))
        .collect();
    let toward = closure.iter().copied().filter(|s| x.is_subset(s.b)).collect();
    build_torso_toward(g, x, &adhesion, toward)
}

/// True if `p` contains every member `(A, B)` of the closure with `x ⊆ B`.
pub fn lives_in_block(p: &Profile, nested: &SeparationSet, x: VertexSet) -> bool {
    reversal_closure(nested)
        .iter()
        .filter(|s| x.is_subset(s.b))
        .all(|&s| p.contains(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    fn sep(a: &[usize], b: &[usize]) -> Separation {
        Separation::new_unchecked(vs(a), vs(b))
    }

    #[test]
    fn path_nested_set() {
        let g = fixtures::p3();
        let n: SeparationSet = [sep(&[0, 1], &[1, 2])].into_iter().collect();
        let td = build_td_from_nested(&g, &n).unwrap();
        assert_eq!(td.parts, vec![vs(&[0, 1]), vs(&[1, 2])]);
        assert_eq!(td.edges, vec![(0, 1)]);
        assert!(verify_td(&g, &td).unwrap().ok());
        assert_eq!(induced_separations(&td), reversal_closure(&n));
        assert_eq!(adhesion(&td), 1);
        assert!(is_k_balanced(&td, 1));
    }

    #[test]
    fn two_cliques() {
        let g = fixtures::two_k4();
        let n: SeparationSet = [sep(&[0, 1, 2, 3], &[2, 3, 4, 5])].into_iter().collect();
        let td = build_td_from_nested(&g, &n).unwrap();
        assert_eq!(td.parts.len(), 2);
        assert!(is_k_balanced(&td, 2));
        assert_eq!(n_blocks(&g, &n), vec![vs(&[0, 1, 2, 3]), vs(&[2, 3, 4, 5])]);
    }

    #[test]
    fn star_of_three() {
        let g = fixtures::star13();
        let n: SeparationSet = (1..4)
            .map(|l| Separation::new_unchecked(vs(&[0, l]), g.vertices() - VertexSet::singleton(l)))
            .collect();
        let td = build_td_from_nested(&g, &n).unwrap();
        assert_eq!(td.parts.len(), 4);
        assert!(verify_td(&g, &td).unwrap().ok());
        assert_eq!(induced_separations(&td), reversal_closure(&n));
        let centre = (0..4).find(|&t| td.neighbours(t).len() == 3).unwrap();
        assert_eq!(td.parts[centre], vs(&[0]));
    }

    #[test]
    fn rejects_crossing_and_improper() {
        let g = fixtures::c4();
        let n: SeparationSet = [sep(&[0, 1, 2], &[0, 2, 3]), sep(&[1, 2, 3], &[0, 1, 3])].into_iter().collect();
        assert!(matches!(build_td_from_nested(&g, &n), Err(Error::Precondition(_))));
        let n: SeparationSet = [sep(&[0, 1, 2, 3], &[0, 1, 2, 3])].into_iter().collect();
        assert!(matches!(build_td_from_nested(&g, &n), Err(Error::Precondition(_))));
    }

    #[test]
    fn verify_reports_failures() {
        let g = fixtures::p3();
        let td = TreeDecomposition::new(vec![vs(&[0, 1]), vs(&[2]), vs(&[1])], vec![(0, 1), (1, 2)]).unwrap();
        let r = verify_td(&g, &td).unwrap();
        assert!(r.t1.is_none());
        assert!(r.t2.is_some());
        assert!(r.t3.is_some());
        assert!(matches!(
            TreeDecomposition::new(vec![vs(&[0]), vs(&[1])], vec![]),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let g = fixtures::p3();
        let n: SeparationSet = [sep(&[0, 1], &[1, 2])].into_iter().collect();
        let td = build_td_from_nested(&g, &n).unwrap();
        let text = serde_json::to_string(&td).unwrap();
        assert_eq!(
            text,
            r#"{"nodes":[{"id":0,"part":[0,1]},{"id":1,"part":[1,2]}],"edges":[{"u":0,"v":1,"adhesion":[1]}]}"#
        );
        let back: TreeDecomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, td);
        assert!(td.to_dot().contains("n0 -- n1"));
    }
}
