//! Trees of tree-decompositions.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::automorphism::automorphisms;
use crate::canonical::{canonical_td_unchecked, degenerate_star_unchecked, hosting_node, require_robust_principal};
use crate::distinguish::{distinguishes_efficiently, kappa, lambda};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPermutation, VertexSet};
use crate::profile::Profile;
use crate::separation::Separation;
use crate::torso::{induce_profile, lift_separation, InduceContext, Torso};
use crate::tree::{adhesion, induced_separations, is_k_balanced, lives_in, node_torso, verify_td, TreeDecomposition};

/// One node of a [`TreeOfTds`].
#[derive(Clone, Debug)]
pub struct TotdNode {
    /// Distance to the root plus one.
    pub level: usize,
    pub graph: Graph,
    /// Vertex `i` of `graph` is vertex `to_root[i]` of the root graph.
    pub to_root: Vec<usize>,
    pub td: TreeDecomposition,
    pub profiles: Vec<Profile>,
    /// `profiles[i]` is induced by root profile `origin[i]`.
    pub origin: Vec<usize>,
    /// Parent node and the node of the parent's decomposition whose torso this is.
    pub parent: Option<(usize, usize)>,
    /// Torso of the parent graph this node's graph comes from.
    pub torso: Option<Torso>,
    pub children: Vec<usize>,
    /// Recursion stopped here because at most one profile remained.
    pub truncated: bool,
}

/// Rooted tree whose nodes carry a graph and a tree-decomposition of it.
/// Node 0 is the root.
#[derive(Clone, Debug)]
pub struct TreeOfTds {
    pub nodes: Vec<TotdNode>,
}

fn trivial_child_level(level: usize) -> bool {
    level % 2 == 1
}

struct Builder {
    nodes: Vec<TotdNode>,
    guard: usize,
}

struct Seed {
    graph: Graph,
    to_root: Vec<usize>,
    profiles: Vec<Profile>,
    origin: Vec<usize>,
    level: usize,
    parent: Option<(usize, usize)>,
    torso: Option<Torso>,
}

impl Builder {
    fn push(&mut self, seed: Seed, td: TreeDecomposition, truncated: bool) -> usize {
        let id = self.nodes.len();
        if let Some((p, _)) = seed.parent {
            self.nodes[p].children.push(id);
        }
        self.nodes.push(TotdNode {
            level: seed.level,
            graph: seed.graph,
            to_root: seed.to_root,
            td,
            profiles: seed.profiles,
            origin: seed.origin,
            parent: seed.parent,
            torso: seed.torso,
            children: Vec::new(),
            truncated,
        });
        id
    }

    fn grow(&mut self, seed: Seed) -> Result<()> {
        if seed.level > self.guard {
            return Err(Error::Internal(format!("tree of tree-decompositions deeper than {}", self.guard)));
        }
        let whole = seed.graph.vertices();
        if seed.profiles.len() <= 1 {
            self.push(seed, TreeDecomposition::single(whole), true);
            return Ok(());
        }
        let kt = kappa(&seed.profiles)?;
        let level = seed.level;
        let k = level / 2;
        let td = if trivial_child_level(level) && k + 1 == kt {
            degenerate_star_unchecked(&seed.graph, &seed.profiles)?
        } else if !trivial_child_level(level) && k == kt {
            canonical_td_unchecked(&seed.graph, &seed.profiles)?
        } else {
            TreeDecomposition::single(whole)
        };
        let graph = seed.graph.clone();
        let to_root = seed.to_root.clone();
        let profiles = seed.profiles.clone();
        let origin = seed.origin.clone();
        let id = self.push(seed, td.clone(), false);

        let targets: Vec<usize> = if td.edges.is_empty() {
            vec![0]
        } else if trivial_child_level(level) {
            match hosting_node(&td, &profiles)? {
                Some(t) => vec![t],
                None => return Err(Error::lemma("no unique part of the star hosts every profile")),
            }
        } else {
            (0..td.node_count()).collect()
        };
        for t in targets {
            let torso = node_torso(&graph, &td, t)?;
            let (child_profiles, child_origin) = if td.edges.is_empty() {
                (profiles.clone(), origin.clone())
            } else {
                let ctx = InduceContext { kappa: Some(kt), strict: false };
                let mut ps = Vec::new();
                let mut os = Vec::new();
                for (p, &o) in profiles.iter().zip(&origin) {
                    if lives_in(p, &td, t)? {
                        ps.push(induce_profile(&torso, p, ctx)?);
                        os.push(o);
                    }
                }
                (ps, os)
            };
            let child_root: Vec<usize> = torso.relabel.iter().map(|&v| to_root[v]).collect();
            self.grow(Seed {
                graph: torso.graph.clone(),
                to_root: child_root,
                profiles: child_profiles,
                origin: child_origin,
                level: level + 1,
                parent: Some((id, t)),
                torso: Some(torso),
            })?;
        }
        Ok(())
    }
}

/// Builds the tree of tree-decompositions for pairwise distinguishable
/// robust principal profiles.
pub fn build_tree_of_tds(g: &Graph, profiles: &[Profile]) -> Result<TreeOfTds> {
    require_robust_principal(g, profiles)?;
    for (i, p) in profiles.iter().enumerate() {
        for (j, q) in profiles.iter().enumerate().skip(i + 1) {
            match lambda(p, q) {
                None => {
                    return Err(Error::precondition(format!("profiles {i} and {j} are not distinguishable")))
                }
                Some(0) => {
                    return Err(Error::precondition(format!(
                        "profiles {i} and {j} are distinguished by a separation of order 0"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let max_bound = profiles.iter().map(|p| p.bound).max().unwrap_or(0);
    let mut b = Builder {
        nodes: Vec::new(),
        guard: 2 * max_bound + 4,
    };
    b.grow(Seed {
        graph: g.clone(),
        to_root: (0..g.n()).collect(),
        profiles: profiles.to_vec(),
        origin: (0..profiles.len()).collect(),
        level: 1,
        parent: None,
        torso: None,
    })?;
    Ok(TreeOfTds { nodes: b.nodes })
}

#[derive(Serialize)]
struct NodeJson<'a> {
    level: usize,
    graph: &'a Graph,
    td: &'a TreeDecomposition,
    #[serde(skip_serializing_if = "Option::is_none")]
    torso_of: Option<usize>,
    profiles: usize,
    children: Vec<NodeJson<'a>>,
}

impl TreeOfTds {
    fn json(&self, id: usize) -> NodeJson<'_> {
        let n = &self.nodes[id];
        NodeJson {
            level: n.level,
            graph: &n.graph,
            td: &n.td,
            torso_of: n.parent.map(|(_, t)| t),
            profiles: n.profiles.len(),
            children: n.children.iter().map(|&c| self.json(c)).collect(),
        }
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.level).max().unwrap_or(0)
    }

    /// Lifts a separation of node `id`'s graph to the root graph.
    pub fn lift_to_root(&self, mut id: usize, mut s: Separation) -> Result<Separation> {
        while let Some(t) = &self.nodes[id].torso {
            s = lift_separation(t, s)?;
            id = self.nodes[id].parent.expect("a node with a torso has a parent").0;
        }
        Ok(s)
    }

    /// Part of node `t` of node `id`'s decomposition, in root coordinates.
    pub fn part_in_root(&self, id: usize, t: usize) -> VertexSet {
        self.nodes[id].td.parts[t].map(&self.nodes[id].to_root)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph totd {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let parts: Vec<String> = (0..n.td.node_count()).map(|t| format!("{:?}", self.part_in_root(i, t))).collect();
            let _ = writeln!(out, "  t{i} [label=\"level {}: {}\"];", n.level, parts.join(" "));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some((p, t)) = n.parent {
                let _ = writeln!(out, "  t{p} -> t{i} [label=\"{t}\"];");
            }
        }
        out.push_str("}\n");
        out
    }

    /// Orbit signature: every node's level, vertex set and parts in root coordinates.
    fn signature(&self, phi: &VertexPermutation) -> BTreeSet<(usize, VertexSet, Vec<VertexSet>)> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let own = phi.apply_set(VertexSet::full(n.graph.n()).map(&n.to_root));
                let mut parts: Vec<VertexSet> = (0..n.td.node_count()).map(|t| phi.apply_set(self.part_in_root(i, t))).collect();
                parts.sort();
                (n.level, own, parts)
            })
            .collect()
    }
}

impl Serialize for TreeOfTds {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.json(0).serialize(serializer)
    }
}

/// A node-local separation distinguishing a pair of root profiles.
#[derive(Clone, Debug, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    pub node: usize,
    pub separation: Separation,
    pub lifted: Separation,
}

/// Outcome of [`verify_totd`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct TotdReport {
    pub witnesses: Vec<PairWitness>,
    pub undistinguished: Vec<(usize, usize)>,
    pub failures: Vec<String>,
}

impl TotdReport {
    pub fn ok(&self) -> bool {
        self.undistinguished.is_empty() && self.failures.is_empty()
    }
}

fn same_profile_set(a: &[Profile], b: &[Profile]) -> bool {
    let x: BTreeSet<_> = a.iter().map(|p| (p.bound, &p.oriented)).collect();
    let y: BTreeSet<_> = b.iter().map(|p| (p.bound, &p.oriented)).collect();
    x == y
}

/// Checks efficient distinguishing of every pair, the level properties of
/// the construction and invariance under automorphisms preserving `profiles`.
pub fn verify_totd(g: &Graph, profiles: &[Profile], totd: &TreeOfTds) -> TotdReport {
    let mut report = TotdReport::default();
    let fail = |r: &mut TotdReport, msg: String| r.failures.push(msg);
    if totd.nodes.is_empty() {
        fail(&mut report, "empty tree".into());
        return report;
    }
    let root = &totd.nodes[0];
    if root.graph.edges().collect::<Vec<_>>() != g.edges().collect::<Vec<_>>() || root.graph.n() != g.n() {
        fail(&mut report, "root graph differs from the input graph".into());
    }
    for (id, n) in totd.nodes.iter().enumerate() {
        match verify_td(&n.graph, &n.td) {
            Ok(r) if r.ok() => {}
            Ok(r) => fail(&mut report, format!("node {id}: decomposition fails {r:?}")),
            Err(e) => fail(&mut report, format!("node {id}: {e}")),
        }
        match n.parent {
            None if id != 0 || n.level != 1 => fail(&mut report, format!("node {id}: detached or misplaced root")),
            Some((p, t)) => {
                let parent = &totd.nodes[p];
                if n.level != parent.level + 1 {
                    fail(&mut report, format!("node {id}: level {} under level {}", n.level, parent.level));
                }
                match node_torso(&parent.graph, &parent.td, t) {
                    Ok(torso) if torso.graph.edges().eq(n.graph.edges()) && torso.graph.n() == n.graph.n() => {}
                    _ => fail(&mut report, format!("node {id}: graph is not torso {t} of node {p}")),
                }
            }
            None => {}
        }
        let k = n.level / 2;
        if n.level % 2 == 0 {
            if !n.truncated {
                if !is_k_balanced(&n.td, k) {
                    fail(&mut report, format!("node {id}: even-level decomposition is not {k}-balanced"));
                }
                if n.children.len() != n.td.node_count() {
                    fail(&mut report, format!(
                        "node {id}: {} children for {} parts",
                        n.children.len(),
                        n.td.node_count()
                    ));
                }
            }
        } else {
            if adhesion(&n.td) > k {
                fail(&mut report, format!("node {id}: odd-level adhesion {} exceeds {k}", adhesion(&n.td)));
            }
            if n.children.len() > 1 {
                fail(&mut report, format!("node {id}: odd-level node has {} children", n.children.len()));
            }
        }
    }

    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            match pair_witness(totd, profiles, i, j) {
                Some(w) => report.witnesses.push(w),
                None => report.undistinguished.push((i, j)),
            }
        }
    }

    match automorphisms(g) {
        Ok(auts) => {
            let base = totd.signature(&VertexPermutation::identity(g.n()));
            for phi in auts {
                let mapped: Vec<Profile> = profiles.iter().map(|p| p.map(&phi)).collect();
                if same_profile_set(&mapped, profiles) && totd.signature(&phi) != base {
                    fail(&mut report, format!("automorphism {:?} does not preserve the structure", phi.images()));
                }
            }
        }
        Err(e) => fail(&mut report, format!("automorphisms: {e}")),
    }
    report
}

fn pair_witness(totd: &TreeOfTds, profiles: &[Profile], i: usize, j: usize) -> Option<PairWitness> {
    for (id, n) in totd.nodes.iter().enumerate() {
        let (Some(a), Some(b)) = (
            n.origin.iter().position(|&o| o == i),
            n.origin.iter().position(|&o| o == j),
        ) else {
            continue;
        };
        for s in induced_separations(&n.td) {
            if !distinguishes_efficiently(s, &n.profiles[a], &n.profiles[b]) {
                continue;
            }
            if let Ok(lifted) = totd.lift_to_root(id, s) {
                if distinguishes_efficiently(lifted, &profiles[i], &profiles[j]) {
                    return Some(PairWitness { i, j, node: id, separation: s, lifted });
                }
            }
        }
    }
    None
}
