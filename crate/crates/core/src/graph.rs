//! Finite simple graphs over dense vertex identifiers `0..n`.
//!
//! Vertex sets are bitmasks, so every set operation is a handful of integer
//! instructions and iteration is always in ascending order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex count representable by [`VertexSet`] in this crate.
pub const HARD_VERTEX_LIMIT: usize = 24;

/// Default cap on the number of vertices accepted by exponential routines.
pub const DEFAULT_MAX_VERTICES: usize = 16;

static MAX_VERTICES: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_VERTICES);

/// Current vertex cap used by enumeration and automorphism search.
pub fn max_vertices() -> usize {
    MAX_VERTICES.load(AtomicOrdering::Relaxed)
}

/// Raise or lower the vertex cap. Values above [`HARD_VERTEX_LIMIT`] are rejected.
pub fn set_max_vertices(cap: usize) -> Result<()> {
    if cap > HARD_VERTEX_LIMIT {
        return Err(Error::Capacity {
            requested: cap,
            cap: HARD_VERTEX_LIMIT,
        });
    }
    MAX_VERTICES.store(cap, AtomicOrdering::Relaxed);
    Ok(())
}

pub(crate) fn check_cap(n: usize) -> Result<()> {
    let cap = max_vertices();
    if n > cap {
        Err(Error::Capacity { requested: n, cap })
    } else {
        Ok(())
    }
}

/// A set of vertices of a graph with at most [`HARD_VERTEX_LIMIT`] vertices.
///
/// Ordering is lexicographic on the ascending member lists, so `{0,3} < {1}`
/// and `{0} < {0,1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 32 && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: VertexSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under a vertex map given as a lookup table.
    pub fn map(self, image: &[usize]) -> VertexSet {
        self.iter().map(|v| image[v]).collect()
    }

    /// Complement within `0..n`.
    pub fn complement(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let d = diff.trailing_zeros();
        let above = !((1u32 << d) - 1) & !(1u32 << d);
        if self.0 & (1 << d) != 0 {
            // `other` continues with something larger than d, or stops.
            if other.0 & above == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 & above == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for VertexSet {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = members.iter().find(|&&v| v >= HARD_VERTEX_LIMIT) {
            return Err(serde::de::Error::custom(format!(
                "vertex {v} exceeds the hard limit of {HARD_VERTEX_LIMIT}"
            )));
        }
        Ok(members.into_iter().collect())
    }
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    name: Option<String>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > HARD_VERTEX_LIMIT {
            return Err(Error::Capacity {
                requested: n,
                cap: HARD_VERTEX_LIMIT,
            });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("edge {u}-{v} has an endpoint outside 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            if adj[u].contains(v) {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("parallel edge {u}-{v}"),
                });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Connected components of `g - removed`, each sorted, listed by minimum element.
    pub fn components(&self, removed: VertexSet) -> Vec<VertexSet> {
        self.components_within(self.vertices() - removed)
    }

    /// Connected components of the induced subgraph `g[within]`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(start) = rest.min() {
            let comp = self.reach(start, within);
            rest = rest - comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `g[within]`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= self.adj[v];
            }
            next = (next & within) - seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected_set(&self, set: VertexSet) -> bool {
        match set.min() {
            None => false,
            Some(v) => self.reach(v, set) == set,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_set(self.vertices())
    }

    /// `N(s)`: vertices outside `s` adjacent to some member of `s`.
    pub fn neighbourhood(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in s {
            out |= self.adj[v];
        }
        out - s
    }

    /// True if no edge joins `x` and `y`.
    pub fn no_edge_between(&self, x: VertexSet, y: VertexSet) -> bool {
        x.iter().all(|v| self.adj[v].is_disjoint(y))
    }

    /// Induced subgraph on `part`, relabelled densely in ascending order,
    /// together with the map from new to old identifiers.
    pub fn induced(&self, part: VertexSet) -> (Graph, Vec<usize>) {
        let relabel = part.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in relabel.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![VertexSet::EMPTY; relabel.len()];
        for (i, &v) in relabel.iter().enumerate() {
            for w in self.adj[v] & part {
                adj[i].insert(index[w]);
            }
        }
        (
            Graph {
                n: relabel.len(),
                adj,
                name: None,
            },
            relabel,
        )
    }

    /// Adds every edge inside `clique`. Used for torso fill-in.
    pub(crate) fn add_clique(&mut self, clique: VertexSet) {
        for v in clique {
            self.adj[v] |= clique - VertexSet::singleton(v);
        }
    }

    /// Image of the graph under a bijection `image`.
    pub fn permuted(&self, perm: &VertexPermutation) -> Graph {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for v in 0..self.n {
            adj[perm.apply(v)] = self.adj[v].map(perm.images());
        }
        Graph {
            n: self.n,
            adj,
            name: self.name.clone(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .field("name", &self.name)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            name: self.name.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        let g = Graph::new(raw.n, raw.edges.iter().map(|e| (e[0], e[1])))
            .map_err(serde::de::Error::custom)?;
        Ok(match raw.name {
            Some(name) => g.with_name(name),
            None => g,
        })
    }
}

/// A bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPermutation {
    image: Vec<usize>,
}

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation {
            image: (0..n).collect(),
        }
    }

    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        if distinct.len() != n || image.iter().any(|&v| v >= n) {
            return Err(Error::InvalidSeparation(format!(
                "{image:?} is not a permutation of 0..{n}"
            )));
        }
        Ok(VertexPermutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn apply_set(&self, s: VertexSet) -> VertexSet {
        s.map(&self.image)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &VertexPermutation) -> VertexPermutation {
        VertexPermutation {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> VertexPermutation {
        let mut inv = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        VertexPermutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.image.len() == g.n() && g.edges().all(|(u, v)| g.has_edge(self.apply(u), self.apply(v)))
    }
}
