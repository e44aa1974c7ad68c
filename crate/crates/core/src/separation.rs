//! Vertex separations and the lattice operations on them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_cap, Graph, VertexPermutation, VertexSet};

/// An oriented separation `(A, B)`.
///
/// Only the two sides are stored; the separator and order are recomputed on
/// demand. Construct checked values with [`make_separation`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Separation {
    #[serde(rename = "A")]
    pub a: VertexSet,
    #[serde(rename = "B")]
    pub b: VertexSet,
}

/// Separations in canonical order: by order, then `A`, then `B`.
pub type SeparationSet = BTreeSet<Separation>;

impl Separation {
    /// Builds a separation without checking that it is one.
    pub fn new_unchecked(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    pub fn separator(self) -> VertexSet {
        self.a & self.b
    }

    pub fn order(self) -> usize {
        self.separator().len()
    }

    pub fn reverse(self) -> Separation {
        Separation {
            a: self.b,
            b: self.a,
        }
    }

    /// `A ∖ B`.
    pub fn left(self) -> VertexSet {
        self.a - self.b
    }

    /// `B ∖ A`.
    pub fn right(self) -> VertexSet {
        self.b - self.a
    }

    /// `self ≤ other`, meaning `A ⊆ C` and `D ⊆ B`.
    pub fn le(self, other: Separation) -> bool {
        self.a.is_subset(other.a) && other.b.is_subset(self.b)
    }

    pub fn lt(self, other: Separation) -> bool {
        self != other && self.le(other)
    }

    pub fn map(self, perm: &VertexPermutation) -> Separation {
        Separation {
            a: perm.apply_set(self.a),
            b: perm.apply_set(self.b),
        }
    }

    /// Maps both sides through a lookup table (for relabelling between graphs).
    pub fn map_table(self, image: &[usize]) -> Separation {
        Separation {
            a: self.a.map(image),
            b: self.b.map(image),
        }
    }

    /// True if `(A,B)` is a separation of `g`.
    pub fn is_valid_for(self, g: &Graph) -> bool {
        validate(g, self.a, self.b).is_ok()
    }
}

impl Ord for Separation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for Separation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.a, self.b)
    }
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn validate(g: &Graph, a: VertexSet, b: VertexSet) -> std::result::Result<(), String> {
    let v = g.vertices();
    if !a.is_subset(v) || !b.is_subset(v) {
        return Err(format!("sides {a:?}, {b:?} contain non-vertices"));
    }
    if let Some(x) = (v - (a | b)).min() {
        return Err(format!("vertex {x} lies in neither side"));
    }
    let left = a - b;
    let right = b - a;
    for u in left {
        if let Some(w) = (g.neighbours(u) & right).min() {
            return Err(format!("edge {u}-{w} joins A\\B to B\\A"));
        }
    }
    Ok(())
}

/// Checks that `(a, b)` is a separation of `g`.
pub fn make_separation(g: &Graph, a: VertexSet, b: VertexSet) -> Result<Separation> {
    validate(g, a, b).map_err(Error::InvalidSeparation)?;
    Ok(Separation { a, b })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Le,
    Ge,
    Equal,
    Incomparable,
}

pub fn compare(s1: Separation, s2: Separation) -> Comparison {
    match (s1.le(s2), s2.le(s1)) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Le,
        (false, true) => Comparison::Ge,
        (false, false) => Comparison::Incomparable,
    }
}

pub fn is_nested(s1: Separation, s2: Separation) -> bool {
    let r = s2.reverse();
    s1.le(s2) || s2.le(s1) || s1.le(r) || r.le(s1)
}

/// Which side of each input separation a corner uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CornerLabel {
    /// `A ∩ C`
    AC,
    /// `B ∩ C`
    BC,
    /// `B ∩ D`
    BD,
    /// `A ∩ D`
    AD,
}

impl CornerLabel {
    pub const ALL: [CornerLabel; 4] = [
        CornerLabel::AC,
        CornerLabel::BC,
        CornerLabel::BD,
        CornerLabel::AD,
    ];

    pub fn opposite(self) -> CornerLabel {
        match self {
            CornerLabel::AC => CornerLabel::BD,
            CornerLabel::BD => CornerLabel::AC,
            CornerLabel::BC => CornerLabel::AD,
            CornerLabel::AD => CornerLabel::BC,
        }
    }

    pub fn is_adjacent(self, other: CornerLabel) -> bool {
        self != other && self.opposite() != other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Corner {
    pub label: CornerLabel,
    /// The corner set `E ∩ F`.
    pub set: VertexSet,
    /// `(E ∩ F) ∖ (E' ∪ F')`.
    pub interior: VertexSet,
    /// The corner separation `(E ∩ F, E' ∪ F')`.
    pub separation: Separation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corners {
    /// Indexed in the order of [`CornerLabel::ALL`].
    pub corners: [Corner; 4],
    /// `A ∩ B ∩ C ∩ D`.
    pub centre: VertexSet,
    /// Links between adjacent corners: AC|BC, BC|BD, BD|AD, AD|AC.
    pub links: [(CornerLabel, CornerLabel, VertexSet); 4],
}

impl Corners {
    pub fn get(&self, label: CornerLabel) -> &Corner {
        &self.corners[CornerLabel::ALL.iter().position(|&l| l == label).unwrap()]
    }

    pub fn separation(&self, label: CornerLabel) -> Separation {
        self.get(label).separation
    }

    /// The two pairs of opposite corner separations. The second member of
    /// each pair is `(E ∪ F, E' ∩ F')`, the reverse of the opposite corner's
    /// separation.
    pub fn opposite_pairs(&self) -> [(Separation, Separation); 2] {
        [
            (
                self.separation(CornerLabel::AC),
                self.separation(CornerLabel::BD).reverse(),
            ),
            (
                self.separation(CornerLabel::BC),
                self.separation(CornerLabel::AD).reverse(),
            ),
        ]
    }
}

pub fn corners(s1: Separation, s2: Separation) -> Corners {
    let (a, b, c, d) = (s1.a, s1.b, s2.a, s2.b);
    let side = |label: CornerLabel| match label {
        CornerLabel::AC => (a, b, c, d),
        CornerLabel::BC => (b, a, c, d),
        CornerLabel::BD => (b, a, d, c),
        CornerLabel::AD => (a, b, d, c),
    };
    let corners = CornerLabel::ALL.map(|label| {
        let (e, e2, f, f2) = side(label);
        let set = e & f;
        Corner {
            label,
            set,
            interior: set - (e2 | f2),
            separation: Separation::new_unchecked(set, e2 | f2),
        }
    });
    let centre = a & b & c & d;
    let pairs = [
        (CornerLabel::AC, CornerLabel::BC),
        (CornerLabel::BC, CornerLabel::BD),
        (CornerLabel::BD, CornerLabel::AD),
        (CornerLabel::AD, CornerLabel::AC),
    ];
    let set_of = |l: CornerLabel| corners[CornerLabel::ALL.iter().position(|&x| x == l).unwrap()].set;
    let links = pairs.map(|(x, y)| (x, y, (set_of(x) & set_of(y)) - centre));
    Corners {
        corners,
        centre,
        links,
    }
}

/// Neither `(A,B) ≤ (B,A)` nor `(B,A) ≤ (A,B)`.
pub fn is_proper(s: Separation) -> bool {
    !s.a.is_subset(s.b) && !s.b.is_subset(s.a)
}

/// `A ∖ B` is nonempty and connected.
pub fn is_left_connected(g: &Graph, s: Separation) -> bool {
    g.is_connected_set(s.left())
}

/// Some component inside `A ∖ B` and some inside `B ∖ A` both have the
/// whole separator as neighbourhood.
pub fn is_tight(g: &Graph, s: Separation) -> bool {
    let x = s.separator();
    let full = |side: VertexSet| {
        g.components_within(side)
            .into_iter()
            .any(|c| x.is_subset(g.neighbourhood(c)))
    };
    full(s.left()) && full(s.right())
}

/// Components `C` of `g - (A∩B)` with `N(C) ⊊ A∩B`.
pub fn degenerated_components(g: &Graph, s: Separation) -> Vec<VertexSet> {
    let x = s.separator();
    g.components(x)
        .into_iter()
        .filter(|&c| g.neighbourhood(c).is_proper_subset(x))
        .collect()
}

pub fn degenerated_separations(g: &Graph, s: Separation) -> SeparationSet {
    degenerated_components(g, s)
        .into_iter()
        .map(|c| component_separation(g, c))
        .collect()
}

/// `(C ∪ N(C), V ∖ C)`.
pub fn component_separation(g: &Graph, c: VertexSet) -> Separation {
    Separation::new_unchecked(c | g.neighbourhood(c), g.vertices() - c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restrict {
    All,
    LeftConnected,
    Proper,
}

/// Calls `f` on every subset of `universe` of size at most `k`, by size and
/// then in increasing bit order.
pub fn for_each_subset_up_to(universe: VertexSet, k: usize, mut f: impl FnMut(VertexSet)) {
    let members = universe.to_vec();
    let m = members.len();
    for size in 0..=k.min(m) {
        if size == 0 {
            f(VertexSet::EMPTY);
            continue;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            f(idx.iter().map(|&i| members[i]).collect());
            let mut i = size;
            while i > 0 && idx[i - 1] == m - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// Every separation of order at most `max_order` meeting the restriction.
///
/// Generated separator first: for each vertex set `X` the components of
/// `g - X` are distributed over the two sides in every possible way.
pub fn enumerate_separations(g: &Graph, max_order: usize, restrict: Restrict) -> Result<SeparationSet> {
    check_cap(g.n())?;
    let mut out = SeparationSet::new();
    for_each_subset_up_to(g.vertices(), max_order, |x| {
        separations_with_separator(g, x, restrict, |s| {
            out.insert(s);
        });
    });
    Ok(out)
}

/// Every separation whose separator is exactly `x`.
pub fn separations_with_separator(
    g: &Graph,
    x: VertexSet,
    restrict: Restrict,
    mut f: impl FnMut(Separation),
) {
    let comps = g.components(x);
    let v = g.vertices();
    match restrict {
        Restrict::LeftConnected => {
            for &c in &comps {
                f(Separation::new_unchecked(c | x, v - c));
            }
        }
        Restrict::All | Restrict::Proper => {
            let c = comps.len();
            for mask in 0u64..(1u64 << c) {
                let mut a = x;
                for (i, &comp) in comps.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        a |= comp;
                    }
                }
                let b = x | (v - a);
                let s = Separation::new_unchecked(a, b);
                if restrict == Restrict::All || is_proper(s) {
                    f(s);
                }
            }
        }
    }
}

/// Members of `universe` that cross `s`.
pub fn crossing_set(s: Separation, universe: &SeparationSet) -> SeparationSet {
    universe
        .iter()
        .copied()
        .filter(|&t| !is_nested(s, t))
        .collect()
}

pub fn crossing_number(s: Separation, universe: &SeparationSet) -> usize {
    universe.iter().filter(|&&t| !is_nested(s, t)).count()
}

/// The finiteness condition on intervals. Always satisfied by finite sets.
pub fn check_star_property(set: &SeparationSet) -> bool {
    let _ = set;
    true
}

/// True if every pair in the set is nested.
pub fn is_nested_set<'a>(set: impl IntoIterator<Item = &'a Separation>) -> bool {
    first_crossing_pair(set).is_none()
}

pub fn first_crossing_pair<'a>(
    set: impl IntoIterator<Item = &'a Separation>,
) -> Option<(Separation, Separation)> {
    let items: Vec<Separation> = set.into_iter().copied().collect();
    for (i, &s) in items.iter().enumerate() {
        for &t in &items[i + 1..] {
            if !is_nested(s, t) {
                return Some((s, t));
            }
        }
    }
    None
}

/// Adds the reverse of every member.
pub fn reversal_closure<'a>(set: impl IntoIterator<Item = &'a Separation>) -> SeparationSet {
    let mut out = SeparationSet::new();
    for &s in set {
        out.insert(s);
        out.insert(s.reverse());
    }
    out
}

pub fn map_set(set: &SeparationSet, perm: &VertexPermutation) -> SeparationSet {
    set.iter().map(|s| s.map(perm)).collect()
}
