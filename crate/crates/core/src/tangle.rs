//! Enumeration of tangles.
//!
//! A tangle of order `k` picks, for every vertex set `X` with `|X| < k`, one
//! component `C_X` of `G - X` and contains exactly the separations `(A,B)`
//! of order below `k` with `C_{A∩B} ⊆ B`. The largest small side with
//! separator `X` is `V ∖ C_X`, so the no-three-small-sides-cover condition only
//! needs to be checked on those maximal sides. Choices are made in order of
//! increasing `|X|`; for `Y ⊂ X` the choice must satisfy `C_X ⊆ C_Y`.

use std::collections::{BTreeSet, HashMap};

use crate::error::Result;
use crate::graph::{check_cap, Graph, VertexSet};
use crate::profile::{Profile, Provenance};
use crate::separation::{for_each_subset_up_to, separations_with_separator, Restrict, Separation};

/// Vertex set plus edge set of an induced subgraph, as bitmasks.
#[derive(Clone, Copy)]
struct Side {
    vertices: VertexSet,
    edges: u128,
}

struct EdgeIndex {
    index: Vec<Vec<usize>>,
    all: u128,
}

impl EdgeIndex {
    fn new(g: &Graph) -> Self {
        let mut index = vec![vec![usize::MAX; g.n()]; g.n()];
        let mut count = 0;
        for (u, v) in g.edges() {
            index[u][v] = count;
            index[v][u] = count;
            count += 1;
        }
        let all = if count == 128 { u128::MAX } else { (1u128 << count) - 1 };
        EdgeIndex { index, all }
    }

    fn side(&self, g: &Graph, s: VertexSet) -> Side {
        let mut edges = 0u128;
        for u in s {
            for v in g.neighbours(u) & s {
                edges |= 1u128 << self.index[u][v];
            }
        }
        Side { vertices: s, edges }
    }
}

struct Search<'a> {
    g: &'a Graph,
    edges: EdgeIndex,
    separators: Vec<VertexSet>,
    position: HashMap<VertexSet, usize>,
    components: Vec<Vec<VertexSet>>,
    chosen: Vec<usize>,
    sides: Vec<Side>,
    results: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn covers(&self, a: Side, b: Side, c: Side) -> bool {
        (a.vertices | b.vertices | c.vertices) == self.g.vertices()
            && (a.edges | b.edges | c.edges) == self.edges.all
    }

    fn run(&mut self, i: usize) {
        if i == self.separators.len() {
            self.results.push(self.chosen.clone());
            return;
        }
        let x = self.separators[i];
        let mut allowed = self.g.vertices() - x;
        for v in x {
            let mut y = x;
            y.remove(v);
            let j = self.position[&y];
            allowed = allowed & self.components[j][self.chosen[j]];
        }
        for ci in 0..self.components[i].len() {
            let c = self.components[i][ci];
            if !c.is_subset(allowed) {
                continue;
            }
            let side = self.edges.side(self.g, self.g.vertices() - c);
            let mut ok = !self.covers(side, side, side);
            'outer: for j in 0..i {
                if !ok {
                    break;
                }
                if self.covers(side, side, self.sides[j]) {
                    ok = false;
                    break;
                }
                for l in j..i {
                    if self.covers(side, self.sides[j], self.sides[l]) {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if !ok {
                continue;
            }
            self.chosen.push(ci);
            self.sides.push(side);
            self.run(i + 1);
            self.chosen.pop();
            self.sides.pop();
        }
    }
}

/// All tangles of order `k`, as profiles with bound `k`, in canonical order.
pub fn enumerate_tangles(g: &Graph, k: usize) -> Result<Vec<Profile>> {
    check_cap(g.n())?;
    if k == 0 {
        return Ok(vec![Profile::new(0, BTreeSet::new(), Provenance::Tangle)]);
    }
    let mut separators = Vec::new();
    for_each_subset_up_to(g.vertices(), k - 1, |x| separators.push(x));
    let position = separators.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let components = separators.iter().map(|&x| g.components(x)).collect();
    let mut search = Search {
        g,
        edges: EdgeIndex::new(g),
        separators,
        position,
        components,
        chosen: Vec::new(),
        sides: Vec::new(),
        results: Vec::new(),
    };
    search.run(0);

    let mut out: Vec<Profile> = search
        .results
        .iter()
        .map(|choice| {
            let mut oriented = BTreeSet::new();
            for (i, &x) in search.separators.iter().enumerate() {
                let c = search.components[i][choice[i]];
                separations_with_separator(g, x, Restrict::All, |s| {
                    if c.is_subset(s.b) {
                        oriented.insert(s);
                    }
                });
            }
            Profile::new(k, oriented, Provenance::Tangle)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Tangles of every order in `orders`, dropping any that is the truncation
/// of a tangle of higher order in the list.
pub fn maximal_tangles(g: &Graph, orders: std::ops::RangeInclusive<usize>) -> Result<Vec<Profile>> {
    let mut all = Vec::new();
    for k in orders {
        all.extend(enumerate_tangles(g, k)?);
    }
    let keep: Vec<bool> = all
        .iter()
        .map(|p| {
            !all.iter()
                .any(|q| q.bound > p.bound && p.oriented.is_subset(&q.oriented))
        })
        .collect();
    Ok(all
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect())
}

/// Reference enumeration that follows the axioms literally: orient the
/// order-`< k` separations one at a time in canonical order, rejecting any
/// partial orientation in which three chosen small sides cover the graph,
/// and finally keep the orientations with the component property.
pub fn enumerate_tangles_brute_force(g: &Graph, k: usize) -> Result<Vec<Profile>> {
    check_cap(g.n())?;
    let universe = crate::profile::profile_universe(g, k)?;
    let pairs: Vec<Separation> = universe
        .iter()
        .copied()
        .filter(|s| *s <= s.reverse())
        .collect();
    let edges = EdgeIndex::new(g);
    let mut out = Vec::new();
    let mut chosen: Vec<(Separation, Side)> = Vec::new();
    orient(g, &edges, &pairs, &mut chosen, &mut out, k);
    out.sort();
    Ok(out)
}

fn orient(
    g: &Graph,
    edges: &EdgeIndex,
    pairs: &[Separation],
    chosen: &mut Vec<(Separation, Side)>,
    out: &mut Vec<Profile>,
    k: usize,
) {
    let covers = |a: Side, b: Side, c: Side| {
        (a.vertices | b.vertices | c.vertices) == g.vertices()
            && (a.edges | b.edges | c.edges) == edges.all
    };
    let i = chosen.len();
    if i == pairs.len() {
        let set: BTreeSet<Separation> = chosen.iter().map(|&(s, _)| s).collect();
        let mut principal = true;
        for_each_subset_up_to(g.vertices(), k - 1, |x| {
            principal &= g
                .components(x)
                .into_iter()
                .any(|c| set.contains(&Separation::new_unchecked(g.vertices() - c, c | x)));
        });
        if principal {
            out.push(Profile::new(k, set, Provenance::Tangle));
        }
        return;
    }
    let base = pairs[i];
    let options = if base == base.reverse() { vec![base] } else { vec![base, base.reverse()] };
    for s in options {
        let side = edges.side(g, s.a);
        let mut ok = !covers(side, side, side);
        'check: for j in 0..i {
            if !ok {
                break;
            }
            if covers(side, side, chosen[j].1) {
                ok = false;
                break;
            }
            for l in j..i {
                if covers(side, chosen[j].1, chosen[l].1) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            chosen.push((s, side));
            orient(g, edges, pairs, chosen, out, k);
            chosen.pop();
        }
    }
}
