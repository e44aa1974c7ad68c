//! Seeded random instances.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexSet};
use crate::separation::{enumerate_separations, is_nested, Restrict, Separation, SeparationSet};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi graph.
pub fn gnp(rng: &mut InstanceRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are simple")
}

/// A random spanning tree plus independent extra edges with probability `p`.
pub fn connected_gnp(rng: &mut InstanceRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated edges are simple")
}

/// Cliques of size `size` glued in a random tree pattern, each new clique
/// sharing `overlap` vertices with an earlier one. Returns the graph and its cliques.
pub fn clique_glue(rng: &mut InstanceRng, cliques: usize, size: usize, overlap: usize) -> (Graph, Vec<VertexSet>) {
    assert!(overlap < size && cliques >= 1);
    let mut sets: Vec<VertexSet> = vec![VertexSet::full(size)];
    let mut n = size;
    for _ in 1..cliques {
        let host = sets[rng.random_range(0..sets.len())].to_vec();
        let mut shared: Vec<usize> = host.choose_multiple(rng, overlap).copied().collect();
        shared.sort();
        let mut c: VertexSet = shared.into_iter().collect();
        for _ in overlap..size {
            c.insert(n);
            n += 1;
        }
        sets.push(c);
    }
    let mut edges = std::collections::BTreeSet::new();
    for c in &sets {
        for u in c.iter() {
            for v in c.iter().filter(|&v| v > u) {
                edges.insert((u, v));
            }
        }
    }
    (Graph::new(n, edges).expect("generated edges are simple"), sets)
}

/// [`clique_glue`] plus `pendants` new vertices, each attached to a single
/// vertex of a shared separator.
pub fn planted_pendants(rng: &mut InstanceRng, cliques: usize, size: usize, overlap: usize, pendants: usize) -> Graph {
    let (g, sets) = clique_glue(rng, cliques, size, overlap);
    let mut shared = VertexSet::EMPTY;
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            shared |= *a & *b;
        }
    }
    let anchors = if shared.is_empty() { g.vertices() } else { shared }.to_vec();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut n = g.n();
    for _ in 0..pendants {
        edges.push((anchors[rng.random_range(0..anchors.len())], n));
        n += 1;
    }
    Graph::new(n, edges).expect("generated edges are simple")
}

/// A random nested set of proper separations of order at most `max_order`,
/// returned reversal-closed.
pub fn nested_set(rng: &mut InstanceRng, g: &Graph, max_order: usize, max_members: usize) -> SeparationSet {
    let universe = enumerate_separations(g, max_order, Restrict::Proper).expect("graph within the vertex cap");
    let mut pool: Vec<Separation> = universe.into_iter().filter(|s| s <= &s.reverse()).collect();
    pool.shuffle(rng);
    let mut chosen: Vec<Separation> = Vec::new();
    for s in pool {
        if chosen.len() >= max_members {
            break;
        }
        if chosen.iter().all(|&t| is_nested(s, t)) {
            chosen.push(s);
        }
    }
    chosen.iter().flat_map(|&s| [s, s.reverse()]).collect()
}
