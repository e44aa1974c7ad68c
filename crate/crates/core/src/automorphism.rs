//! Automorphism enumeration by backtracking.

use crate::error::Result;
use crate::graph::{check_cap, Graph, VertexPermutation, VertexSet};

/// Every automorphism of `g`, sorted lexicographically by image vector.
///
/// Candidates for each vertex are restricted to vertices of the same degree
/// and the same sorted multiset of neighbour degrees; adjacency to already
/// mapped vertices is checked as the search extends.
pub fn automorphisms(g: &Graph) -> Result<Vec<VertexPermutation>> {
    check_cap(g.n())?;
    let n = g.n();
    let signature: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbours(v).iter().map(|w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| signature[w] == signature[v]).collect())
        .collect();

    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = VertexSet::EMPTY;
    search(g, &candidates, 0, &mut image, &mut used, &mut out);
    Ok(out)
}

fn search(
    g: &Graph,
    candidates: &[Vec<usize>],
    v: usize,
    image: &mut Vec<usize>,
    used: &mut VertexSet,
    out: &mut Vec<VertexPermutation>,
) {
    if v == g.n() {
        out.push(VertexPermutation::from_images(image.clone()).expect("bijection"));
        return;
    }
    for &w in &candidates[v] {
        if used.contains(w) {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == g.has_edge(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used.insert(w);
        search(g, candidates, v + 1, image, used, out);
        used.remove(w);
    }
    image[v] = usize::MAX;
}
