//! Small named graphs used throughout the tests and by the command line.

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)], name: &str) -> Graph {
    Graph::new(n, edges.iter().copied())
        .expect("fixture edges are valid")
        .with_name(name)
}

fn clique_edges(vs: &[usize], out: &mut Vec<(usize, usize)>) {
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let e = (u.min(v), u.max(v));
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
}

pub fn p3() -> Graph {
    build(3, &[(0, 1), (1, 2)], "P3")
}

pub fn c4() -> Graph {
    build(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], "C4")
}

pub fn c6() -> Graph {
    build(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)], "C6")
}

pub fn k4() -> Graph {
    let mut e = Vec::new();
    clique_edges(&[0, 1, 2, 3], &mut e);
    build(4, &e, "K4")
}

/// K4 on {0,1,2,3} and K4 on {2,3,4,5}, sharing the edge 2-3.
pub fn two_k4() -> Graph {
    let mut e = Vec::new();
    clique_edges(&[0, 1, 2, 3], &mut e);
    clique_edges(&[2, 3, 4, 5], &mut e);
    build(6, &e, "TwoK4")
}

/// [`two_k4`] with an extra vertex 6 adjacent only to 2.
pub fn two_k4_pendant() -> Graph {
    let mut e = Vec::new();
    clique_edges(&[0, 1, 2, 3], &mut e);
    clique_edges(&[2, 3, 4, 5], &mut e);
    e.push((2, 6));
    build(7, &e, "TwoK4Pendant")
}

/// K4s on {0,1,2,3}, {2,3,4,5} and {4,5,6,7}.
pub fn three_k4_path() -> Graph {
    let mut e = Vec::new();
    clique_edges(&[0, 1, 2, 3], &mut e);
    clique_edges(&[2, 3, 4, 5], &mut e);
    clique_edges(&[4, 5, 6, 7], &mut e);
    build(8, &e, "ThreeK4Path")
}

pub fn star13() -> Graph {
    build(4, &[(0, 1), (0, 2), (0, 3)], "Star13")
}

pub const NAMES: [&str; 8] = [
    "P3",
    "C4",
    "C6",
    "K4",
    "TwoK4",
    "TwoK4Pendant",
    "ThreeK4Path",
    "Star13",
];

pub fn by_name(name: &str) -> Option<Graph> {
    Some(match name {
        "P3" => p3(),
        "C4" => c4(),
        "C6" => c6(),
        "K4" => k4(),
        "TwoK4" => two_k4(),
        "TwoK4Pendant" => two_k4_pendant(),
        "ThreeK4Path" => three_k4_path(),
        "Star13" => star13(),
        _ => return None,
    })
}

pub fn all() -> Vec<Graph> {
    NAMES.iter().map(|n| by_name(n).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_sizes() {
        assert_eq!(k4().edge_count(), 6);
        assert_eq!(two_k4().edge_count(), 11);
        assert_eq!(two_k4_pendant().edge_count(), 12);
        assert_eq!(three_k4_path().edge_count(), 16);
        for g in all() {
            assert!(g.is_connected(), "{:?}", g.name());
        }
    }
}
