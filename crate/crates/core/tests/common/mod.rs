//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the engine's separation or profile algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use sepforge_core::{Graph, Profile, Separation, VertexSet};

/// Every separation `(A, B)`: each vertex goes to `A` only, `B` only, or both,
/// and no edge joins `A ∖ B` to `B ∖ A`.
pub fn all_separations(g: &Graph) -> Vec<Separation> {
    let n = g.n();
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut a = VertexSet::EMPTY;
        let mut b = VertexSet::EMPTY;
        for v in 0..n {
            match c % 3 {
                0 => a.insert(v),
                1 => b.insert(v),
                _ => {
                    a.insert(v);
                    b.insert(v);
                }
            }
            c /= 3;
        }
        let only_a = a - b;
        let only_b = b - a;
        if g.edges().all(|(u, w)| !((only_a.contains(u) && only_b.contains(w)) || (only_a.contains(w) && only_b.contains(u)))) {
            out.push(Separation::new_unchecked(a, b));
        }
    }
    out
}

pub fn le(x: Separation, y: Separation) -> bool {
    x.a.is_subset(y.a) && y.b.is_subset(x.b)
}

pub fn nested(x: Separation, y: Separation) -> bool {
    let ry = Separation::new_unchecked(y.b, y.a);
    le(x, y) || le(y, x) || le(x, ry) || le(ry, x)
}

/// The four corner separations `(E ∩ F, E' ∪ F')`, in the order AC, BC, BD, AD.
pub fn corner_separations(s: Separation, t: Separation) -> [Separation; 4] {
    let (a, b, c, d) = (s.a, s.b, t.a, t.b);
    [
        Separation::new_unchecked(a & c, b | d),
        Separation::new_unchecked(b & c, a | d),
        Separation::new_unchecked(b & d, a | c),
        Separation::new_unchecked(a & d, b | c),
    ]
}

pub fn order(s: Separation) -> usize {
    (s.a & s.b).len()
}

pub fn flip(s: Separation) -> Separation {
    Separation::new_unchecked(s.b, s.a)
}

/// Least order of a separation in `p` whose reverse is in `q`, over all separations of `g`.
pub fn brute_lambda(seps: &[Separation], p: &Profile, q: &Profile) -> Option<usize> {
    seps.iter()
        .filter(|&&s| p.oriented.contains(&s) && q.oriented.contains(&flip(s)))
        .map(|&s| order(s))
        .min()
}

pub fn brute_kappa(seps: &[Separation], ps: &[Profile]) -> Option<usize> {
    let mut best = None;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if let Some(l) = brute_lambda(seps, &ps[i], &ps[j]) {
                best = Some(best.map_or(l, |b: usize| b.min(l)));
            }
        }
    }
    best
}

pub fn brute_efficient_set(seps: &[Separation], ps: &[Profile]) -> BTreeSet<Separation> {
    let Some(k) = brute_kappa(seps, ps) else { return BTreeSet::new() };
    let mut out = BTreeSet::new();
    for &s in seps.iter().filter(|&&s| order(s) == k) {
        for i in 0..ps.len() {
            for j in 0..ps.len() {
                if i != j
                    && ps[i].oriented.contains(&s)
                    && ps[j].oriented.contains(&flip(s))
                    && brute_lambda(seps, &ps[i], &ps[j]) == Some(k)
                {
                    out.insert(s);
                }
            }
        }
    }
    out
}

/// Some member of `seps` distinguishes the two profiles with the least possible order.
pub fn distinguishes_efficiently(all: &[Separation], seps: &BTreeSet<Separation>, p: &Profile, q: &Profile) -> bool {
    let Some(l) = brute_lambda(all, p, q) else { return false };
    seps.iter().any(|&s| order(s) == l && ((p.oriented.contains(&s) && q.oriented.contains(&flip(s))) || (q.oriented.contains(&s) && p.oriented.contains(&flip(s)))))
}

/// Separations induced by the edges of a tree given by parts and edges, both orientations.
pub fn tree_separations(parts: &[VertexSet], edges: &[(usize, usize)]) -> BTreeSet<Separation> {
    let mut out = BTreeSet::new();
    for (i, &(u, _)) in edges.iter().enumerate() {
        let mut side = vec![false; parts.len()];
        side[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for (j, &(p, q)) in edges.iter().enumerate() {
                if j == i {
                    continue;
                }
                for (from, to) in [(p, q), (q, p)] {
                    if from == x && !side[to] {
                        side[to] = true;
                        stack.push(to);
                    }
                }
            }
        }
        let mut a = VertexSet::EMPTY;
        let mut b = VertexSet::EMPTY;
        for (t, &part) in parts.iter().enumerate() {
            if side[t] {
                a |= part;
            } else {
                b |= part;
            }
        }
        out.insert(Separation::new_unchecked(a, b));
        out.insert(Separation::new_unchecked(b, a));
    }
    out
}

pub fn vs(v: &[usize]) -> VertexSet {
    v.iter().collect()
}
