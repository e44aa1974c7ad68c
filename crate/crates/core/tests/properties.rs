mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sepforge_core::random::{connected_gnp, rng};
use sepforge_core::{
    automorphisms, block_profiles, canonical_td_fixed_k, check_profile_axioms, compare, corners,
    enumerate_separations, induced_separations, is_nested, is_well_separable, tree_center, Center,
    Comparison, CornerLabel, Graph, Restrict, Separation, VertexPermutation, VertexSet,
};

use common::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

fn graph_and_seps(max_n: usize, count: usize) -> impl Strategy<Value = (Graph, Vec<Separation>)> {
    graph(max_n).prop_flat_map(move |g| {
        let seps: Vec<Separation> = enumerate_separations(&g, g.n(), Restrict::All).unwrap().into_iter().collect();
        let len = seps.len();
        (Just(g), proptest::collection::vec(0..len, count))
            .prop_map(move |(g, idx)| (g, idx.into_iter().map(|i| seps[i]).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_exhaustive_search(g in graph(7), k in 0usize..4) {
        let all = all_separations(&g);
        let engine: BTreeSet<Separation> = enumerate_separations(&g, k, Restrict::All).unwrap();
        let own: BTreeSet<Separation> = all.iter().copied().filter(|&s| order(s) <= k).collect();
        prop_assert_eq!(&engine, &own);
        let proper: BTreeSet<Separation> = enumerate_separations(&g, k, Restrict::Proper).unwrap();
        let own_proper: BTreeSet<Separation> = own.iter().copied().filter(|s| !s.a.is_subset(s.b) && !s.b.is_subset(s.a)).collect();
        prop_assert_eq!(proper, own_proper);
        let lc: BTreeSet<Separation> = enumerate_separations(&g, k, Restrict::LeftConnected).unwrap();
        let own_lc: BTreeSet<Separation> = own.iter().copied().filter(|s| {
            let left = s.a - s.b;
            !left.is_empty() && g.reach(left.min().unwrap(), left) == left
        }).collect();
        prop_assert_eq!(lc, own_lc);
    }

    #[test]
    fn opposite_corner_orders_add_up((_g, s) in graph_and_seps(7, 2)) {
        let c = corners(s[0], s[1]);
        for (x, y) in c.opposite_pairs() {
            prop_assert_eq!(x.order() + y.order(), s[0].order() + s[1].order());
        }
        let own = corner_separations(s[0], s[1]);
        for (i, l) in CornerLabel::ALL.iter().enumerate() {
            prop_assert_eq!(c.separation(*l), own[i]);
        }
    }

    #[test]
    fn corners_and_a_third_separation((_g, s) in graph_and_seps(7, 3)) {
        let (a, b, e) = (s[0], s[1], s[2]);
        prop_assume!(!is_nested(a, b));
        let cs = corner_separations(a, b);
        if is_nested(e, a) && is_nested(e, b) {
            for c in cs {
                prop_assert!(is_nested(c, e));
            }
        }
        if is_nested(e, a) {
            prop_assert!((0..4).any(|k| is_nested(cs[k], e) && is_nested(cs[(k + 1) % 4], e)));
        }
    }

    #[test]
    fn comparison_agrees_with_definitions((_g, s) in graph_and_seps(6, 2)) {
        let (x, y) = (s[0], s[1]);
        let expected = match (le(x, y), le(y, x)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Le,
            (false, true) => Comparison::Ge,
            (false, false) => Comparison::Incomparable,
        };
        prop_assert_eq!(compare(x, y), expected);
        prop_assert_eq!(is_nested(x, y), nested(x, y));
    }

    #[test]
    fn components_partition_the_rest(g in graph(8), bits in 0u32..256) {
        let removed = VertexSet::from_bits(bits) & g.vertices();
        let comps = g.components(removed);
        let mut union = VertexSet::EMPTY;
        for (i, &c) in comps.iter().enumerate() {
            prop_assert!(!c.is_empty());
            prop_assert!(union.is_disjoint(c));
            union |= c;
            prop_assert_eq!(g.reach(c.min().unwrap(), c), c);
            for &d in &comps[i + 1..] {
                prop_assert!(g.no_edge_between(c, d));
            }
        }
        prop_assert_eq!(union, g.vertices() - removed);
    }

    #[test]
    fn automorphisms_form_a_group(g in graph(7)) {
        let auts = automorphisms(&g).unwrap();
        let set: BTreeSet<VertexPermutation> = auts.iter().cloned().collect();
        prop_assert!(auts[0].is_identity());
        for a in &auts {
            prop_assert!(a.is_automorphism_of(&g));
            prop_assert!(set.contains(&a.inverse()));
            for b in &auts {
                prop_assert!(set.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn block_profiles_are_profiles(g in graph(8), k in 1usize..5) {
        for p in block_profiles(&g, k).unwrap() {
            let r = check_profile_axioms(&g, &p).unwrap();
            prop_assert!(r.consistent && r.p2 && r.principal);
        }
    }

    #[test]
    fn robustness_matches_the_unrestricted_definition(g in graph(6), k in 1usize..4) {
        let all = all_separations(&g);
        let mut ps = block_profiles(&g, k).unwrap();
        ps.extend(sepforge_core::enumerate_tangles(&g, k).unwrap());
        for p in ps {
            let mut robust = true;
            for &ab in &p.oriented {
                let x = ab.a & ab.b;
                for &cd in &all {
                    let first = Separation::new_unchecked(ab.b & cd.a, ab.a | cd.b);
                    let second = Separation::new_unchecked(ab.b & cd.b, ab.a | cd.a);
                    if order(first) < x.len()
                        && order(second) < x.len()
                        && p.oriented.contains(&first)
                        && p.oriented.contains(&second)
                    {
                        robust = false;
                    }
                }
            }
            prop_assert_eq!(check_profile_axioms(&g, &p).unwrap().robust, robust);
        }
    }

    #[test]
    fn graph_json_roundtrip(g in graph(8)) {
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn tree_centre_is_fixed_by_tree_automorphisms(seed in 0u64..10_000, n in 1usize..=10) {
        let tree = connected_gnp(&mut rng(seed), n, 0.0);
        let nodes: BTreeSet<usize> = (0..n).collect();
        let edges: Vec<(usize, usize)> = tree.edges().collect();
        let c = tree_center(&nodes, &edges);
        for phi in automorphisms(&tree).unwrap() {
            let image = match c {
                Center::Vertex(v) => Center::Vertex(phi.apply(v)),
                Center::Edge(u, v) => {
                    let (a, b) = (phi.apply(u), phi.apply(v));
                    Center::Edge(a.min(b), a.max(b))
                }
            };
            prop_assert_eq!(image, c);
        }
    }

    #[test]
    fn canonical_decomposition_commutes_with_relabelling(seed in 0u64..500, perm_seed in 0u64..1000) {
        let mut r = rng(seed);
        let (g, _) = sepforge_core::random::clique_glue(&mut r, 3, 4, 2);
        let ps = block_profiles(&g, 4).unwrap();
        prop_assume!(ps.len() >= 2 && is_well_separable(&g, &ps).unwrap());
        let mut images: Vec<usize> = (0..g.n()).collect();
        use rand::seq::SliceRandom;
        images.shuffle(&mut rng(perm_seed));
        let phi = VertexPermutation::from_images(images).unwrap();
        let h = g.permuted(&phi);
        let qs = block_profiles(&h, 4).unwrap();
        let td_g = canonical_td_fixed_k(&g, &ps).unwrap();
        let td_h = canonical_td_fixed_k(&h, &qs).unwrap();
        let mapped: BTreeSet<Separation> = induced_separations(&td_g).iter().map(|s| s.map(&phi)).collect();
        prop_assert_eq!(mapped, induced_separations(&td_h));
    }
}
