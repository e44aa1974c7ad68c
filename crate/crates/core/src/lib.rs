//! Separations, profiles and canonical tree-decompositions of small finite graphs.
//!
//! Everything here is exhaustive: separations, tangles and blocks are
//! enumerated outright, which keeps each construction checkable against a
//! brute-force oracle. Graphs are limited to [`HARD_VERTEX_LIMIT`] vertices and
//! by default to [`DEFAULT_MAX_VERTICES`].

pub mod automorphism;
pub mod block;
pub mod canonical;
pub mod distinguish;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod profile;
pub mod random;
pub mod refine;
pub mod separation;
pub mod tangle;
pub mod torso;
pub mod totd;
pub mod tree;

pub use automorphism::automorphisms;
pub use block::{block_profile, block_profiles, enumerate_k_blocks};
pub use distinguish::{
    component_refine, degenerator, distinguishes, distinguishes_efficiently, efficient_between,
    efficient_set, is_well_separable, kappa, lambda, min_crossing_nested_set,
    min_crossing_nested_set_at, opposite_corner_pair, relevant_set,
};
pub use error::{Error, Result};
pub use graph::{
    max_vertices, set_max_vertices, Graph, VertexPermutation, VertexSet, DEFAULT_MAX_VERTICES,
    HARD_VERTEX_LIMIT,
};
pub use io::{load_graph, Format};
pub use profile::{check_profile_axioms, AxiomReport, Profile, Provenance};
pub use separation::{
    check_star_property, compare, corners, crossing_number, crossing_set, degenerated_components,
    degenerated_separations, enumerate_separations, is_left_connected, is_nested, is_proper,
    is_tight, make_separation, Comparison, CornerLabel, Corners, Restrict, Separation,
    SeparationSet,
};
pub use tangle::{enumerate_tangles, maximal_tangles};
pub use torso::{
    build_torso, build_torso_toward, induce_profile, induce_separation, lift_separation,
    lift_separation_left, InduceContext, Torso,
};
pub use tree::{
    adhesion, build_td_from_nested, induced_separations, is_k_balanced, lives_in, lives_in_block,
    n_block_torso, n_blocks, node_torso, verify_td, TdReport, TreeDecomposition,
};
pub use canonical::{canonical_nested_set_fixed_k, canonical_td_fixed_k, degenerate_star};
pub use totd::{build_tree_of_tds, verify_totd, PairWitness, TotdNode, TotdReport, TreeOfTds};
pub use refine::{glue_tree_of_tds, refine_td, refine_td_with_witness, tree_center, Center, Refinement, Subtree};
