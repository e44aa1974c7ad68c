use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sepforge_core::{
    block_profiles, build_tree_of_tds, canonical_td_fixed_k, enumerate_separations, enumerate_tangles, fixtures,
    glue_tree_of_tds, Restrict,
};

fn separations(c: &mut Criterion) {
    let g = fixtures::three_k4_path();
    c.bench_function("enumerate_separations/three_k4_path/3", |b| {
        b.iter(|| enumerate_separations(black_box(&g), 3, Restrict::Proper).unwrap())
    });
}

fn tangles(c: &mut Criterion) {
    let g = fixtures::two_k4();
    c.bench_function("enumerate_tangles/two_k4/3", |b| b.iter(|| enumerate_tangles(black_box(&g), 3).unwrap()));
}

fn decompositions(c: &mut Criterion) {
    let g = fixtures::three_k4_path();
    let ps = block_profiles(&g, 4).unwrap();
    c.bench_function("canonical_td/three_k4_path", |b| {
        b.iter(|| canonical_td_fixed_k(black_box(&g), black_box(&ps)).unwrap())
    });
    c.bench_function("glue/three_k4_path", |b| {
        b.iter(|| {
            let totd = build_tree_of_tds(&g, &ps).unwrap();
            glue_tree_of_tds(&g, &totd, &ps).unwrap()
        })
    });
}

criterion_group!(benches, separations, tangles, decompositions);
criterion_main!(benches);
