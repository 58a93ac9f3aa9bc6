use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use zerosum_bench::{group, spread_subset};
use zerosum_core::{
    class_shape_match, enumerate_zsf_subsets, min_sigma, verify_quotient_bound, SearchOptions,
    SubsetSeq,
};

fn sigma_set(c: &mut Criterion) {
    let cyclic = group("Z1024");
    let s = spread_subset(&cyclic, 14);
    c.bench_function("sigma_set/Z1024/14 terms", |b| {
        b.iter(|| black_box(&s).sigma_set().unwrap().popcount())
    });

    let product = group("Z32xZ32");
    let s = spread_subset(&product, 14);
    c.bench_function("sigma_set/Z32xZ32/14 terms", |b| {
        b.iter(|| black_box(&s).sigma_set().unwrap().popcount())
    });
}

fn enumeration(c: &mut Criterion) {
    let z20 = group("Z20");
    c.bench_function("enumerate_zsf/Z20/k=6", |b| {
        b.iter(|| {
            let mut leaves = 0u64;
            enumerate_zsf_subsets(black_box(&z20), 6, |_, _| leaves += 1).unwrap();
            leaves
        })
    });

    let z16 = group("Z16");
    c.bench_function("min_sigma/Z16/k=5", |b| {
        b.iter(|| min_sigma(black_box(&z16), 5, SearchOptions::default()).unwrap().min_sigma)
    });

    c.bench_function("min_sigma/Z20/k=6/fast-cyclic", |b| {
        let opts = SearchOptions {
            threads: 1,
            unit_reduced: true,
        };
        b.iter(|| min_sigma(black_box(&z20), 6, opts).unwrap().min_sigma)
    });
}

fn partitions_and_shapes(c: &mut Criterion) {
    let z20 = group("Z20");
    let witness = SubsetSeq::subset(Arc::clone(&z20), &[18, 1, 3, 4, 5, 6]).unwrap();
    c.bench_function("partition_classes/Z20 witness", |b| {
        b.iter(|| black_box(&witness).partition_classes().unwrap().class_count())
    });

    let partition = witness.partition_classes().unwrap();
    c.bench_function("class_shape_match/720 permutations", |b| {
        b.iter(|| class_shape_match(black_box(&partition), 4).unwrap().len())
    });
}

fn quotient(c: &mut Criterion) {
    let g = group("Z24");
    c.bench_function("verify_quotient/Z24/100 trials", |b| {
        b.iter(|| verify_quotient_bound(black_box(&g), 100).unwrap().passed())
    });
}

criterion_group!(benches, sigma_set, enumeration, partitions_and_shapes, quotient);
criterion_main!(benches);
