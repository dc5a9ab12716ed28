//! Compare the rayon fan-out against the sequential fallback on the two
//! heaviest corpus workloads: the normalized-subcomplex cohomology batch and
//! the derived-limit batch. Both paths produce identical reports; the bench
//! measures the wall-clock difference.

use criterion::{criterion_group, criterion_main, Criterion};

use cosimplex::cosab::{cn_subcomplex, cohomology_h, derived_limit_cobar, moore_complex, CnCut};
use cosimplex::exec;
use cosimplex::gen;

fn lemma18_case(seed: u64, k: u64) -> bool {
    let mut rng = gen::rng_for(seed, k);
    let a = gen::random_cosimp_ab(&mut rng, 3, 2);
    let moore = moore_complex(&a);
    let (cn, _) = cn_subcomplex(&a, CnCut::All).unwrap();
    (0..3).all(|n| {
        cn.cohomology(n as i64).unwrap().invariant_factors()
            == moore.cohomology(n as i64).unwrap().invariant_factors()
    })
}

fn lemma22_case(seed: u64, k: u64) -> bool {
    let mut rng = gen::rng_for(seed, k);
    let a = gen::random_cosimp_ab(&mut rng, 4, 2);
    (0..=2).all(|n| {
        derived_limit_cobar(&a, n).unwrap().invariant_factors()
            == cohomology_h(&a, n).unwrap().invariant_factors()
    })
}

fn bench_corpora(c: &mut Criterion) {
    let cases: Vec<u64> = (0..16).collect();

    let mut group = c.benchmark_group("normalized_cohomology_batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let out = exec::map_collect(cases.clone(), |k| lemma18_case(99, k));
            assert!(out.iter().all(|&ok| ok));
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let out = exec::map_collect_seq(cases.clone(), |k| lemma18_case(99, k));
            assert!(out.iter().all(|&ok| ok));
        })
    });
    group.finish();

    let mut group = c.benchmark_group("derived_limit_batch");
    group.sample_size(10);
    let small: Vec<u64> = (0..8).collect();
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let out = exec::map_collect(small.clone(), |k| lemma22_case(7, k));
            assert!(out.iter().all(|&ok| ok));
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let out = exec::map_collect_seq(small.clone(), |k| lemma22_case(7, k));
            assert!(out.iter().all(|&ok| ok));
        })
    });
    group.finish();
}

criterion_group!(benches, bench_corpora);
criterion_main!(benches);
