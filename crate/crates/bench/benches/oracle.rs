use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qread::oracle::brute_force_min_energy;
use qread::DEFAULT_SEED;

fn bench_brute_force(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_min_energy");
    group.sample_size(10);
    // The grid scan dominated by the small-phase regime.
    group.bench_function("pi_4_k0", |b| {
        b.iter(|| {
            brute_force_min_energy(black_box(PI / 4.0), 0.0, 7, 0, DEFAULT_SEED).unwrap()
        })
    });
    group.bench_function("pi_12_k0", |b| {
        b.iter(|| {
            brute_force_min_energy(black_box(PI / 12.0), 0.0, 13, 0, DEFAULT_SEED).unwrap()
        })
    });
    // Sampling-stage throughput.
    group.bench_function("pi_4_sampling_100k", |b| {
        b.iter(|| {
            brute_force_min_energy(black_box(PI / 4.0), 0.3, 7, 100_000, DEFAULT_SEED).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_brute_force);
criterion_main!(benches);
