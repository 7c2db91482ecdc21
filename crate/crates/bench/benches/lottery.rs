use std::hint::black_box;

use cowpea_bench::{overlapping_slates, ring};
use cowpea_core::{cowpea_lottery, cowpea_weights, lottery_exact_distribution};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn exact_weights(c: &mut Criterion) {
    let mut group = c.benchmark_group("cowpea_weights");
    for n in [8, 12, 16] {
        let ring = ring(n);
        group.bench_with_input(BenchmarkId::new("ring", n), &ring, |b, p| b.iter(|| cowpea_weights(black_box(p))));
    }
    for parties in [3, 4, 5] {
        let slates = overlapping_slates(parties, 3);
        group.bench_with_input(BenchmarkId::new("slates", parties * 3), &slates, |b, p| {
            b.iter(|| cowpea_weights(black_box(p)))
        });
    }
    group.finish();
}

fn exact_distribution(c: &mut Criterion) {
    let mut group = c.benchmark_group("lottery_exact_distribution");
    for n in [6, 8, 10] {
        let ring = ring(n);
        group.bench_with_input(BenchmarkId::new("ring_k3", n), &ring, |b, p| {
            b.iter(|| lottery_exact_distribution(black_box(p), 3))
        });
    }
    group.finish();
}

fn sampled(c: &mut Criterion) {
    let slates = overlapping_slates(10, 10);
    c.bench_function("cowpea_lottery/slates100_k30", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            cowpea_lottery(black_box(&slates), 30, seed)
        })
    });
}

criterion_group!(benches, exact_weights, exact_distribution, sampled);
criterion_main!(benches);
