use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ktruss::minimize::{solve, Algorithm, SolverConfig};
use ktruss_bench::{facebook_like, small};
use std::hint::black_box;

fn greedy(c: &mut Criterion) {
    let g = facebook_like();
    let mut group = c.benchmark_group("minimize");
    group.sample_size(10);
    for k in [10, 20] {
        for alg in [Algorithm::Baseline, Algorithm::GpEdge, Algorithm::UpEdge] {
            let cfg = SolverConfig::new(k, 5, alg);
            group.bench_with_input(BenchmarkId::new(alg.name(), format!("k{k}_b5")), &cfg, |b, cfg| {
                b.iter(|| solve(black_box(&g), cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn heuristic(c: &mut Criterion) {
    let g = small();
    let cfg = SolverConfig::new(10, 5, Algorithm::Support);
    c.bench_function("minimize/support/k10_b5", |b| b.iter(|| solve(black_box(&g), &cfg).unwrap()));
}

criterion_group!(benches, greedy, heuristic);
criterion_main!(benches);
