//! Sequential (one-thread pool) vs default rayon pool on the data-parallel kernels.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pinrep::build_majorana_basis;
use pinrep::fields::{band_limited, evolve, fourier_majorana, GridSpec};
use pinrep::par::with_threads;
use pinrep::propagator::{causality_scan, default_ladder};
use std::hint::black_box;

fn pools() -> Vec<(&'static str, usize)> {
    let all = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    vec![("sequential", 1), ("parallel", all)]
}

fn fourier(c: &mut Criterion) {
    let b = build_majorana_basis();
    let mut g = c.benchmark_group("fourier_majorana_32");
    let f = band_limited(GridSpec::new(32, 0.2).unwrap(), 1, 1.0, 3, 1);
    for (name, threads) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &threads, |bench, &t| {
            bench.iter(|| with_threads(t, || fourier_majorana(black_box(&f), &b).unwrap()))
        });
    }
    g.finish();
}

fn evolution(c: &mut Criterion) {
    let b = build_majorana_basis();
    let mut g = c.benchmark_group("evolve_32");
    let f = band_limited(GridSpec::new(32, 0.2).unwrap(), 1, 1.0, 3, 2);
    for (name, threads) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &threads, |bench, &t| {
            bench.iter(|| with_threads(t, || evolve(black_box(&f), 0.5, &b).unwrap()))
        });
    }
    g.finish();
}

fn scan(c: &mut Criterion) {
    let b = build_majorana_basis();
    let ladder = default_ladder();
    let radii: Vec<f64> = (1..=16).map(|k| 0.25 * k as f64).collect();
    let mut g = c.benchmark_group("causality_scan");
    for (name, threads) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &threads, |bench, &t| {
            bench.iter(|| {
                with_threads(t, || {
                    causality_scan(black_box(&radii), 1.0, &ladder, &b).unwrap()
                })
            })
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = fourier, evolution, scan
}
criterion_main!(benches);
