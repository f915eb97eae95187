use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mipt_core::circuit::brick_bonds;
use mipt_core::{
    correlation_profile, run_realization, tableau_to_graph, CircuitConfig, CliffordTwoQubit, Gate, StabilizerTableau,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scrambled(size: usize, seed: u64) -> StabilizerTableau {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = StabilizerTableau::new(size).unwrap();
    for layer in 1..=2 * size {
        for (a, b) in brick_bonds(size, layer) {
            t.apply(&Gate::Clifford(CliffordTwoQubit::sample(&mut rng), a, b)).unwrap();
        }
    }
    t
}

fn clifford_sampling(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    c.bench_function("sample two-qubit clifford", |b| b.iter(|| CliffordTwoQubit::sample(&mut rng)));
}

fn brick_layer(c: &mut Criterion) {
    let mut group = c.benchmark_group("brick layer");
    for size in [32usize, 64, 128] {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let gates: Vec<Gate> =
            brick_bonds(size, 2).map(|(a, b)| Gate::Clifford(CliffordTwoQubit::sample(&mut rng), a, b)).collect();
        let mut t = scrambled(size, 3);
        group.bench_with_input(BenchmarkId::from_parameter(size), &gates, |b, gates| {
            b.iter(|| t.apply_all(gates.iter()).unwrap())
        });
    }
    group.finish();
}

fn z_measurement(c: &mut Criterion) {
    let mut group = c.benchmark_group("z measurement");
    for size in [32usize, 64, 128] {
        let base = scrambled(size, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        group.bench_with_input(BenchmarkId::from_parameter(size), &base, |b, base| {
            b.iter_batched_ref(
                || base.clone(),
                |t| t.measure_z(size / 2, &mut rng).unwrap(),
                criterion::BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn graph_conversion(c: &mut Criterion) {
    let mut group = c.benchmark_group("tableau to graph");
    for size in [32usize, 64, 128] {
        let t = scrambled(size, 6);
        group.bench_with_input(BenchmarkId::from_parameter(size), &t, |b, t| b.iter(|| tableau_to_graph(black_box(t))));
    }
    group.finish();
}

fn realization(c: &mut Criterion) {
    let mut group = c.benchmark_group("realization T=4L");
    group.sample_size(20);
    for (size, p) in [(32usize, 0.1), (32, 0.3), (64, 0.1), (64, 0.3)] {
        let cfg = CircuitConfig::new(size, p);
        group.bench_with_input(BenchmarkId::new(format!("p={p}"), size), &cfg, |b, cfg| {
            b.iter(|| {
                let out = run_realization(cfg).unwrap();
                correlation_profile(&out.graph, cfg.size).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, clifford_sampling, brick_layer, z_measurement, graph_conversion, realization);
criterion_main!(benches);
