use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;
use vedom::block::solve;
use vedom::graph::{enumerate_trees, random_block_graph, BlockGraphParams, TreeEnumConfig};
use vedom::lewis::audit;
use vedom::oracles::{gamma_ve_bruteforce, OracleConfig};
use vedom::par;

fn oracle_sweep(c: &mut Criterion) {
    let trees = enumerate_trees(12, true, &TreeEnumConfig::default()).unwrap();
    let cfg = OracleConfig::default();
    let gamma = |t: &vedom::Graph| gamma_ve_bruteforce(t, &cfg).unwrap().cardinality;
    let lewis = |t: &vedom::Graph| audit(t, &cfg).unwrap().mismatch;

    let mut group = c.benchmark_group("sweep");
    group.throughput(Throughput::Elements(trees.len() as u64));
    group.bench_function("gamma_ve/sequential", |b| {
        b.iter(|| par::map_sequential(black_box(&trees), gamma))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("gamma_ve/parallel", |b| {
        b.iter(|| par::map_parallel(black_box(&trees), gamma))
    });
    group.bench_function("lewis_audit/sequential", |b| {
        b.iter(|| par::map_sequential(black_box(&trees), lewis))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("lewis_audit/parallel", |b| {
        b.iter(|| par::map_parallel(black_box(&trees), lewis))
    });
    group.finish();
}

fn linear_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_block");
    group.sample_size(20);
    for n in [1_000usize, 10_000, 100_000] {
        let g = random_block_graph(n, 2024, &BlockGraphParams::default()).unwrap();
        group.throughput(Throughput::Elements((g.n() + g.m()) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| solve(black_box(g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracle_sweep, linear_scaling);
criterion_main!(benches);
