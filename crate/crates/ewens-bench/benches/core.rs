//! Hot-path benchmarks: combinatorial table construction, the partition
//! sampler, the two score-equation solvers, and one experiment cell
//! end-to-end.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ewens::montecarlo::replication_stream;
use ewens::{
    sample_partition, solve_adjusted_mle, solve_mle, stirling1_log_table, ExperimentConfig,
};

fn bench_stirling_table(c: &mut Criterion) {
    c.bench_function("stirling1_log_table_512", |b| {
        b.iter(|| stirling1_log_table(black_box(512)).unwrap())
    });
}

fn bench_sampler(c: &mut Criterion) {
    c.bench_function("sample_partition_n1000_theta50", |b| {
        let mut rng = replication_stream(1, 0, 0);
        b.iter(|| sample_partition(black_box(1000), black_box(50.0), &mut rng).unwrap())
    });
}

fn bench_solvers(c: &mut Criterion) {
    c.bench_function("solve_mle_k500_n1000", |b| {
        b.iter(|| solve_mle(black_box(500), black_box(1000)).unwrap())
    });
    c.bench_function("solve_adjusted_mle_k500_n1000", |b| {
        b.iter(|| solve_adjusted_mle(black_box(500), black_box(1000)).unwrap())
    });
}

fn bench_experiment_cell(c: &mut Criterion) {
    let cfg = ExperimentConfig {
        pop_size: 1000,
        n_values: vec![30],
        theta_values: vec![5.0],
        reps: 50,
        seed: 7,
        ..ExperimentConfig::default()
    };
    c.bench_function("run_experiment_one_cell_50_reps", |b| {
        b.iter(|| ewens::run_experiment(black_box(&cfg)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_stirling_table, bench_sampler, bench_solvers, bench_experiment_cell
}
criterion_main!(benches);
