//! Index-construction benchmarks: the sequential rank-order builder against
//! the distance-round builder across worker counts, modes, and schedulers.
//!
//! Run with `--no-default-features` to measure the in-thread fallback of the
//! round-based builder under the same bench ids.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use espc::label::parallel::build_parallel;
use espc::label::seq::build_sequential;
use espc::order::degree_order;
use espc::{BuildConfig, Graph, PropagationMode, Scheduler};

fn bench_builders(c: &mut Criterion) {
    let g = Graph::generate_preferential(5_000, 5, 7);
    let order = degree_order(&g);

    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| build_sequential(&g, None, &order).unwrap())
    });
    for mode in [PropagationMode::Pull, PropagationMode::Push] {
        for workers in [1usize, 2, 4] {
            let cfg = BuildConfig {
                mode,
                workers,
                ..BuildConfig::default()
            };
            let id = BenchmarkId::new(
                match mode {
                    PropagationMode::Pull => "pspc-pull",
                    PropagationMode::Push => "pspc-push",
                },
                workers,
            );
            group.bench_with_input(id, &cfg, |b, cfg| {
                b.iter(|| build_parallel(&g, None, &order, cfg).unwrap())
            });
        }
    }
    let dyn_cfg = BuildConfig {
        workers: 4,
        scheduler: Scheduler::DynamicCost,
        ..BuildConfig::default()
    };
    group.bench_function("pspc-pull-dynamic/4", |b| {
        b.iter(|| build_parallel(&g, None, &order, &dyn_cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_builders);
criterion_main!(benches);
