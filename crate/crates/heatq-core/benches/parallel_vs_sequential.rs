//! Compares the t-grid fan-out under the rayon pool against the sequential
//! path on the same workload, and times the hot kernels.
//!
//! Run with `cargo bench -p heatq-core`. HC_THREADS caps the pool.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use heatq_core::{
    bump_cutoff, log_grid, q_grid_with_mode, AlphaPair, ExecMode, QConfig,
};

fn grid_config() -> QConfig {
    let ap = AlphaPair::new(0.5, 0.5).unwrap();
    let chi = bump_cutoff(0.1, 0.3).unwrap();
    QConfig::HalfLine { ap, chi1: chi, chi2: chi, tol: 1e-8 }
}

fn bench_grid_modes(c: &mut Criterion) {
    let cfg = grid_config();
    let mut group = c.benchmark_group("q_grid_halfline");
    group.sample_size(10);
    for pts in [8usize, 16] {
        let ts = log_grid(1e-4, 1e-2, pts).unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", pts), &ts, |b, ts| {
            b.iter(|| q_grid_with_mode(black_box(&cfg), ts, ExecMode::Sequential).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", pts), &ts, |b, ts| {
            b.iter(|| q_grid_with_mode(black_box(&cfg), ts, ExecMode::Parallel).unwrap())
        });
    }
    group.finish();
}

fn bench_ball_point(c: &mut Criterion) {
    let ap = AlphaPair::new(1.8, 1.4).unwrap();
    c.bench_function("q_ball t=1e-2", |b| {
        b.iter(|| heatq_core::q_ball(black_box(&ap), 1.0, 1e-2, 1e-3).unwrap())
    });
}

fn bench_coefficient(c: &mut Criterion) {
    let ap = AlphaPair::new(0.7, 0.8).unwrap();
    c.bench_function("c_coef continuation", |b| {
        b.iter(|| heatq_core::c_coef(black_box(&ap)).unwrap())
    });
}

criterion_group!(benches, bench_grid_modes, bench_ball_point, bench_coefficient);
criterion_main!(benches);
