//! Rayon sweep versus the sequential fallback on the two hot loops:
//! the XY entropy curve (one SVD per block size) and the XXZ sector sweep
//! (one Lanczos solve per magnetization sector).

use blockent_core::exec::ExecMode;
use blockent_core::xxz::{sector_grounds, XxzParams};
use blockent_core::xy::{xy_entropy_curve, KernelChoice, XyParams};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn xy_curve(c: &mut Criterion) {
    let params = XyParams::new(0.0, 0.0).unwrap();
    let ls: Vec<usize> = (1..=48).collect();
    let mut group = c.benchmark_group("xy_entropy_curve_L48");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            xy_entropy_curve(
                black_box(&params),
                black_box(&ls),
                KernelChoice::Auto,
                1e-10,
                ExecMode::Parallel,
            )
            .unwrap()
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            xy_entropy_curve(
                black_box(&params),
                black_box(&ls),
                KernelChoice::Auto,
                1e-10,
                ExecMode::Sequential,
            )
            .unwrap()
        })
    });
    group.finish();
}

fn xxz_sectors(c: &mut Criterion) {
    let params = XxzParams::new(1.0, 0.0, 12).unwrap();
    let mut group = c.benchmark_group("xxz_sector_sweep_N12");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| sector_grounds(black_box(&params), ExecMode::Parallel).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| sector_grounds(black_box(&params), ExecMode::Sequential).unwrap())
    });
    group.finish();
}

criterion_group!(benches, xy_curve, xxz_sectors);
criterion_main!(benches);
