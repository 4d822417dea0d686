use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use wronbeta_bench::synthetic_panel;
use wronbeta_core::beta::{estimate, rolling_estimate, rolling_multiwindow};
use wronbeta_core::{IndependenceThreshold, Model, WindowSpec};

fn rolling_vs_naive(c: &mut Criterion) {
    let panel = synthetic_panel(10_000, 2);
    let thr = IndependenceThreshold::default();
    let mut group = c.benchmark_group("betas_only_n2");
    group.sample_size(10);
    for m in [100usize, 500] {
        let w = WindowSpec::new(m).unwrap();
        group.bench_with_input(BenchmarkId::new("rolling", m), &w, |b, &w| {
            b.iter(|| rolling_estimate(black_box(&panel), w, Model::BetasOnly, thr).unwrap())
        });
        // naive recomputation on a 1000-point slice keeps the run short
        let grid = *panel.grid();
        group.bench_with_input(BenchmarkId::new("naive_1000pts", m), &w, |b, &w| {
            b.iter(|| {
                for j in m..m + 1000 {
                    black_box(estimate(&panel, w, grid.time(j), Model::BetasOnly, thr).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn multiwindow(c: &mut Criterion) {
    let panel = synthetic_panel(10_000, 2);
    let windows: Vec<_> = [100, 300, 500]
        .map(|m| WindowSpec::new(m).unwrap())
        .to_vec();
    c.bench_function("multiwindow_100_300_500", |b| {
        b.iter(|| {
            rolling_multiwindow(
                black_box(&panel),
                &windows,
                Model::WithAlpha,
                IndependenceThreshold::default(),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, rolling_vs_naive, multiwindow);
criterion_main!(benches);
