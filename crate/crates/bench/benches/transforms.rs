use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fracsense::filters::alpha_of_chirp;
use fracsense::timefreq::{frft, overlap_integral, wigner};
use fracsense::FreqAxis;
use fracsense_bench::matched_pair;

fn bench_frft(c: &mut Criterion) {
    let (_, g, _) = matched_pair(-0.125, 1.2);
    let alpha = alpha_of_chirp(-0.125);
    let u: Vec<f64> = (0..301).map(|i| 0.01 * i as f64).collect();
    c.bench_function("frft/301_points", |b| b.iter(|| frft(black_box(&g), alpha, &u).unwrap()));
}

fn bench_wigner(c: &mut Criterion) {
    let (grid, g, h) = matched_pair(-0.125, 1.2);
    let axis = FreqAxis::full_band(grid.dt(), 2 * grid.len()).unwrap();
    let mut group = c.benchmark_group("wigner");
    group.sample_size(10);
    group.bench_function("full_band", |b| b.iter(|| wigner(black_box(&g), &axis).unwrap()));
    let wg = wigner(&g, &axis).unwrap();
    let wh = wigner(&h, &axis).unwrap();
    group.bench_function("overlap", |b| b.iter(|| overlap_integral(black_box(&wg), &wh).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_frft, bench_wigner);
criterion_main!(benches);
