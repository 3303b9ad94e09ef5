use std::f64::consts::FRAC_PI_2;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fracsense::inference::{fisher_information, fit_multistart, FitOptions, ForwardModel};
use fracsense::{measure, NoiseModel, SignalSpec};
use fracsense_bench::{default_f_grid, AMPLITUDE, DURATION};

fn bench_forward(c: &mut Criterion) {
    let model = ForwardModel::new(-0.125, -0.125, DURATION, &default_f_grid(), &[0.0, FRAC_PI_2]).unwrap();
    let signal = SignalSpec::new(AMPLITUDE, 1.2, -0.125, DURATION).unwrap();
    let noise = NoiseModel::new(0.1493, 1).unwrap();
    let record = measure(&signal, model.filters(), &noise).unwrap();

    c.bench_function("forward/predict", |b| b.iter(|| model.predict(AMPLITUDE, black_box(1.2)).unwrap()));
    c.bench_function("forward/measure", |b| {
        b.iter(|| measure(black_box(&signal), model.filters(), &noise).unwrap())
    });
    c.bench_function("forward/fisher", |b| {
        b.iter(|| fisher_information(&model, (AMPLITUDE, black_box(1.2)), 0.1493).unwrap())
    });
    let mut group = c.benchmark_group("fit");
    group.sample_size(10);
    group.bench_function("multistart", |b| {
        b.iter(|| fit_multistart(black_box(&record), &model, FitOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_forward);
criterion_main!(benches);
