use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use dcsim_core::eraser::joint_distribution;
use dcsim_core::runs::{
    eraser_outcomes, expected_envelope, group_histograms, screen_edges, simulate_runs, visibility,
    DEFAULT_HISTOGRAM_BINS,
};
use dcsim_core::{EraserConfig, EraserExperiment, Experiment};
use std::hint::black_box;

fn sampling(c: &mut Criterion) {
    let cfg = EraserConfig::default();
    let exp = EraserExperiment::Combined;
    let joint = joint_distribution(&cfg, exp).unwrap();
    let dist = eraser_outcomes(&joint);
    let runs = 100_000;

    let mut group = c.benchmark_group("runs");
    group.sample_size(10).throughput(Throughput::Elements(runs));
    group.bench_function("simulate_eraser3", |b| {
        b.iter(|| simulate_runs(Experiment::Eraser(exp), black_box(&dist), runs, 42).unwrap())
    });

    let events = simulate_runs(Experiment::Eraser(exp), &dist, runs, 42).unwrap();
    let labels: Vec<String> = exp.detectors().iter().map(|d| d.to_string()).collect();
    let edges = screen_edges(&cfg, DEFAULT_HISTOGRAM_BINS);
    let envelope = expected_envelope(&joint, &edges).unwrap();
    group.bench_function("histograms_and_visibility", |b| {
        b.iter(|| {
            let hists = group_histograms(black_box(&events), &labels, &edges).unwrap();
            hists
                .iter()
                .map(|h| visibility(h, &envelope).unwrap().value)
                .sum::<f64>()
        })
    });
    group.finish();
}

criterion_group!(benches, sampling);
criterion_main!(benches);
