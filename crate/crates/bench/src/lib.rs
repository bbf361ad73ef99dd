use criterion::Criterion;
use std::hint::black_box;

use qscissors_core::oracle::{postselect, DetectionOutcome, DEFAULT_CUTOFF};
use qscissors_core::{
    metrics_report, thermal_distribution, truncated_state_a, truncated_state_b, BeamSplitterParams, Placement,
    ScissorsConfig, SqueezerParams,
};

pub fn benchmarks(c: &mut Criterion) {
    let input = thermal_distribution(1.0, DEFAULT_CUTOFF).unwrap();
    let sq = SqueezerParams::new(0.5, 0.0).unwrap();
    let bs = BeamSplitterParams::balanced();

    let mut group = c.benchmark_group("closed_form");
    for n in [1usize, 3, 10] {
        let cfg_a = ScissorsConfig::new(sq, bs, n, Placement::BOutCOut);
        group.bench_function(format!("state_a/N={n}"), |b| {
            b.iter(|| truncated_state_a(black_box(&input), black_box(&cfg_a)).unwrap())
        });
        let cfg_b = ScissorsConfig::new(sq, bs, n, Placement::AOutCOut);
        group.bench_function(format!("state_b/N={n}"), |b| {
            b.iter(|| truncated_state_b(black_box(&input), black_box(&cfg_b), DEFAULT_CUTOFF + n).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for placement in [Placement::BOutCOut, Placement::AOutCOut] {
        let outcome = DetectionOutcome::new(placement, 2);
        group.bench_function(format!("postselect/{placement:?}"), |b| {
            b.iter(|| postselect(black_box(&input), &sq, &bs, &outcome, DEFAULT_CUTOFF).unwrap())
        });
    }
    group.finish();

    let st = truncated_state_b(&input, &ScissorsConfig::new(sq, bs, 2, Placement::AOutCOut), 40).unwrap();
    c.bench_function("metrics_report", |b| b.iter(|| metrics_report(black_box(&st.dist))));
}
