//! Benchmarks comparing the rayon data-parallel path against the
//! sequential fallback. Both produce bit-identical results; only wall-clock
//! time differs, so each workload is measured under both execution modes.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bfdesign::{
    find_sample_size, mc_probability, operating_characteristics, runtime, AnalysisPrior,
    DesignConfig, DesignPrior, Hypothesis, McEvent, Metric, SampleSizeQuery, TestSpec,
};

fn one_sided_flat(p0: f64, k: f64) -> DesignConfig {
    DesignConfig::new(
        TestSpec::one_sided(p0).unwrap(),
        AnalysisPrior::flat(),
        DesignPrior::truncated_beta(1.0, 1.0, 0.0, p0).unwrap(),
        DesignPrior::truncated_beta(1.0, 1.0, p0, 1.0).unwrap(),
        k,
    )
    .unwrap()
}

fn point_null_flat(p0: f64, k: f64) -> DesignConfig {
    DesignConfig::new(
        TestSpec::point_null(p0).unwrap(),
        AnalysisPrior::flat(),
        DesignPrior::point(p0).unwrap(),
        DesignPrior::truncated_beta(1.0, 1.0, 0.0, 1.0).unwrap(),
        k,
    )
    .unwrap()
}

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn bench_operating_characteristics(c: &mut Criterion) {
    let cfg = point_null_flat(0.5, 0.1);
    let mut group = c.benchmark_group("operating_characteristics_n2000");
    group.sample_size(20);
    for (name, par) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            runtime::set_parallel(par);
            b.iter(|| operating_characteristics(&cfg, 2000).unwrap());
        });
    }
    group.finish();
    runtime::set_parallel(true);
}

fn bench_sample_size_search(c: &mut Criterion) {
    let cfg = one_sided_flat(0.2, 0.1);
    let query = SampleSizeQuery::new(Metric::Power, 0.9).unwrap();
    let mut group = c.benchmark_group("find_sample_size_phase_ii");
    group.sample_size(10);
    for (name, par) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            runtime::set_parallel(par);
            b.iter(|| find_sample_size(&cfg, &query).unwrap());
        });
    }
    group.finish();
    runtime::set_parallel(true);
}

fn bench_monte_carlo(c: &mut Criterion) {
    let cfg = one_sided_flat(0.5, 0.1);
    let mut group = c.benchmark_group("mc_probability_100k");
    group.sample_size(10);
    for (name, par) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            runtime::set_parallel(par);
            b.iter(|| {
                mc_probability(
                    &cfg,
                    150,
                    Hypothesis::H1,
                    McEvent::Rejection,
                    100_000,
                    42,
                    8,
                )
                .unwrap()
            });
        });
    }
    group.finish();
    runtime::set_parallel(true);
}

criterion_group!(
    benches,
    bench_operating_characteristics,
    bench_sample_size_search,
    bench_monte_carlo
);
criterion_main!(benches);
