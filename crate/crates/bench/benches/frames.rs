use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use zpframe::oracle::{assemble_frame_operator, hermitian_extremal_eigenvalues};
use zpframe::{
    canonical_dual_and_reconstruct, coefficients_direct, coefficients_fourier, dft,
    enumerate_index_set, frame_report, IndexSpec, Tolerance, WaveletSystem,
};
use zpframe_bench::Fixture;

const CASES: [(u64, u64); 4] = [(13, 4), (31, 10), (61, 20), (101, 100)];

fn bench_dft(c: &mut Criterion) {
    let mut group = c.benchmark_group("dft");
    for (p, m) in CASES {
        let f = Fixture::new(p, m, 1);
        group.bench_with_input(BenchmarkId::from_parameter(p), &f, |b, f| {
            b.iter(|| dft(black_box(&f.signal), &f.ctx).unwrap())
        });
    }
    group.finish();
}

fn bench_coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("coefficients");
    for (p, m) in CASES {
        let f = Fixture::new(p, m, 2);
        let set = enumerate_index_set(&f.ctx, IndexSpec::Subgroup(&f.subgroup)).unwrap();
        let sys = WaveletSystem::new(&f.ctx, f.window.clone(), set).unwrap();
        let id = format!("p{p}_M{m}");
        group.bench_function(BenchmarkId::new("fourier", &id), |b| {
            b.iter(|| coefficients_fourier(black_box(&f.signal), &sys).unwrap())
        });
        group.bench_function(BenchmarkId::new("direct", &id), |b| {
            b.iter(|| coefficients_direct(black_box(&f.signal), &sys).unwrap())
        });
    }
    group.finish();
}

fn bench_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("frame_report");
    for (p, m) in CASES {
        let f = Fixture::new(p, m, 3);
        group.bench_function(format!("p{p}_M{m}"), |b| {
            b.iter(|| frame_report(black_box(&f.window), &f.subgroup, &f.ctx, Tolerance::Auto).unwrap())
        });
    }
    group.finish();
}

fn bench_reconstruction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reconstruct");
    for (p, m) in CASES {
        let f = Fixture::new(p, m, 4);
        let set = enumerate_index_set(&f.ctx, IndexSpec::Subgroup(&f.subgroup)).unwrap();
        let sys = WaveletSystem::new(&f.ctx, f.window.clone(), set).unwrap();
        group.bench_function(format!("p{p}_M{m}"), |b| {
            b.iter(|| canonical_dual_and_reconstruct(black_box(&f.signal), &sys, Tolerance::Auto).unwrap())
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_eigen");
    group.sample_size(10);
    for (p, m) in [(7, 3), (13, 4), (31, 10)] {
        let f = Fixture::new(p, m, 5);
        let set = enumerate_index_set(&f.ctx, IndexSpec::Subgroup(&f.subgroup)).unwrap();
        let sys = WaveletSystem::new(&f.ctx, f.window.clone(), set).unwrap();
        group.bench_function(format!("p{p}_M{m}"), |b| {
            b.iter(|| hermitian_extremal_eigenvalues(&assemble_frame_operator(&sys).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_dft,
    bench_coefficients,
    bench_report,
    bench_reconstruction,
    bench_oracle
);
criterion_main!(benches);
