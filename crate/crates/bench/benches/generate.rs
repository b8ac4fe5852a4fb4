use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kgcage::generator::generate_vec;
use kgcage::GenerateOptions;
use kgcage_bench::FAST_ROWS;

fn rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    group.sample_size(10);
    for (n, k, g) in FAST_ROWS {
        let opts = GenerateOptions::default();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}-{k}-{g}")), &opts, |b, opts| {
            b.iter(|| generate_vec(n, k, g, opts).unwrap().0.len())
        });
    }
    group.finish();
}

fn dedup(c: &mut Criterion) {
    let mut group = c.benchmark_group("dedup");
    group.sample_size(10);
    for on in [true, false] {
        let opts = GenerateOptions {
            dedup: on,
            check_lower_bound: false,
            ..GenerateOptions::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(on), &opts, |b, opts| {
            b.iter(|| generate_vec(16, 3, 5, opts).unwrap().0.len())
        });
    }
    group.finish();
}

criterion_group!(benches, rows, dedup);
criterion_main!(benches);
