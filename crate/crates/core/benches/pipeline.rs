//! Compares the data-parallel pipeline on a one-thread pool, on the default
//! pool, and (when built with `--no-default-features`) the sequential build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use specht::fock::llt_canonical;
use specht::verify::{consistency_check, conjecture_check};

const CASES: [(u64, usize); 3] = [(3, 8), (5, 10), (5, 12)];

#[cfg(feature = "parallel")]
fn variants() -> Vec<(String, rayon::ThreadPool)> {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    let label = format!("pool-default-{}", all.current_num_threads());
    vec![("pool-single".to_string(), single), (label, all)]
}

#[cfg(feature = "parallel")]
fn run_variants(c: &mut Criterion, group: &str, work: impl Fn(u64, usize) + Sync) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for (label, pool) in variants() {
        for (p, n) in CASES {
            g.bench_with_input(BenchmarkId::new(&label, format!("p{p}-n{n}")), &(p, n), |b, &(p, n)| {
                b.iter(|| pool.install(|| work(p, n)))
            });
        }
    }
    g.finish();
}

#[cfg(not(feature = "parallel"))]
fn run_variants(c: &mut Criterion, group: &str, work: impl Fn(u64, usize) + Sync) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    for (p, n) in CASES {
        g.bench_with_input(BenchmarkId::new("sequential", format!("p{p}-n{n}")), &(p, n), |b, &(p, n)| {
            b.iter(|| work(p, n))
        });
    }
    g.finish();
}

fn canonical_basis(c: &mut Criterion) {
    run_variants(c, "llt_canonical", |p, n| {
        llt_canonical(n, p).unwrap();
    });
}

fn verification(c: &mut Criterion) {
    run_variants(c, "conjecture_check", |p, n| {
        assert!(conjecture_check(n, p).unwrap().overall);
    });
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("consistency_check");
    g.sample_size(10);
    let report = conjecture_check(7, 3).unwrap();
    g.bench_function("p3-n7", |b| b.iter(|| assert!(consistency_check(&report).unwrap().ok)));
    g.finish();
}

criterion_group!(benches, canonical_basis, verification, oracle);
criterion_main!(benches);
