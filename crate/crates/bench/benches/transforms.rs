use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use toruskk_bench::{sample_matrices, sample_subtori};
use toruskk_core::verify::{run_suite, SuiteConfig};
use toruskk_core::{
    build_assembly, build_fm_k, hermite_normal_form, invert_map, smith_normal_form,
};

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    for dim in [3, 5, 8] {
        let inputs = sample_matrices(16, dim);
        group.bench_with_input(BenchmarkId::new("hnf", dim), &inputs, |b, inputs| {
            b.iter(|| {
                inputs
                    .iter()
                    .map(|m| hermite_normal_form(black_box(m)).rank)
                    .sum::<usize>()
            })
        });
        group.bench_with_input(BenchmarkId::new("snf", dim), &inputs, |b, inputs| {
            b.iter(|| {
                inputs
                    .iter()
                    .map(|m| smith_normal_form(black_box(m)).rank())
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

fn transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("transforms");
    for d in [3, 6, 9] {
        group.bench_with_input(BenchmarkId::new("build_fm_k", d), &d, |b, &d| {
            b.iter(|| build_fm_k(black_box(d)))
        });
        group.bench_with_input(BenchmarkId::new("build_assembly", d), &d, |b, &d| {
            b.iter(|| build_assembly(black_box(d)))
        });
    }
    let fm = build_fm_k(8);
    group.bench_function("invert_fm_k/8", |b| {
        b.iter(|| invert_map(black_box(&fm)).unwrap())
    });
    let subtori = sample_subtori(32, 5, 2);
    let fm5 = build_fm_k(5);
    group.bench_function("apply_fm_k/5", |b| {
        b.iter(|| {
            for t in &subtori {
                black_box(fm5.apply(&t.expand_k_theory()).unwrap());
            }
        })
    });
    group.bench_function("dual_subtorus/5", |b| {
        b.iter(|| subtori.iter().map(|t| t.dual().dim()).sum::<usize>())
    });
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for d in [2, 4] {
        group.bench_with_input(BenchmarkId::new("suite_20_trials", d), &d, |b, &d| {
            b.iter(|| run_suite(&SuiteConfig::new(d, 20, 7)))
        });
    }
    group.finish();
}

criterion_group!(benches, lattice, transforms, suite);
criterion_main!(benches);
