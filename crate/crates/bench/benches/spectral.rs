use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use jordan_bench::{algebras, generic, repeated};
use jordan_core::kl::{kl_check, KlConfig};
use jordan_core::transfer::{lambda_k_subdiff_member, spectral_subdiff_member};
use jordan_core::{
    common_frame, eigen_dir_derivative, default_tau_group, diag_build, spectral_decompose, SubdiffKind,
    SymmetricFunctionId,
};

fn decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose");
    for (name, alg) in algebras() {
        let x = generic(&alg, 0);
        g.bench_with_input(BenchmarkId::from_parameter(name), &x, |b, x| {
            b.iter(|| spectral_decompose(black_box(x)).unwrap())
        });
    }
    g.finish();
}

fn dir_derivative(c: &mut Criterion) {
    let mut g = c.benchmark_group("dir_derivative");
    for (name, alg) in algebras() {
        let x = repeated(&alg, 1);
        let z = generic(&alg, 2);
        let tau = default_tau_group(x.norm());
        g.bench_function(name, |b| b.iter(|| eigen_dir_derivative(black_box(&x), &z, tau).unwrap()));
    }
    g.finish();
}

fn subdifferentials(c: &mut Criterion) {
    let mut g = c.benchmark_group("subdiff");
    for (name, alg) in algebras() {
        let x = repeated(&alg, 3);
        let dec = spectral_decompose(&x).unwrap();
        let d: Vec<f64> = (0..alg.rank()).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect();
        let s = diag_build(&d, dec.frame()).unwrap();
        g.bench_function(BenchmarkId::new("common_frame", name), |b| {
            b.iter(|| common_frame(black_box(&x), &s, 1e-8).unwrap())
        });
        g.bench_function(BenchmarkId::new("top_eigenvalue", name), |b| {
            b.iter(|| {
                spectral_subdiff_member(SymmetricFunctionId::KthLargest { k: 1 }, SubdiffKind::Clarke, &x, &s, 1e-8)
                    .unwrap()
            })
        });
        g.bench_function(BenchmarkId::new("lambda_k", name), |b| {
            b.iter(|| lambda_k_subdiff_member(1, SubdiffKind::Limiting, black_box(&x), &s, 1e-8).unwrap())
        });
    }
    g.finish();
}

fn kl(c: &mut Criterion) {
    let (_, alg) = &algebras()[1];
    let x = generic(alg, 4);
    let cfg = KlConfig::new(0.5, 2f64.sqrt(), 1.0, 0.1, 100, 1);
    c.bench_function("kl_check/sym8/100", |b| {
        b.iter(|| kl_check(SymmetricFunctionId::HalfSqNorm, black_box(&x), &cfg).unwrap())
    });
}

criterion_group!(benches, decompose, dir_derivative, subdifferentials, kl);
criterion_main!(benches);
