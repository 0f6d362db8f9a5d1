use chanbound_bench::{channel_pair, hermitian, quick_config, two_qubit_state};
use chanbound_core::channel::erasure;
use chanbound_core::linalg::hermitian_eigen;
use chanbound_core::optimize::{maximize_channel_ic, ree_ppt_lower, seesaw_diamond_lower};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eigen");
    for n in [4, 16, 64] {
        let m = hermitian(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| hermitian_eigen(black_box(m)).unwrap())
        });
    }
    group.finish();
}

fn ic_max(c: &mut Criterion) {
    let cfg = quick_config();
    let mut group = c.benchmark_group("maximize_channel_ic");
    group.sample_size(10);
    for d in [2, 4, 8] {
        let phi = erasure(d, 0.3).unwrap();
        group.bench_with_input(BenchmarkId::new("erasure", d), &phi, |b, phi| {
            b.iter(|| maximize_channel_ic(black_box(phi), &cfg).unwrap())
        });
    }
    group.finish();
}

fn seesaw(c: &mut Criterion) {
    let cfg = quick_config();
    let mut group = c.benchmark_group("seesaw_diamond_lower");
    group.sample_size(10);
    for d in [2, 4] {
        let (phi, psi) = channel_pair(d);
        group.bench_function(BenchmarkId::from_parameter(d), |b| {
            b.iter(|| seesaw_diamond_lower(black_box(&phi), black_box(&psi), &cfg).unwrap())
        });
    }
    group.finish();
}

fn ree(c: &mut Criterion) {
    let rho = two_qubit_state();
    let cfg = quick_config();
    let mut group = c.benchmark_group("ree_ppt_lower");
    group.sample_size(10);
    group.bench_function("two_qubits", |b| b.iter(|| ree_ppt_lower(black_box(&rho), &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, eigen, ic_max, seesaw, ree);
criterion_main!(benches);
