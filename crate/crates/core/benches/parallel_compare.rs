//! Parallel vs sequential comparison for the embarrassingly-parallel cores:
//! sign-vector enumeration for the width functional, hypercube
//! certification, and decode trials. "Sequential" pins a one-thread rayon
//! pool, "parallel" uses a pool sized to the machine; the work and the
//! results are identical either way.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mvdual_core::dualfn::{Binding, CertifyMode, DualInstance};
use mvdual_core::entropy::{width_exact, CPoint, PointSet, Rat};
use mvdual_core::ldc::LdcInstance;
use mvdual_core::matching::{build_family, derive_params};
use mvdual_core::SparsePoly;

fn pools() -> [(&'static str, rayon::ThreadPool); 2] {
    let seq = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let par = rayon::ThreadPoolBuilder::new().build().unwrap();
    [("sequential", seq), ("parallel", par)]
}

fn bench_width(c: &mut Criterion) {
    let mut group = c.benchmark_group("width_exact");
    for k in [8usize, 10] {
        let cube = PointSet::cube(
            CPoint::from_int(1),
            CPoint::real(Rat::new(-1, 7)),
            k,
        )
        .unwrap();
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, _| {
                b.iter(|| pool.install(|| black_box(width_exact(&cube).unwrap().value)));
            });
        }
    }
    group.finish();
}

fn instance_p7() -> DualInstance {
    let fam = build_family(&derive_params(7, 2, 7).unwrap()).unwrap();
    let poly = SparsePoly::new(2, vec![0, 1, 3], vec![1, 1, 1]).unwrap();
    DualInstance::new(Binding::bind(fam, poly).unwrap()).unwrap()
}

fn bench_certify(c: &mut Criterion) {
    let inst = instance_p7();
    let mut group = c.benchmark_group("certify_hypercube_p7");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(name, |b| {
            b.iter(|| {
                pool.install(|| {
                    black_box(inst.certify_hypercube(CertifyMode::Exhaustive).unwrap().checked.len())
                })
            });
        });
    }
    group.finish();
}

fn bench_decode_trials(c: &mut Criterion) {
    let fam = build_family(&derive_params(7, 2, 7).unwrap()).unwrap();
    let poly = SparsePoly::new(2, vec![0, 1, 3], vec![1, 1, 1]).unwrap();
    let inst = LdcInstance::new(Binding::bind(fam, poly).unwrap());
    let msg = inst.random_message(42);
    let mut group = c.benchmark_group("ldc_benchmark_2000_trials");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(name, |b| {
            b.iter(|| {
                pool.install(|| black_box(inst.benchmark(&msg, 0.05, 2000, 42).unwrap().successes))
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bench_width, bench_certify, bench_decode_trials);
criterion_main!(benches);
