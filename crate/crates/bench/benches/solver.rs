//! Wall-clock benchmarks for the hot paths: circulant decomposition,
//! single-instance splitting, and certificate verification.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use hwp_core::circulant::{ham_decompose, Circulant};
use hwp_core::cmn::{solve_cmn, CmnRequest};
use hwp_core::{verify, SolveOutcome};

fn bench_circulant(c: &mut Criterion) {
    c.bench_function("circulant_pair_231", |b| {
        b.iter(|| {
            let g = Circulant::new(231, [32, 33]).unwrap();
            ham_decompose(&g).unwrap()
        })
    });
}

fn bench_solve(c: &mut Criterion) {
    c.bench_function("split_spread_19", |b| {
        b.iter(|| solve_cmn(&CmnRequest::new(3, 19, 19).unwrap()).unwrap())
    });
}

fn bench_verify(c: &mut Criterion) {
    let out = solve_cmn(&CmnRequest::new(3, 19, 19).unwrap()).unwrap();
    let cert = match out {
        SolveOutcome::Solved(cert) => cert,
        other => panic!("{other:?}"),
    };
    c.bench_function("verify_cmn_19", |b| {
        b.iter_batched(|| cert.clone(), |cert| verify(&cert), BatchSize::SmallInput)
    });
}

criterion_group!(benches, bench_circulant, bench_solve, bench_verify);
criterion_main!(benches);
