use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use loopmod::arith::CycScalar;
use loopmod_bench::dense_matrix;

fn scalars(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclotomic");
    for n in [4u64, 12, 60] {
        let a = &CycScalar::zeta_pow(n, 1) + &CycScalar::from_int(3, n);
        let b = &CycScalar::zeta_pow(n, 5) - &CycScalar::from_int(2, n);
        group.bench_with_input(BenchmarkId::new("mul", n), &n, |bch, _| bch.iter(|| black_box(&a * &b)));
        group.bench_with_input(BenchmarkId::new("inv", n), &n, |bch, _| bch.iter(|| black_box(a.inv().unwrap())));
    }
    group.finish();
}

fn matrices(c: &mut Criterion) {
    let mut group = c.benchmark_group("matrix");
    for (dim, order) in [(8usize, 1u64), (8, 4), (16, 4), (12, 8)] {
        let m = dense_matrix(dim, order);
        let id = format!("{dim}x{dim}/N={order}");
        group.bench_function(BenchmarkId::new("rank", &id), |b| b.iter(|| black_box(m.rank())));
        group.bench_function(BenchmarkId::new("mul", &id), |b| b.iter(|| black_box(m.mul(&m))));
    }
    group.finish();
}

criterion_group!(benches, scalars, matrices);
criterion_main!(benches);
