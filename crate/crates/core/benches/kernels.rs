use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use condensate::algebra::{group_algebra, matrix_algebra, s3_table};
use condensate::exactlin::{Matrix, SparseMatrix};
use condensate::hamiltonian::{build_projectors, Boundary, ChainSpec};

fn dense_pair(n: usize) -> (Matrix, Matrix) {
    let a = Matrix::from_fn(n, n, |i, j| {
        condensate::exactlin::Scalar::ratio((i * 7 + j * 3) as i64 % 11 - 5, 1 + (i + j) as i64 % 4)
    });
    let b = Matrix::from_fn(n, n, |i, j| {
        condensate::exactlin::Scalar::ratio((i * 5 + j) as i64 % 9 - 4, 1 + (i * j) as i64 % 3)
    });
    (a, b)
}

fn dense_matmul(c: &mut Criterion) {
    let mut g = c.benchmark_group("dense_matmul");
    for n in [32, 64] {
        let (a, b) = dense_pair(n);
        g.bench_with_input(BenchmarkId::new("rayon", n), &n, |bench, _| {
            bench.iter(|| black_box(a.matmul(&b)))
        });
        g.bench_with_input(BenchmarkId::new("sequential", n), &n, |bench, _| {
            bench.iter(|| black_box(a.matmul_sequential(&b)))
        });
    }
    g.finish();
}

fn chain_products(c: &mut Criterion) {
    let mut g = c.benchmark_group("sparse_projector_product");
    let cases = [
        ("S3 n=3", group_algebra("S3", &s3_table()).unwrap(), 3),
        ("M3 n=3", matrix_algebra(3).unwrap(), 3),
    ];
    for (name, a, n) in cases {
        let projs = build_projectors(&ChainSpec::new(a, n, Boundary::Periodic).unwrap()).unwrap();
        let (p, q): (&SparseMatrix, &SparseMatrix) = (&projs[0], &projs[1]);
        g.bench_function(BenchmarkId::new("rayon", name), |bench| {
            bench.iter(|| black_box(p.mul(q)))
        });
        g.bench_function(BenchmarkId::new("sequential", name), |bench| {
            bench.iter(|| black_box(p.mul_sequential(q)))
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = dense_matmul, chain_products
}
criterion_main!(benches);
