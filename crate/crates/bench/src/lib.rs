//! Shared inputs for the benchmarks.

use loopmod::arith::{CycScalar, Matrix, Rational};
use loopmod::corpus::{corpus, CorpusConfig, Instance};

/// Dense n×n matrix over ℚ(ζ_order) with small deterministic entries.
pub fn dense_matrix(n: usize, order: u64) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        let a = CycScalar::from_rational(Rational::new((i * 7 + j * 3) as i64 % 11 - 5, 1 + (i + j) as i64 % 3), order);
        &a * &CycScalar::zeta_pow(order, (i * j) as i64)
    })
}

/// The largest instances of a fixed corpus, by module dimension.
pub fn largest_instances(count: usize) -> Vec<Instance> {
    let mut c = corpus(7, 40, CorpusConfig::default()).expect("corpus");
    c.sort_by_key(|i| std::cmp::Reverse(i.module.dim()));
    c.truncate(count);
    c
}
