//! Exact arithmetic: rationals, cyclotomic fields, dense linear algebra.

pub mod cyclo;
pub mod matrix;
pub mod rational;

pub use cyclo::{cyclotomic_polynomial, root_of_unity, CycScalar};
pub use matrix::{Echelon, Matrix, SolveOutcome, Vector};
pub use rational::Rational;
