//! Fixtures shared by the benchmarks.

use oz_core::{compute_zeros, AffineMap, ParamSchedule, Problem, TridiagonalOperator, ZeroSample};

/// The super-linear balanced Jacobi problem `α_n = β_n = n²`.
pub fn balanced_problem() -> Problem {
    let s: ParamSchedule = "1*n^2+0".parse().expect("valid schedule");
    Problem::jacobi(s, s)
}

/// Legendre operator of degree `n` in raw coordinates.
pub fn legendre_operator(n: usize) -> TridiagonalOperator {
    oz_core::jacobi_operator(n, 0.0, 0.0, &AffineMap::identity()).expect("valid operator")
}

pub fn balanced_sample(n: usize) -> ZeroSample {
    compute_zeros(&balanced_problem(), n).expect("zeros")
}
