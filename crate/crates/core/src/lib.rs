//! Zeros of Jacobi, Laguerre and Hermite polynomials whose parameters grow
//! with the degree, and their limiting distributions.
//!
//! Zeros come from symmetric tridiagonal operators built in standardized
//! coordinates ([`recurrence`]) and solved by Sturm bisection ([`eig`]).
//! [`limitlaw`] holds the limit densities, [`extremes`] the extreme-zero
//! asymptotics and bounds, and [`empirics`] compares the two.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod eig;
pub mod empirics;
pub mod error;
pub mod extremes;
pub mod limitlaw;
pub mod params;
pub mod quad;
pub mod recurrence;

pub use eig::{eigenvalues, extreme_eigenvalues, sturm_count, SpectrumMode, SpectrumRequest};
pub use empirics::{
    compute_zeros, compute_zeros_with_tol, convergence_table, ks_distance, operator_for, zero_counting, CompareReport,
    CompareRow, ZeroSample,
};
pub use error::{Error, Result};
pub use extremes::{
    ismail_li_bound, msv_limits, predict_extremes, theorem_statistic, ExtremePrediction, IsmailLiBound,
};
pub use limitlaw::{general_density, law_for_regime, named_density, GeneralLaw, Law, LimitLaw, NamedLaw};
pub use params::{
    classify, eval_schedule, scaling_for, AffineMap, Family, ParamSchedule, Problem, Regime, RegimeKind, ScalingMap,
    Schedule,
};
pub use recurrence::{
    chain_to_tridiagonal, jacobi_chain, jacobi_operator, laguerre_tridiagonal, ChainProfile, TridiagonalOperator,
};
