//! Chain sequences of the Jacobi zero measure and the symmetric tridiagonal
//! operators whose eigenvalues are the (standardized) polynomial zeros.
//!
//! The Jacobi operator is assembled directly in standardized coordinates from
//! the continued-fraction coefficients of the zero measure's Stieltjes
//! transform. Shifting eigenvalues afterwards would cancel every significant
//! digit in regimes such as `α_n = n^4`, where raw zeros sit at `−1 + O(n^{-3})`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::params::{AffineMap, ScalingMap};

/// The `2n − 1` chain quantities `p_1, …, p_{2n−1}` of the uniform measure on
/// the zeros of `P_n^{(α,β)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainProfile {
    n: usize,
    values: Vec<f64>,
}

impl ChainProfile {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// `p_1, …, p_{2n−1}` in order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `p_j` with `p_j = 0` for `j ≤ 0` and for `j = 2n`.
    pub fn p(&self, j: isize) -> f64 {
        if j <= 0 {
            return 0.0;
        }
        self.values.get(j as usize - 1).copied().unwrap_or(0.0)
    }

    /// Chain sequence element `ζ_j = (1 − p_{j−1}) p_j`.
    pub fn zeta(&self, j: isize) -> f64 {
        (1.0 - self.p(j - 1)) * self.p(j)
    }
}

/// Chain sequence of `P_n^{(α,β)}`.
///
/// For `i = 1..n`, storage slot `2i` holds `(n−i)/(2(n−i)+1+α+β)` and slot
/// `2i−1` holds `(β+n−i+1)/(2(n−i+1)+α+β)`. Slot `2n` (which is zero) is not
/// stored, so `p_{2n−1}` is the odd entry for `i = n`.
pub fn jacobi_chain(n: usize, alpha: f64, beta: f64) -> Result<ChainProfile> {
    if n == 0 {
        return Err(domain("degree must be at least 1"));
    }
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(domain(format!("jacobi parameters need alpha, beta > -1, got ({alpha}, {beta})")));
    }
    let s = alpha + beta;
    let mut values = Vec::with_capacity(2 * n - 1);
    for i in 1..=n {
        let m = (n - i) as f64;
        values.push((beta + m + 1.0) / (2.0 * (m + 1.0) + s));
        if i < n {
            values.push(m / (2.0 * m + 1.0 + s));
        }
    }
    Ok(ChainProfile { n, values })
}

/// Symmetric tridiagonal operator with positive off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalOperator {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    map: ScalingMap,
}

impl TridiagonalOperator {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>, map: ScalingMap) -> Result<Self> {
        if diag.is_empty() {
            return Err(domain("operator must have size >= 1"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(domain(format!("off-diagonal length {} does not match size {}", offdiag.len(), diag.len())));
        }
        if let Some(i) = diag.iter().position(|d| !d.is_finite()) {
            return Err(domain(format!("diagonal entry {i} is not finite")));
        }
        if let Some(i) = offdiag.iter().position(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(domain(format!("off-diagonal entry {i} = {} is not positive", offdiag[i])));
        }
        Ok(Self { diag, offdiag, map })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// The map under which the operator was built; eigenvalues live in its target coordinates.
    pub fn map(&self) -> &ScalingMap {
        &self.map
    }
}

fn plain_affine(map: &AffineMap) -> Result<()> {
    if map.is_reflected() {
        return Err(domain("reflection is applied by swapping parameters, not inside the operator"));
    }
    Ok(())
}

/// Jacobi operator in the coordinates `z = (x − (2ε − 1))/δ` of `map`.
pub fn chain_to_tridiagonal(profile: &ChainProfile, map: &AffineMap) -> Result<TridiagonalOperator> {
    plain_affine(map)?;
    let n = profile.degree() as isize;
    let two_over_scale = 2.0 / map.scale();
    let eps = map.center();
    let p = |j: isize| profile.p(j);

    let diag = (1..=n)
        .map(|j| {
            let a = (1.0 - p(2 * j - 3)) * p(2 * j - 2);
            let b = (1.0 - p(2 * j - 2)) * p(2 * j - 1);
            two_over_scale * ((a - eps) + b)
        })
        .collect();
    let offdiag = (1..n)
        .map(|j| {
            let prod = (1.0 - p(2 * j - 2)) * p(2 * j - 1) * (1.0 - p(2 * j - 1)) * p(2 * j);
            two_over_scale * prod.sqrt()
        })
        .collect();
    TridiagonalOperator::new(diag, offdiag, ScalingMap::Affine(*map))
}

/// Convenience: chain and operator for `P_n^{(α,β)}` in one call.
pub fn jacobi_operator(n: usize, alpha: f64, beta: f64, map: &AffineMap) -> Result<TridiagonalOperator> {
    chain_to_tridiagonal(&jacobi_chain(n, alpha, beta)?, map)
}

/// Operator of the monic Laguerre recurrence, `diag_k = 2k − 1 + α`,
/// `offdiag_k = sqrt(k (k + α))`, mapped through `z = (x − shift)/scale`.
pub fn laguerre_tridiagonal(n: usize, alpha: f64, map: &AffineMap) -> Result<TridiagonalOperator> {
    plain_affine(map)?;
    if n == 0 {
        return Err(domain("degree must be at least 1"));
    }
    if !(alpha > -1.0) {
        return Err(domain(format!("laguerre parameter needs alpha > -1, got {alpha}")));
    }
    let scale = map.scale();
    // (α − shift) first: it is exactly zero when the shift is α itself
    let offset = alpha - map.shift();
    let diag = (1..=n).map(|k| ((2 * k - 1) as f64 + offset) / scale).collect();
    let offdiag = (1..n)
        .map(|k| {
            let k = k as f64;
            k.sqrt() * (k + alpha).sqrt() / scale
        })
        .collect();
    TridiagonalOperator::new(diag, offdiag, ScalingMap::Affine(*map))
}

/// How the zeros of `H_n^{(γ)}` come out of a Laguerre problem: they are
/// `±sqrt(y)` over the zeros `y` of `L_m^{(laguerre_alpha)}`, plus `0` when
/// the degree is odd.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteSplit {
    pub half_degree: usize,
    pub laguerre_alpha: f64,
    pub include_zero: bool,
}

/// Even degree `2m` uses `L_m^{(γ−1/2)}`; odd degree `2m+1` uses `L_m^{(γ+1/2)}`.
pub fn hermite_zeros_support(n: usize, gamma: f64) -> Result<HermiteSplit> {
    if n == 0 {
        return Err(domain("degree must be at least 1"));
    }
    if !(gamma > -0.5) {
        return Err(domain(format!("hermite parameter needs gamma > -1/2, got {gamma}")));
    }
    let odd = n % 2 == 1;
    Ok(HermiteSplit {
        half_degree: n / 2,
        laguerre_alpha: if odd { gamma + 0.5 } else { gamma - 0.5 },
        include_zero: odd,
    })
}
