//! Eigenvalues of symmetric tridiagonal operators by Sturm-sequence bisection.
//!
//! The Sturm count at `t` is the number of zeros `≤ t` of the polynomial the
//! operator represents, so the solver doubles as the zero-counting function.

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::recurrence::TridiagonalOperator;

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMode {
    All,
    ExtremeOnly,
}

#[derive(Debug, Clone, Copy)]
pub struct SpectrumRequest<'a> {
    pub operator: &'a TridiagonalOperator,
    pub abs_tol: f64,
    pub mode: SpectrumMode,
}

impl<'a> SpectrumRequest<'a> {
    /// All eigenvalues at the default tolerance, `1e-13` times the Gershgorin radius.
    pub fn new(operator: &'a TridiagonalOperator) -> Self {
        let (lo, hi) = gershgorin(operator);
        let mut radius = 0.5 * (hi - lo);
        if !(radius > 0.0) {
            radius = lo.abs().max(hi.abs()).max(1.0);
        }
        Self { operator, abs_tol: 1e-13 * radius, mode: SpectrumMode::All }
    }

    pub fn with_tol(mut self, abs_tol: f64) -> Result<Self> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(domain(format!("abs_tol must be positive, got {abs_tol}")));
        }
        self.abs_tol = abs_tol;
        Ok(self)
    }

    pub fn extreme_only(mut self) -> Self {
        self.mode = SpectrumMode::ExtremeOnly;
        self
    }
}

/// Interval `[lo, hi]` containing every eigenvalue.
pub fn gershgorin(op: &TridiagonalOperator) -> (f64, f64) {
    let (d, e) = (op.diag(), op.offdiag());
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { e[i - 1] } else { 0.0 };
        let right = if i + 1 < n { e[i] } else { 0.0 };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    (lo, hi)
}

struct Sturm<'a> {
    diag: &'a [f64],
    off_sq: Vec<f64>,
    pivmin: f64,
}

impl<'a> Sturm<'a> {
    fn new(op: &'a TridiagonalOperator) -> Self {
        let off_sq: Vec<f64> = op.offdiag().iter().map(|e| e * e).collect();
        let max_sq = off_sq.iter().fold(1.0f64, |m, &v| m.max(v));
        Self { diag: op.diag(), off_sq, pivmin: f64::MIN_POSITIVE * max_sq }
    }

    /// Number of eigenvalues `≤ t` (negative pivots of `T − tI = LDLᵀ`).
    fn count(&self, t: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - t;
        for i in 0.. {
            if q.abs() < self.pivmin {
                q = -self.pivmin;
            }
            if q <= 0.0 {
                count += 1;
            }
            if i + 1 == self.diag.len() {
                break;
            }
            q = (self.diag[i + 1] - t) - self.off_sq[i] / q;
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection inside `[lo, hi]`.
    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
        let floor = tol / 1024.0;
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= floor || mid <= lo || mid >= hi {
                break;
            }
            if self.count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let width = hi - lo;
        if !(width <= tol) {
            return Err(Error::Convergence { index: k, width });
        }
        Ok(0.5 * (lo + hi))
    }
}

fn bracket(op: &TridiagonalOperator) -> (f64, f64) {
    let (lo, hi) = gershgorin(op);
    let pad = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) + f64::MIN_POSITIVE;
    (lo - pad, hi + pad)
}

/// Number of eigenvalues of `op` that are `≤ t`.
pub fn sturm_count(op: &TridiagonalOperator, t: f64) -> usize {
    Sturm::new(op).count(t)
}

/// All eigenvalues in increasing order (both extremes only for [`SpectrumMode::ExtremeOnly`]).
pub fn eigenvalues(req: &SpectrumRequest<'_>) -> Result<Vec<f64>> {
    if !(req.abs_tol > 0.0) {
        return Err(domain("abs_tol must be positive"));
    }
    let op = req.operator;
    let n = op.size();
    if n == 1 {
        return Ok(vec![op.diag()[0]]);
    }
    let sturm = Sturm::new(op);
    let (lo, hi) = bracket(op);
    let indices: Vec<usize> = match req.mode {
        SpectrumMode::All => (0..n).collect(),
        SpectrumMode::ExtremeOnly => vec![0, n - 1],
    };
    let values = indices.par_iter().map(|&k| sturm.bisect(k, lo, hi, req.abs_tol)).collect::<Result<Vec<f64>>>()?;
    if let Some(i) = values.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(Error::Convergence { index: indices[i + 1], width: values[i + 1] - values[i] });
    }
    Ok(values)
}

/// Smallest and largest eigenvalue.
pub fn extreme_eigenvalues(req: &SpectrumRequest<'_>) -> Result<(f64, f64)> {
    let values = eigenvalues(&SpectrumRequest { mode: SpectrumMode::ExtremeOnly, ..*req })?;
    Ok((values[0], values[values.len() - 1]))
}
