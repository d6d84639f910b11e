//! Computed zeros against limit laws: counting functions, Kolmogorov–Smirnov
//! distances and convergence tables over a list of degrees.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eig::{eigenvalues, SpectrumRequest};
use crate::error::{domain, Error, Result};
use crate::extremes::{predict_extremes, theorem_statistic};
use crate::limitlaw::{law_for_regime, Law, NamedLaw};
use crate::params::{scaling_for, AffineMap, Family, Problem, Regime, ScalingMap};
use crate::recurrence::{hermite_zeros_support, jacobi_operator, laguerre_tridiagonal, TridiagonalOperator};

/// CDF tolerance used for KS distances.
pub const KS_CDF_TOL: f64 = 1e-9;

/// Zeros of one polynomial, raw and standardized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSample {
    pub n: usize,
    pub family: Family,
    /// `(α_n, β_n)`, `(α_n, None)` or `(γ_n, None)`.
    pub params: (f64, Option<f64>),
    pub regime: Option<Regime>,
    pub map: ScalingMap,
    /// Strictly increasing.
    pub raw: Vec<f64>,
    /// Nondecreasing; `scaled[i] = map.forward(raw[i])`, or
    /// `map.forward(raw[n-1-i])` when the map reverses order.
    pub scaled: Vec<f64>,
}

/// Regime of `problem`, or `None` for tabulated schedules.
fn regime_of(problem: &Problem) -> Result<Option<Regime>> {
    match problem.classify() {
        Ok(r) => Ok(Some(r)),
        Err(Error::UnsupportedRegime(_)) if is_tabulated(problem) => Ok(None),
        Err(e) => Err(e),
    }
}

fn is_tabulated(problem: &Problem) -> bool {
    use crate::params::Schedule::Table;
    match problem {
        Problem::Jacobi { alpha, beta } => matches!(alpha, Table(_)) || matches!(beta, Table(_)),
        Problem::Laguerre { alpha } => matches!(alpha, Table(_)),
        Problem::Hermite { gamma } => matches!(gamma, Table(_)),
    }
}

fn map_for(regime: Option<&Regime>, problem: &Problem, n: usize) -> Result<ScalingMap> {
    match regime {
        Some(r) => scaling_for(r, problem, n),
        None => Ok(ScalingMap::identity()),
    }
}

/// The operator whose spectrum yields the zeros at degree `n`: Jacobi and
/// Laguerre operators in standardized coordinates; for Hermite, the Laguerre
/// operator of the squared positive zeros (`None` when the degree is 1).
pub fn operator_for(problem: &Problem, n: usize) -> Result<Option<TridiagonalOperator>> {
    let regime = regime_of(problem)?;
    Ok(build(problem, regime.as_ref(), n)?.op)
}

struct Plan {
    op: Option<TridiagonalOperator>,
    map: ScalingMap,
}

fn build(problem: &Problem, regime: Option<&Regime>, n: usize) -> Result<Plan> {
    if n == 0 {
        return Err(domain("degree must be at least 1"));
    }
    let map = map_for(regime, problem, n)?;
    let (p, q) = problem.values(n)?;
    let op = match (problem.family(), map) {
        (Family::Jacobi, ScalingMap::Affine(m)) => {
            let beta = q.expect("jacobi has two parameters");
            let (a, b) = if m.is_reflected() { (beta, p) } else { (p, beta) };
            Some(jacobi_operator(n, a, b, &m.unreflected())?)
        }
        (Family::Laguerre, ScalingMap::Affine(m)) => Some(laguerre_tridiagonal(n, p, &m)?),
        (Family::Hermite, _) => {
            let split = hermite_zeros_support(n, p)?;
            if split.half_degree == 0 {
                None
            } else {
                // squared zeros u, standardized as (u − shift)/scale
                let squared = match map {
                    ScalingMap::Affine(m) => AffineMap::new(m.scale() * m.scale(), 0.0)?,
                    ScalingMap::HermiteQuadratic { center, spread } => AffineMap::new(spread, center)?,
                };
                Some(laguerre_tridiagonal(split.half_degree, split.laguerre_alpha, &squared)?)
            }
        }
        (family, map) => {
            return Err(Error::UnsupportedRegime(format!("map {map} does not apply to {family}")));
        }
    };
    Ok(Plan { op, map })
}

/// Computes and standardizes all zeros at degree `n`.
pub fn compute_zeros(problem: &Problem, n: usize) -> Result<ZeroSample> {
    compute_zeros_with_tol(problem, n, None)
}

/// As [`compute_zeros`], with an absolute eigenvalue tolerance in the
/// operator's coordinates instead of the default.
pub fn compute_zeros_with_tol(problem: &Problem, n: usize, abs_tol: Option<f64>) -> Result<ZeroSample> {
    let regime = regime_of(problem)?;
    let plan = build(problem, regime.as_ref(), n)?;
    let params = problem.values(n)?;
    let spectrum = match &plan.op {
        Some(op) => {
            let req = SpectrumRequest::new(op);
            let req = match abs_tol {
                Some(t) => req.with_tol(t)?,
                None => req,
            };
            eigenvalues(&req)?
        }
        None => Vec::new(),
    };
    let (raw, scaled) = match (problem.family(), plan.map) {
        (Family::Hermite, map) => hermite_assemble(n, &spectrum, map),
        (_, ScalingMap::Affine(m)) => {
            // spectrum is in standardized coordinates of the unreflected map
            let mut raw: Vec<f64> = spectrum.iter().map(|&z| m.inverse(z)).collect();
            if m.is_reflected() {
                raw.reverse();
            }
            (raw, spectrum)
        }
        (_, ScalingMap::HermiteQuadratic { .. }) => unreachable!("quadratic map is hermite only"),
    };
    if let Some(i) = raw.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(Error::Convergence { index: i + 1, width: raw[i + 1] - raw[i] });
    }
    Ok(ZeroSample { n, family: problem.family(), params, regime, map: plan.map, raw, scaled })
}

/// Hermite zeros from the standardized squared positive zeros `v`.
fn hermite_assemble(n: usize, spectrum: &[f64], map: ScalingMap) -> (Vec<f64>, Vec<f64>) {
    let (pos_raw, pos_scaled): (Vec<f64>, Vec<f64>) = match map {
        ScalingMap::Affine(m) => spectrum
            .iter()
            .map(|&v| {
                let z = v.max(0.0).sqrt();
                (m.scale() * z, z)
            })
            .unzip(),
        ScalingMap::HermiteQuadratic { center, spread } => {
            spectrum.iter().map(|&v| ((center + spread * v).max(0.0).sqrt(), v.max(0.0).sqrt())).unzip()
        }
    };
    let mut raw: Vec<f64> = pos_raw.iter().rev().map(|x| -x).collect();
    let mut scaled: Vec<f64> = pos_scaled.iter().rev().map(|z| -z).collect();
    if n % 2 == 1 {
        raw.push(0.0);
        scaled.push(0.0);
    }
    raw.extend(&pos_raw);
    scaled.extend(&pos_scaled);
    (raw, scaled)
}

/// Number of zeros `≤ xi`, in scaled or raw coordinates.
pub fn zero_counting(sample: &ZeroSample, xi: f64, raw: bool) -> usize {
    let zeros = if raw { &sample.raw } else { &sample.scaled };
    zeros.partition_point(|&z| z <= xi)
}

/// `sup |F_n − F|` for the empirical CDF `F_n` of the sorted `values`,
/// checking both one-sided limits at every jump.
pub fn ks_distance<L: Law + Sync + ?Sized>(values: &[f64], law: &L) -> Result<f64> {
    if values.is_empty() {
        return Err(domain("ks distance needs at least one value"));
    }
    if values.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(domain("ks distance needs sorted finite values"));
    }
    let mass = law.total_mass()?;
    if mass < 1.0 - 1e-6 {
        return Err(Error::SubUnitMass { mass });
    }
    let n = values.len() as f64;
    // (value, zeros strictly below, zeros at or below)
    let mut jumps = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let j = i + values[i..].partition_point(|&v| v <= values[i]);
        jumps.push((values[i], i, j));
        i = j;
    }
    let atoms = law.atoms();
    let gaps = jumps
        .par_iter()
        .map(|&(v, below, upto)| {
            let right = law.cdf(v, KS_CDF_TOL)?;
            let atom: f64 = atoms.iter().filter(|(x, _)| *x == v).map(|(_, w)| w).sum();
            let left = (right - atom).max(0.0);
            Ok(((below as f64 / n) - left).abs().max(((upto as f64 / n) - right).abs()))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(gaps.into_iter().fold(0.0, f64::max).min(1.0))
}

/// One degree of a convergence table. Numeric fields are `NaN` when `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n: usize,
    pub ks: f64,
    pub min_zero: f64,
    pub max_zero: f64,
    /// Theorem statistic of the smallest and largest zero.
    pub scaled_min: f64,
    pub scaled_max: f64,
    /// Predicted raw extremes.
    pub pred_min: f64,
    pub pred_max: f64,
    /// `|scaled − limit|` for each extreme.
    pub err_min: f64,
    pub err_max: f64,
    pub error: Option<String>,
}

impl CompareRow {
    fn failed(n: usize, e: &Error) -> Self {
        let nan = f64::NAN;
        CompareRow {
            n,
            ks: nan,
            min_zero: nan,
            max_zero: nan,
            scaled_min: nan,
            scaled_max: nan,
            pred_min: nan,
            pred_max: nan,
            err_min: nan,
            err_max: nan,
            error: Some(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub problem: Problem,
    pub regime: Regime,
    pub law: NamedLaw,
    pub limit_min: f64,
    pub limit_max: f64,
    pub rows: Vec<CompareRow>,
}

fn compare_row(problem: &Problem, regime: &Regime, law: &NamedLaw, n: usize) -> Result<CompareRow> {
    let sample = compute_zeros(problem, n)?;
    let ks = ks_distance(&sample.scaled, law)?;
    let pred = predict_extremes(regime, problem, n)?;
    let (min_zero, max_zero) = (sample.raw[0], sample.raw[n - 1]);
    let scaled_min = theorem_statistic(&sample.map, min_zero);
    let scaled_max = theorem_statistic(&sample.map, max_zero);
    Ok(CompareRow {
        n,
        ks,
        min_zero,
        max_zero,
        scaled_min,
        scaled_max,
        pred_min: pred.predicted_min,
        pred_max: pred.predicted_max,
        err_min: (scaled_min - pred.limit_min).abs(),
        err_max: (scaled_max - pred.limit_max).abs(),
        error: None,
    })
}

/// KS distances and extreme-zero errors for each degree in `n_list`.
/// A failing degree is reported in its row; the others still run.
pub fn convergence_table(problem: &Problem, n_list: &[usize]) -> Result<CompareReport> {
    if n_list.is_empty() {
        return Err(domain("n list is empty"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] == 0 {
        return Err(domain("n list must be positive and strictly increasing"));
    }
    let regime = problem.classify()?;
    let law = law_for_regime(&regime.kind);
    let probe = predict_extremes(&regime, problem, n_list[0])?;
    let rows = n_list
        .par_iter()
        .map(|&n| compare_row(problem, &regime, &law, n).unwrap_or_else(|e| CompareRow::failed(n, &e)))
        .collect();
    Ok(CompareReport {
        problem: problem.clone(),
        regime,
        law,
        limit_min: probe.limit_min,
        limit_max: probe.limit_max,
        rows,
    })
}
