//! Extreme zeros: Moak–Saff–Varga limits for linear parameter growth,
//! second-order predictions for super-linear growth, and the Ismail–Li upper
//! bound on the largest Jacobi zero.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::limitlaw::{law_for_regime, Law};
use crate::params::{scaling_for, Problem, Regime, RegimeKind, ScalingMap};

/// `(r, s) = B² − A² ∓ sqrt((A² + B² − 1)² − 4A²B²)`, the limits of the
/// smallest and largest Jacobi zero when `α_n/(2n+α_n+β_n) → A` and
/// `β_n/(2n+α_n+β_n) → B`.
pub fn msv_limits(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
        return Err(domain(format!("msv limits need A, B >= 0, got ({a}, {b})")));
    }
    if a + b > 1.0 + 1e-12 {
        return Err(domain(format!("msv limits need A + B <= 1, got {}", a + b)));
    }
    // factored discriminant: (1 − (A−B)²)(1 − (A+B)²)
    let disc = ((1.0 - (a - b).powi(2)) * (1.0 - (a + b).powi(2))).max(0.0);
    let mid = (b - a) * (b + a);
    let root = disc.sqrt();
    Ok(((mid - root).clamp(-1.0, 1.0), (mid + root).clamp(-1.0, 1.0)))
}

/// Per-`k` upper bounds `s_n(k)` on the largest zero of `P_n^{(α,β)}` and the
/// two closed-form envelopes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsmailLiBound {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    /// `values[k-1] = s_n(k)` for `k = 1..n-1`.
    pub values: Vec<f64>,
    /// Envelope for `β ≥ α`; `None` where its formula is undefined (`α + β ≤ −1` or `α + β = 0`).
    pub envelope1: Option<f64>,
    /// Envelope for `β ≤ α`.
    pub envelope2: Option<f64>,
    pub bound: f64,
}

impl IsmailLiBound {
    /// Larger of the defined envelopes.
    pub fn envelope(&self) -> Option<f64> {
        match (self.envelope1, self.envelope2) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        }
    }
}

fn s_nk(k: usize, alpha: f64, beta: f64) -> f64 {
    let s = alpha + beta;
    let k = k as f64;
    let (first, product) = if k == 1.0 {
        // removable singularities at α + β = 0 and α + β = −1
        ((beta - alpha) / (4.0 + s), 4.0 * (1.0 + alpha) * (1.0 + beta) / (3.0 + s))
    } else {
        (
            (beta - alpha) * (beta + alpha) / ((2.0 * k - 2.0 + s) * (2.0 * k + 2.0 + s)),
            4.0 * k * (k + alpha) * (k + beta) * (k + s) / ((2.0 * k - 1.0 + s) * (2.0 * k + 1.0 + s)),
        )
    };
    first + 2.0 / (2.0 * k + s) * (first * first + product).sqrt()
}

/// Evaluates `s_n(k)` for `0 < k < n` and the envelopes.
pub fn ismail_li_bound(n: usize, alpha: f64, beta: f64) -> Result<IsmailLiBound> {
    if n < 2 {
        return Err(domain(format!("ismail-li bound needs n >= 2, got {n}")));
    }
    if !(alpha > -1.0 && beta > -1.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(domain(format!("ismail-li bound needs alpha, beta > -1, got ({alpha}, {beta})")));
    }
    let values: Vec<f64> = (1..n).into_par_iter().map(|k| s_nk(k, alpha, beta)).collect();
    let bound = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let s = alpha + beta;
    let nf = n as f64;
    let (envelope1, envelope2) = if s > -1.0 && s != 0.0 {
        let g = ((beta - alpha) / s).powi(2);
        let h = 4.0 * nf * (nf + alpha) * (nf + beta) * (nf + s) / ((s + 1.0) * (s + 3.0));
        let tail = 2.0 / (2.0 + s) * (g + h).sqrt();
        let e1 = (beta - alpha) / s + tail;
        let e2 = (beta - alpha) * (beta + alpha) / (s + 2.0 * nf).powi(2) + tail;
        (Some(e1).filter(|v| v.is_finite()), Some(e2).filter(|v| v.is_finite()))
    } else {
        (None, None)
    };
    Ok(IsmailLiBound { n, alpha, beta, values, envelope1, envelope2, bound })
}

/// Predicted innermost zeros of a symmetric Hermite problem: the largest
/// negative and the smallest positive zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerExtremes {
    pub predicted_neg: f64,
    pub predicted_pos: f64,
    pub limit_neg: f64,
    pub limit_pos: f64,
}

/// Finite-`n` extreme-zero predictions obtained by inverting the regime's
/// standardization at the limit law's support endpoints.
///
/// `limit_min`/`limit_max` are the limits of [`theorem_statistic`] applied to
/// the smallest/largest zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremePrediction {
    pub regime: Regime,
    pub n: usize,
    pub predicted_min: f64,
    pub predicted_max: f64,
    pub limit_min: f64,
    pub limit_max: f64,
    pub inner: Option<InnerExtremes>,
}

/// The standardized quantity whose limit the extreme-zero theorems state:
/// `(x² − γ_n)/sqrt(n γ_n)` for the quadratic Hermite map, the map itself otherwise.
pub fn theorem_statistic(map: &ScalingMap, x: f64) -> f64 {
    match *map {
        ScalingMap::HermiteQuadratic { center, spread } => (x * x - center) / spread,
        ScalingMap::Affine(m) => m.forward(x),
    }
}

pub fn predict_extremes(regime: &Regime, problem: &Problem, n: usize) -> Result<ExtremePrediction> {
    let map = scaling_for(regime, problem, n)?;
    let law = law_for_regime(&regime.kind);
    let (lo, hi) = law.support();

    let (predicted_min, predicted_max, limit_min, limit_max, inner) = match map {
        ScalingMap::Affine(m) => {
            let (x_lo, x_hi) = (m.inverse(lo), m.inverse(hi));
            let (pmin, pmax, lmin, lmax) = if x_lo <= x_hi { (x_lo, x_hi, lo, hi) } else { (x_hi, x_lo, hi, lo) };
            let inner = match regime.kind {
                RegimeKind::HermiteLinear { .. } => {
                    // arcs are [−σ, −ρ] ∪ [ρ, σ]; a single arc means ρ = 0
                    let rho = law.arcs().last().map_or(0.0, |a| a.lo.max(0.0));
                    Some(InnerExtremes {
                        predicted_neg: m.inverse(-rho),
                        predicted_pos: m.inverse(rho),
                        limit_neg: -rho,
                        limit_pos: rho,
                    })
                }
                _ => None,
            };
            (pmin, pmax, lmin, lmax, inner)
        }
        ScalingMap::HermiteQuadratic { center, spread } => {
            let reach = std::f64::consts::SQRT_2;
            let outer = (center + reach * spread).sqrt();
            let inner = (center - reach * spread).max(0.0).sqrt();
            let inner_limit = if inner > 0.0 { -reach } else { -center / spread };
            (
                -outer,
                outer,
                reach,
                reach,
                Some(InnerExtremes {
                    predicted_neg: -inner,
                    predicted_pos: inner,
                    limit_neg: inner_limit,
                    limit_pos: inner_limit,
                }),
            )
        }
    };
    Ok(ExtremePrediction { regime: *regime, n, predicted_min, predicted_max, limit_min, limit_max, inner })
}
