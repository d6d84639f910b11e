//! Serializable description of one `oz` run.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use oz_core::{Law, LimitLaw, ParamSchedule, Problem};

use crate::error::CliError;

/// Default CDF tolerance for `cdf` tables.
pub const DEFAULT_CDF_TOL: f64 = 1e-10;
/// Grid size used when none is given.
pub const DEFAULT_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Evenly spaced evaluation points `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Grid {
    /// The law's support padded by 5% on each side.
    pub fn around(law: &LimitLaw, points: usize) -> Self {
        let (lo, hi) = law.support();
        let pad = 0.05 * (hi - lo).max(f64::EPSILON);
        Grid { lo: lo - pad, hi: hi + pad, points }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo <= self.hi) {
            return Err(CliError::Usage(format!(
                "--lo/--hi must be finite with lo <= hi, got {} and {}",
                self.lo, self.hi
            )));
        }
        if self.points == 0 || (self.points == 1 && self.lo != self.hi) {
            return Err(CliError::Usage("--points must be at least 2 (or 1 with lo = hi)".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.points - 1) as f64;
        (0..self.points).map(|i| if i + 1 == self.points { self.hi } else { self.lo + step * i as f64 }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Task {
    Zeros {
        problem: Problem,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eig_tol: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dump_operator: Option<PathBuf>,
    },
    Density {
        law: LimitLaw,
        grid: Grid,
    },
    Cdf {
        law: LimitLaw,
        grid: Grid,
        cdf_tol: f64,
    },
    Compare {
        problem: Problem,
        n_list: Vec<usize>,
    },
    Extremes {
        problem: Problem,
        n_list: Vec<usize>,
    },
    Bound {
        n: usize,
        alpha: ParamSchedule,
        beta: ParamSchedule,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Zeros { .. } => "zeros",
            Task::Density { .. } => "density",
            Task::Cdf { .. } => "cdf",
            Task::Compare { .. } => "compare",
            Task::Extremes { .. } => "extremes",
            Task::Bound { .. } => "bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub task: Task,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Checks ranges that the type system does not.
    pub fn validate(&self) -> Result<(), CliError> {
        let n_list_ok = |list: &[usize]| {
            if list.is_empty() || list[0] == 0 || list.windows(2).any(|w| w[0] >= w[1]) {
                Err(CliError::Usage("--n-list must be positive and strictly increasing".into()))
            } else {
                Ok(())
            }
        };
        match &self.task {
            Task::Zeros { n, eig_tol, .. } => {
                if *n == 0 {
                    return Err(CliError::Usage("--n must be at least 1".into()));
                }
                if let Some(t) = eig_tol {
                    if !(*t > 0.0 && t.is_finite()) {
                        return Err(CliError::Usage(format!("--eig-tol must be positive, got {t}")));
                    }
                }
                Ok(())
            }
            Task::Density { grid, .. } => grid.validate(),
            Task::Cdf { grid, cdf_tol, .. } => {
                if !(*cdf_tol > 1e-14 && *cdf_tol < 1e-3) {
                    return Err(CliError::Usage(format!("--cdf-tol must lie in (1e-14, 1e-3), got {cdf_tol}")));
                }
                grid.validate()
            }
            Task::Compare { n_list, .. } | Task::Extremes { n_list, .. } => n_list_ok(n_list),
            Task::Bound { n, .. } => {
                if *n < 2 {
                    return Err(CliError::Usage("--n must be at least 2 for bound".into()));
                }
                Ok(())
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--config: {e}")))
    }
}
