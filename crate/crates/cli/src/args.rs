//! Command-line flags and their translation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use oz_core::{law_for_regime, Family, LimitLaw, ParamSchedule, Problem, Schedule};

use crate::config::{Format, Grid, RunConfig, Task, DEFAULT_CDF_TOL, DEFAULT_POINTS};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "oz",
    version,
    about = "Zeros of degree-dependent classical orthogonal polynomials and their limit laws"
)]
pub struct Cli {
    /// Run the configuration stored in this JSON file instead of the subcommand flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the table here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    /// Print the resolved configuration as JSON and exit.
    #[arg(long, global = true)]
    pub print_config: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long)]
    pub family: Option<Family>,

    /// Schedule `c*n^p+d`, or a constant.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<ParamSchedule>,

    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<ParamSchedule>,

    /// Hermite parameter schedule.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<ParamSchedule>,
}

#[derive(Debug, Args)]
pub struct LawArgs {
    /// Law spec such as `semicircle:1.4142`, `general:a1,a2,b1,b2` or `hermite-quartic`.
    /// Defaults to the limit law of the given family and schedules.
    #[arg(long)]
    pub law: Option<LimitLaw>,

    #[command(flatten)]
    pub problem: ProblemArgs,

    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,

    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub points: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sorted raw and standardized zeros at one degree.
    Zeros {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        n: usize,
        /// Absolute eigenvalue tolerance in standardized coordinates.
        #[arg(long)]
        eig_tol: Option<f64>,
        /// Also write the tridiagonal operator to this CSV file.
        #[arg(long)]
        dump_operator: Option<PathBuf>,
    },
    /// Limit-law density on a grid.
    Density(LawArgs),
    /// Limit-law CDF on a grid.
    Cdf {
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, default_value_t = DEFAULT_CDF_TOL)]
        cdf_tol: f64,
    },
    /// KS distances and extreme-zero errors over several degrees.
    Compare {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
    },
    /// Extreme zeros against their predicted limits.
    Extremes {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
    },
    /// Ismail–Li upper bound on the largest Jacobi zero.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: ParamSchedule,
        #[arg(long, allow_hyphen_values = true)]
        beta: ParamSchedule,
    },
}

impl ProblemArgs {
    pub fn problem(&self) -> Result<Problem, CliError> {
        let family = self.family.ok_or_else(|| CliError::Usage("--family is required".into()))?;
        let need = |v: &Option<ParamSchedule>, flag: &str| -> Result<Schedule, CliError> {
            v.map(Schedule::from).ok_or_else(|| CliError::Usage(format!("--{flag} is required for family {family}")))
        };
        let unused = |v: &Option<ParamSchedule>, flag: &str| -> Result<(), CliError> {
            match v {
                Some(_) => Err(CliError::Usage(format!("--{flag} does not apply to family {family}"))),
                None => Ok(()),
            }
        };
        Ok(match family {
            Family::Jacobi => {
                unused(&self.gamma, "gamma")?;
                Problem::Jacobi { alpha: need(&self.alpha, "alpha")?, beta: need(&self.beta, "beta")? }
            }
            Family::Laguerre => {
                unused(&self.beta, "beta")?;
                unused(&self.gamma, "gamma")?;
                Problem::Laguerre { alpha: need(&self.alpha, "alpha")? }
            }
            Family::Hermite => {
                unused(&self.alpha, "alpha")?;
                unused(&self.beta, "beta")?;
                Problem::Hermite { gamma: need(&self.gamma, "gamma")? }
            }
        })
    }
}

impl LawArgs {
    fn resolve(&self) -> Result<(LimitLaw, Grid), CliError> {
        let law = match (&self.law, self.problem.family) {
            (Some(law), None) => *law,
            (Some(_), Some(_)) => return Err(CliError::Usage("give either --law or --family, not both".into())),
            (None, Some(_)) => {
                let regime = self.problem.problem()?.classify()?;
                LimitLaw::Named(law_for_regime(&regime.kind))
            }
            (None, None) => return Err(CliError::Usage("--law or --family is required".into())),
        };
        let default = Grid::around(&law, self.points);
        let grid = Grid { lo: self.lo.unwrap_or(default.lo), hi: self.hi.unwrap_or(default.hi), points: self.points };
        Ok((law, grid))
    }
}

impl Cli {
    /// The configuration this invocation describes.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let mut config = match (&self.config, self.command) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("--config {}: {e}", path.display())))?;
                RunConfig::from_json(&text)?
            }
            (Some(_), Some(_)) => return Err(CliError::Usage("--config cannot be combined with a subcommand".into())),
            (None, None) => return Err(CliError::Usage("a subcommand or --config is required".into())),
            (None, Some(cmd)) => RunConfig { task: task_from(cmd)?, format: Format::default(), output: None },
        };
        if let Some(f) = self.format {
            config.format = f;
        }
        if let Some(o) = self.output {
            config.output = Some(o);
        }
        config.validate()?;
        Ok(config)
    }
}

fn task_from(cmd: Command) -> Result<Task, CliError> {
    Ok(match cmd {
        Command::Zeros { problem, n, eig_tol, dump_operator } => {
            Task::Zeros { problem: problem.problem()?, n, eig_tol, dump_operator }
        }
        Command::Density(args) => {
            let (law, grid) = args.resolve()?;
            Task::Density { law, grid }
        }
        Command::Cdf { law, cdf_tol } => {
            let (law, grid) = law.resolve()?;
            Task::Cdf { law, grid, cdf_tol }
        }
        Command::Compare { problem, n_list } => Task::Compare { problem: problem.problem()?, n_list },
        Command::Extremes { problem, n_list } => Task::Extremes { problem: problem.problem()?, n_list },
        Command::Bound { n, alpha, beta } => Task::Bound { n, alpha, beta },
    })
}
