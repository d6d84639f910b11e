//! Executes a [`RunConfig`].

use std::fs::File;
use std::io::{BufWriter, Write};

use rayon::prelude::*;

use oz_core::empirics::compute_zeros_with_tol;
use oz_core::{
    compute_zeros, convergence_table, ismail_li_bound, operator_for, predict_extremes, theorem_statistic, Family, Law,
    LimitLaw, Problem,
};

use crate::config::{Grid, RunConfig, Task};
use crate::error::CliError;
use crate::output::{Cell, Table};

fn header(config: &RunConfig) -> Table {
    let mut t = Table::default();
    t.meta("tool", concat!("oz ", env!("CARGO_PKG_VERSION")));
    t.meta("command", config.task.name());
    t
}

fn describe_problem(t: &mut Table, problem: &Problem) {
    t.meta("family", problem.family());
    match problem {
        Problem::Jacobi { alpha, beta } => {
            t.meta("alpha", alpha);
            t.meta("beta", beta);
        }
        Problem::Laguerre { alpha } => {
            t.meta("alpha", alpha);
        }
        Problem::Hermite { gamma } => {
            t.meta("gamma", gamma);
        }
    }
    match problem.classify() {
        Ok(r) => t.meta("regime", r),
        Err(_) => t.meta("regime", "unclassified"),
    };
}

/// Builds the output table of `config` (side files such as operator dumps are written here too).
pub fn render(config: &RunConfig) -> Result<Table, CliError> {
    let mut t = header(config);
    match &config.task {
        Task::Zeros { problem, n, eig_tol, dump_operator } => {
            describe_problem(&mut t, problem);
            let sample = compute_zeros_with_tol(problem, *n, *eig_tol)?;
            t.meta("n", n);
            t.meta("map", sample.map);
            t.meta("eig_tol", eig_tol.map_or("default".to_string(), |v| v.to_string()));
            if !sample.map.is_increasing() {
                t.meta("order", "map reverses order; raw and scaled are each sorted");
            }
            t.columns = vec!["i", "raw", "scaled"];
            for (i, (r, z)) in sample.raw.iter().zip(&sample.scaled).enumerate() {
                t.push(vec![Cell::Int(i + 1), Cell::Num(*r), Cell::Num(*z)]);
            }
            if let Some(path) = dump_operator {
                write_operator(config, problem, *n, path)?;
            }
        }
        Task::Density { law, grid } => {
            tabulate(&mut t, law, grid, "density", |x| law.density(x))?;
        }
        Task::Cdf { law, grid, cdf_tol } => {
            t.meta("cdf_tol", cdf_tol);
            tabulate(&mut t, law, grid, "cdf", |x| law.cdf(x, *cdf_tol))?;
        }
        Task::Compare { problem, n_list } => {
            describe_problem(&mut t, problem);
            let report = convergence_table(problem, n_list)?;
            t.meta("law", report.law);
            t.meta("limit_min", report.limit_min);
            t.meta("limit_max", report.limit_max);
            t.meta("cdf_tol", oz_core::empirics::KS_CDF_TOL);
            t.columns = vec![
                "n",
                "ks",
                "min_zero",
                "max_zero",
                "scaled_min",
                "scaled_max",
                "pred_min",
                "pred_max",
                "err_min",
                "err_max",
            ];
            for r in &report.rows {
                t.push(vec![
                    r.n.into(),
                    r.ks.into(),
                    r.min_zero.into(),
                    r.max_zero.into(),
                    r.scaled_min.into(),
                    r.scaled_max.into(),
                    r.pred_min.into(),
                    r.pred_max.into(),
                    r.err_min.into(),
                    r.err_max.into(),
                ]);
                if let Some(e) = &r.error {
                    t.notes.push(format!("n={}: {e}", r.n));
                }
            }
        }
        Task::Extremes { problem, n_list } => {
            describe_problem(&mut t, problem);
            let regime = problem.classify()?;
            t.columns = vec![
                "n",
                "min_zero",
                "max_zero",
                "scaled_min",
                "scaled_max",
                "limit_min",
                "limit_max",
                "err_min",
                "err_max",
                "ismail_li",
            ];
            let rows: Vec<Result<Vec<Cell>, oz_core::Error>> = n_list
                .par_iter()
                .map(|&n| {
                    let sample = compute_zeros(problem, n)?;
                    let pred = predict_extremes(&regime, problem, n)?;
                    let (lo, hi) = (sample.raw[0], sample.raw[n - 1]);
                    let (s_lo, s_hi) = (theorem_statistic(&sample.map, lo), theorem_statistic(&sample.map, hi));
                    let bound = match (problem.family(), sample.params) {
                        (Family::Jacobi, (a, Some(b))) if n >= 2 => Some(ismail_li_bound(n, a, b)?.bound),
                        _ => None,
                    };
                    Ok(vec![
                        n.into(),
                        lo.into(),
                        hi.into(),
                        s_lo.into(),
                        s_hi.into(),
                        pred.limit_min.into(),
                        pred.limit_max.into(),
                        (s_lo - pred.limit_min).abs().into(),
                        (s_hi - pred.limit_max).abs().into(),
                        bound.into(),
                    ])
                })
                .collect();
            for (n, row) in n_list.iter().zip(rows) {
                match row {
                    Ok(cells) => t.push(cells),
                    Err(e) => {
                        let mut cells = vec![Cell::Int(*n)];
                        cells.resize(t.columns.len(), Cell::Num(f64::NAN));
                        t.push(cells);
                        t.notes.push(format!("n={n}: {e}"));
                    }
                }
            }
        }
        Task::Bound { n, alpha, beta } => {
            let (a, b) = (alpha.value(*n), beta.value(*n));
            let il = ismail_li_bound(*n, a, b)?;
            t.meta("n", n);
            t.meta("alpha", a);
            t.meta("beta", b);
            t.meta("envelope1", il.envelope1.map_or("undefined".into(), |v| v.to_string()));
            t.meta("envelope2", il.envelope2.map_or("undefined".into(), |v| v.to_string()));
            t.columns = vec!["k", "s_nk"];
            for (k, v) in il.values.iter().enumerate() {
                t.push(vec![Cell::Int(k + 1), Cell::Num(*v)]);
            }
            t.push(vec![Cell::Text("max".into()), Cell::Num(il.bound)]);
        }
    }
    Ok(t)
}

fn tabulate<F>(t: &mut Table, law: &LimitLaw, grid: &Grid, column: &'static str, f: F) -> Result<(), CliError>
where
    F: Fn(f64) -> oz_core::Result<f64> + Sync,
{
    t.meta("law", law);
    t.meta("grid", format!("{}..{} ({} points)", grid.lo, grid.hi, grid.points));
    t.columns = vec!["x", column];
    let xs = grid.values();
    let ys = xs.par_iter().map(|&x| f(x)).collect::<oz_core::Result<Vec<f64>>>()?;
    for (x, y) in xs.into_iter().zip(ys) {
        t.push(vec![Cell::Num(x), Cell::Num(y)]);
    }
    Ok(())
}

fn write_operator(config: &RunConfig, problem: &Problem, n: usize, path: &std::path::Path) -> Result<(), CliError> {
    let mut t = header(config);
    describe_problem(&mut t, problem);
    t.meta("n", n);
    if problem.family() == Family::Hermite {
        t.meta("operator", "laguerre operator of the squared positive zeros");
    }
    t.columns = vec!["k", "diag", "offdiag"];
    if let Some(op) = operator_for(problem, n)? {
        t.meta("map", op.map());
        for (k, d) in op.diag().iter().enumerate() {
            t.push(vec![Cell::Int(k + 1), Cell::Num(*d), op.offdiag().get(k).copied().into()]);
        }
    }
    let file = BufWriter::new(File::create(path)?);
    t.write(config.format, file)
}

/// Runs `config`, writing to its output path or standard output.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let table = render(config)?;
    match &config.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(config.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            table.write(config.format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}
