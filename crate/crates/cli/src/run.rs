//! Evaluating a configuration over its sample points.

use akv_core::almost_hermitian::evaluate_point;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{PointReport, Report};

/// Caps the worker count when set to a positive integer.
pub const THREADS_ENV: &str = "AKV_THREADS";

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|n| *n > 0)
}

/// Evaluates every point; `threads = Some(1)` runs serially.
pub fn run_with_threads(cfg: &RunConfig, threads: Option<usize>) -> Result<Report, CliError> {
    let points = cfg
        .instance
        .sample(cfg.points, cfg.seed)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let eval = |p: &[f64; 4]| PointReport::from(evaluate_point(&cfg.instance, *p, &cfg.groups, cfg.tol_scale));
    let records: Vec<PointReport> = match threads {
        Some(1) => points.iter().map(eval).collect(),
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.unwrap_or(0))
                .build()
                .map_err(|e| CliError::Config(e.to_string()))?;
            pool.install(|| points.par_iter().map(eval).collect())
        }
    };
    Ok(Report::new(cfg, records))
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    run_with_threads(cfg, thread_cap())
}
