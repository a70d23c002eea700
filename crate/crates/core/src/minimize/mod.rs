//! k-truss minimization: choose `b` edges whose deletion removes the most
//! edges from the k-truss.
//!
//! Five solvers share one interface. `Exact` enumerates edge subsets;
//! `Support` is a cheap heuristic; `Baseline`, `GpEdge` and `UpEdge` are the
//! greedy algorithm with increasingly aggressive (but exact) pruning. All
//! greedy variants break ties towards the smallest edge id, so they choose
//! identical edges.

mod exact;
mod greedy;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use exact::{solve_exact, ExactSolution, DEFAULT_EXACT_CAP};
pub use greedy::{
    run_greedy, solve_baseline, solve_gp_edge, solve_support, solve_up_edge, Baseline, GpEdge, GreedyRun,
    Selection, Strategy, SupportHeuristic, UpEdge,
};
pub use report::{IterationRecord, MinimizationReport, ReportConfig, Timing, Totals};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::truss::k_truss;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Exact,
    Support,
    Baseline,
    GpEdge,
    UpEdge,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Exact, Algorithm::Support, Algorithm::Baseline, Algorithm::GpEdge, Algorithm::UpEdge];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Support => "support",
            Algorithm::Baseline => "baseline",
            Algorithm::GpEdge => "gp_edge",
            Algorithm::UpEdge => "up_edge",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "exact" => Ok(Algorithm::Exact),
            "support" => Ok(Algorithm::Support),
            "baseline" => Ok(Algorithm::Baseline),
            "gp_edge" | "gp" => Ok(Algorithm::GpEdge),
            "up_edge" | "up" => Ok(Algorithm::UpEdge),
            other => Err(Error::InvalidArgument(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// How UP-Edge keeps its truss-group index current between iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexMode {
    #[default]
    Incremental,
    FullRebuild,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub k: u32,
    pub b: usize,
    pub algorithm: Algorithm,
    /// Worker threads for candidate evaluation; 0 uses every core and 1 is
    /// the strictly sequential reference mode.
    pub threads: usize,
    pub exact_cap: u128,
    pub index_mode: IndexMode,
}

impl SolverConfig {
    pub fn new(k: u32, b: usize, algorithm: Algorithm) -> Self {
        SolverConfig {
            k,
            b,
            algorithm,
            threads: 1,
            exact_cap: DEFAULT_EXACT_CAP,
            index_mode: IndexMode::Incremental,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidArgument(format!("k must be at least 3, got {}", self.k)));
        }
        if self.b < 1 {
            return Err(Error::InvalidArgument("budget b must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn solve(g: &Graph, cfg: &SolverConfig) -> Result<MinimizationReport> {
    cfg.validate()?;
    if cfg.threads == 1 {
        return solve_in_pool(g, cfg, false);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    pool.install(|| solve_in_pool(g, cfg, true))
}

fn solve_in_pool(g: &Graph, cfg: &SolverConfig, parallel: bool) -> Result<MinimizationReport> {
    let started = Instant::now();
    let truss = k_truss(g, cfg.k)?;
    let truss_ms = started.elapsed().as_secs_f64() * 1e3;
    let initial = truss.edge_count();

    let mut report = MinimizationReport::new(cfg, initial);
    report.timing.truss_ms = truss_ms;
    if truss.is_empty() {
        report.warnings.push(format!("the {}-truss is empty; nothing to delete", cfg.k));
        report.timing.total_ms = started.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }

    let solve_started = Instant::now();
    let run = match cfg.algorithm {
        Algorithm::Exact => exact::exact_run(g, &truss, cfg.b, cfg.exact_cap)?,
        Algorithm::Support => run_greedy(g, truss, cfg.b, &mut SupportHeuristic),
        Algorithm::Baseline => run_greedy(g, truss, cfg.b, &mut Baseline { parallel }),
        Algorithm::GpEdge => run_greedy(g, truss, cfg.b, &mut GpEdge { parallel }),
        Algorithm::UpEdge => {
            let mut up = UpEdge::new(g, &truss, cfg.index_mode)?.parallel(parallel);
            run_greedy(g, truss, cfg.b, &mut up)
        }
    };
    report.timing.solve_ms = solve_started.elapsed().as_secs_f64() * 1e3;
    report.record(g, &run);
    if report.totals.deleted < cfg.b {
        report.warnings.push(match cfg.algorithm {
            Algorithm::Exact => format!(
                "an optimal set uses {} of {} budgeted deletions",
                report.totals.deleted, cfg.b
            ),
            _ => format!(
                "the {}-truss emptied after {} of {} deletions",
                cfg.k, report.totals.deleted, cfg.b
            ),
        });
    }
    report.timing.total_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Runs Baseline, GP-Edge and UP-Edge and reports whether they agree on
/// every chosen edge and follower count.
pub fn verify_equivalence(g: &Graph, k: u32, b: usize) -> Result<bool> {
    let truss = k_truss(g, k)?;
    if truss.is_empty() {
        return Ok(true);
    }
    let baseline = run_greedy(g, truss.clone(), b, &mut Baseline { parallel: false });
    let gp = run_greedy(g, truss.clone(), b, &mut GpEdge { parallel: false });
    let mut up = UpEdge::new(g, &truss, IndexMode::Incremental)?;
    let up = run_greedy(g, truss, b, &mut up);
    let trace = |r: &GreedyRun| -> Vec<(u32, usize)> { r.iterations.iter().map(|s| (s.edge, s.followers)).collect() };
    Ok(trace(&baseline) == trace(&gp) && trace(&gp) == trace(&up))
}
