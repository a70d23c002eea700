use serde::Serialize;

use super::greedy::GreedyRun;
use super::{Algorithm, SolverConfig};
use crate::graph::{EdgeId, Graph};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportConfig {
    pub k: u32,
    pub b: usize,
    pub algorithm: Algorithm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    /// Deleted edge in original vertex labels.
    pub edge: [u64; 2],
    #[serde(skip)]
    pub edge_id: EdgeId,
    pub followers: usize,
    pub candidates_total: usize,
    pub candidates_evaluated: usize,
    pub time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub followers: usize,
    /// Chosen edges that were live when deleted.
    pub deleted: usize,
    pub initial_truss_edges: usize,
    pub final_truss_edges: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub truss_ms: f64,
    pub solve_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizationReport {
    pub config: ReportConfig,
    pub iterations: Vec<IterationRecord>,
    pub totals: Totals,
    pub warnings: Vec<String>,
    pub timing: Timing,
}

impl MinimizationReport {
    pub(super) fn new(cfg: &SolverConfig, initial_truss_edges: usize) -> Self {
        MinimizationReport {
            config: ReportConfig { k: cfg.k, b: cfg.b, algorithm: cfg.algorithm },
            iterations: Vec::new(),
            totals: Totals {
                followers: 0,
                deleted: 0,
                initial_truss_edges,
                final_truss_edges: initial_truss_edges,
            },
            warnings: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub(super) fn record(&mut self, g: &Graph, run: &GreedyRun) {
        for s in &run.iterations {
            self.iterations.push(IterationRecord {
                edge: g.edge_labels(s.edge),
                edge_id: s.edge,
                followers: s.followers,
                candidates_total: s.candidates_total,
                candidates_evaluated: s.candidates_evaluated,
                time_ms: s.elapsed.as_secs_f64() * 1e3,
            });
        }
        self.totals.followers = run.iterations.iter().map(|s| s.followers).sum();
        self.totals.deleted = run.iterations.len();
        self.totals.final_truss_edges = run.final_truss.edge_count();
    }

    pub fn candidates_evaluated(&self) -> usize {
        self.iterations.iter().map(|r| r.candidates_evaluated).sum()
    }

    /// Removed edges split exactly into deletions and followers.
    pub fn is_balanced(&self) -> bool {
        self.totals.followers + self.totals.deleted
            == self.totals.initial_truss_edges - self.totals.final_truss_edges
    }
}
