use std::time::{Duration, Instant};

use itertools::Itertools;

use super::greedy::{GreedyRun, Selection};
use crate::cascade::CascadeScratch;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::truss::TrussSubgraph;

/// Default limit on the number of edge subsets the exact solver will try.
pub const DEFAULT_EXACT_CAP: u128 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    /// Ascending edge ids of the best deletion set.
    pub edges: Vec<EdgeId>,
    pub followers: usize,
    pub subsets: u128,
}

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Tries every set of at most `b` live edges, deleting each set jointly, and
/// returns the one with the most followers. Ties go to the lexicographically
/// smallest ascending id sequence, so `[3]` beats `[3, 8]`.
///
/// Sets smaller than `b` are included: a set containing an edge that the
/// rest of the set already cascades away is strictly worse than the set
/// without it, so padding never helps.
pub fn solve_exact(g: &Graph, t: &TrussSubgraph, b: usize, cap: u128) -> Result<ExactSolution> {
    let edges: Vec<EdgeId> = t.edges().collect();
    let m = edges.len() as u128;
    let top = b.min(edges.len());
    let subsets = (1..=top as u128).fold(0u128, |acc, r| acc.saturating_add(binomial(m, r)));
    if subsets > cap {
        return Err(Error::ExactCapExceeded { combinations: subsets, cap });
    }

    let mut scratch = CascadeScratch::new(t);
    let mut best: Option<(usize, Vec<EdgeId>)> = None;
    for size in 1..=top {
        for set in edges.iter().copied().combinations(size) {
            let followers = scratch.run(g, t, &set).len() - set.len();
            let better = match &best {
                None => true,
                Some((n, cur)) => followers > *n || (followers == *n && set < *cur),
            };
            if better {
                best = Some((followers, set));
            }
        }
    }
    let (followers, edges) = best.unwrap_or_default();
    Ok(ExactSolution { edges, followers, subsets })
}

/// Replays the exact solution one edge at a time so it can be reported in
/// the same shape as a greedy run.
pub(super) fn exact_run(g: &Graph, t: &TrussSubgraph, b: usize, cap: u128) -> Result<GreedyRun> {
    let started = Instant::now();
    let solution = solve_exact(g, t, b, cap)?;
    let search = started.elapsed();

    let mut truss = t.clone();
    let mut iterations = Vec::new();
    for (i, &e) in solution.edges.iter().enumerate() {
        if !truss.contains(e) {
            continue;
        }
        let removed = truss.delete(g, &[e]);
        let followers = removed[1..].iter().filter(|x| !solution.edges.contains(x)).count();
        let (total, evaluated) = if i == 0 {
            let n = usize::try_from(solution.subsets).unwrap_or(usize::MAX);
            (n, n)
        } else {
            (0, 0)
        };
        iterations.push(Selection {
            edge: e,
            followers,
            candidates_total: total,
            candidates_evaluated: evaluated,
            elapsed: if i == 0 { search } else { Duration::ZERO },
        });
    }
    Ok(GreedyRun { iterations, final_truss: truss })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(45, 2), 990);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }
}
