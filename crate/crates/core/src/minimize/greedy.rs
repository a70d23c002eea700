use std::cmp::Reverse;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::IndexMode;
use crate::cascade::CascadeScratch;
use crate::error::Result;
use crate::graph::{EdgeId, EdgeSet, Graph};
use crate::groups::{find_support_groups, GroupIndex};
use crate::truss::{TrussSubgraph, TrussnessMap};

/// One greedy iteration's decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub edge: EdgeId,
    pub followers: usize,
    pub candidates_total: usize,
    pub candidates_evaluated: usize,
    pub elapsed: Duration,
}

/// A rule for picking the next edge to delete from the current k-truss.
pub trait Strategy {
    /// Picks a live edge of `t`, which is non-empty.
    fn select(&mut self, g: &Graph, t: &TrussSubgraph) -> Selection;

    /// Called once the chosen edge, `removed[0]`, and its followers,
    /// `removed[1..]`, are gone from the truss passed to the next `select`.
    fn commit(&mut self, _g: &Graph, _removed: &[EdgeId]) {}
}

#[derive(Debug, Clone)]
pub struct GreedyRun {
    pub iterations: Vec<Selection>,
    pub final_truss: TrussSubgraph,
}

/// Deletes up to `b` edges chosen by `strategy`, cascading after each one.
/// Stops early once the truss is empty.
pub fn run_greedy<S: Strategy + ?Sized>(g: &Graph, mut t: TrussSubgraph, b: usize, strategy: &mut S) -> GreedyRun {
    let mut iterations = Vec::with_capacity(b);
    while iterations.len() < b && !t.is_empty() {
        let started = Instant::now();
        let mut pick = strategy.select(g, &t);
        let removed = t.delete(g, &[pick.edge]);
        debug_assert_eq!(removed.first(), Some(&pick.edge));
        debug_assert_eq!(removed.len() - 1, pick.followers);
        strategy.commit(g, &removed);
        pick.elapsed = started.elapsed();
        iterations.push(pick);
    }
    GreedyRun { iterations, final_truss: t }
}

fn smallest_live(t: &TrussSubgraph) -> EdgeId {
    t.edges().next().expect("select is only called on a non-empty truss")
}

/// Running argmax with the shared tie-break: more followers wins, then the
/// smaller edge id.
#[derive(Debug, Clone, Copy)]
struct Best {
    edge: Option<EdgeId>,
    followers: usize,
}

impl Best {
    fn new() -> Self {
        Best { edge: None, followers: 0 }
    }

    fn offer(&mut self, e: EdgeId, followers: usize) {
        let better = match self.edge {
            None => true,
            Some(cur) => followers > self.followers || (followers == self.followers && e < cur),
        };
        if better {
            self.edge = Some(e);
            self.followers = followers;
        }
    }

    /// A zero-follower best means no deletion cascades at all; every greedy
    /// variant then deletes the smallest live edge.
    fn resolve(self, t: &TrussSubgraph) -> (EdgeId, usize) {
        match self.edge {
            Some(e) if self.followers > 0 => (e, self.followers),
            _ => (smallest_live(t), 0),
        }
    }
}

/// Evaluates every live edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct Baseline {
    pub parallel: bool,
}

impl Strategy for Baseline {
    fn select(&mut self, g: &Graph, t: &TrussSubgraph) -> Selection {
        let edges: Vec<EdgeId> = t.edges().collect();
        let mut best = Best::new();
        if self.parallel {
            let top = edges
                .par_iter()
                .map_init(|| CascadeScratch::new(t), |s, &e| (s.follower_count(g, t, e), Reverse(e)))
                .max();
            if let Some((n, Reverse(e))) = top {
                best.offer(e, n);
            }
        } else {
            let mut scratch = CascadeScratch::new(t);
            for &e in &edges {
                best.offer(e, scratch.follower_count(g, t, e));
            }
        }
        let (edge, followers) = best.resolve(t);
        Selection {
            edge,
            followers,
            candidates_total: edges.len(),
            candidates_evaluated: edges.len(),
            elapsed: Duration::ZERO,
        }
    }
}

struct Scan {
    best: Best,
    evaluated: usize,
    /// Evaluated edges whose follower count equals the best, with their
    /// followers.
    tied: Vec<(EdgeId, Vec<EdgeId>)>,
    seen: EdgeSet,
}

/// Evaluates `candidates` in order, skipping any that an earlier evaluation
/// already removed as a follower: such an edge's followers are a subset of
/// the evaluator's. In parallel mode the skip is applied between batches,
/// so a few extra edges may be evaluated; the result is the same.
fn scan_with_follower_pruning(
    g: &Graph,
    t: &TrussSubgraph,
    candidates: &[EdgeId],
    parallel: bool,
    mut admit: impl FnMut(usize, EdgeId, &Best) -> Admit,
) -> Scan {
    let mut best = Best::new();
    let mut tied: Vec<(EdgeId, Vec<EdgeId>)> = Vec::new();
    let mut pruned = EdgeSet::empty(g.edge_count());
    let mut seen = EdgeSet::empty(g.edge_count());
    let mut evaluated = 0;
    let mut scratch = CascadeScratch::new(t);
    let batch = if parallel { rayon::current_num_threads().max(1) } else { 1 };
    let mut pos = 0;
    'scan: while pos < candidates.len() {
        let mut wave = Vec::with_capacity(batch);
        while wave.len() < batch && pos < candidates.len() {
            let c = candidates[pos];
            pos += 1;
            if pruned.contains(c) {
                continue;
            }
            match admit(pos - 1, c, &best) {
                Admit::Evaluate => wave.push(c),
                Admit::Stop => {
                    if wave.is_empty() {
                        break 'scan;
                    }
                    pos = candidates.len();
                }
            }
        }
        let results: Vec<(EdgeId, Vec<EdgeId>)> = if wave.len() > 1 {
            wave.par_iter()
                .map_init(|| CascadeScratch::new(t), |s, &c| (c, s.run(g, t, &[c])[1..].to_vec()))
                .collect()
        } else {
            wave.iter().map(|&c| (c, scratch.run(g, t, &[c])[1..].to_vec())).collect()
        };
        for (c, followers) in results {
            evaluated += 1;
            seen.insert(c);
            if followers.len() > best.followers {
                tied.clear();
            }
            best.offer(c, followers.len());
            for &f in &followers {
                pruned.insert(f);
            }
            if followers.len() == best.followers {
                tied.push((c, followers));
            }
        }
    }
    Scan { best, evaluated, tied, seen }
}

/// Pruning keeps a maximiser of every follower count but not necessarily
/// the one with the smallest id. A pruned edge `y` removed by a maximiser
/// `z` removes a subset of what `z` removes, so it ties exactly when its
/// own count reaches the maximum. A failed check rules out everything `y`
/// removes as well. Only edges in `maybe` that were not evaluated are
/// checked. Returns the settled best and the extra evaluations.
fn settle_ties(g: &Graph, t: &TrussSubgraph, scan: &Scan, maybe: &EdgeSet) -> (Best, usize) {
    let mut best = scan.best;
    let (Some(edge), target) = (best.edge, best.followers) else {
        return (best, 0);
    };
    if target == 0 {
        return (best, 0);
    }
    let mut lower: Vec<EdgeId> = scan
        .tied
        .iter()
        .flat_map(|(_, followers)| followers.iter().copied())
        .filter(|&y| y < edge && maybe.contains(y) && !scan.seen.contains(y))
        .collect();
    lower.sort_unstable();
    lower.dedup();
    let mut scratch = CascadeScratch::new(t);
    let mut ruled_out = EdgeSet::empty(g.edge_count());
    let mut extra = 0;
    for y in lower {
        if ruled_out.contains(y) {
            continue;
        }
        extra += 1;
        let removed = scratch.run(g, t, &[y]);
        if removed.len() - 1 == target {
            best.edge = Some(y);
            break;
        }
        for &x in removed {
            ruled_out.insert(x);
        }
    }
    (best, extra)
}

/// Candidates plus the over-support edges pruned as certain followers: the
/// only edges that can tie with an evaluated maximiser unseen.
fn tie_pool(g: &Graph, found: &crate::groups::GroupDiscovery) -> EdgeSet {
    let pruned = found.groups.iter().flat_map(|grp| grp.pruned_followers.iter().copied());
    EdgeSet::from_ids(g.edge_count(), found.candidates.iter().copied().chain(pruned))
}

enum Admit {
    Evaluate,
    Stop,
}

/// Evaluates only the support-group candidates, in ascending id order.
#[derive(Debug, Clone, Copy, Default)]
pub struct GpEdge {
    pub parallel: bool,
}

impl Strategy for GpEdge {
    fn select(&mut self, g: &Graph, t: &TrussSubgraph) -> Selection {
        let found = find_support_groups(g, t);
        let candidates = &found.candidates;
        let scan = scan_with_follower_pruning(g, t, candidates, self.parallel, |_, _, _| Admit::Evaluate);
        let (best, extra) = settle_ties(g, t, &scan, &tie_pool(g, &found));
        let (edge, followers) = best.resolve(t);
        Selection {
            edge,
            followers,
            candidates_total: candidates.len(),
            candidates_evaluated: scan.evaluated + extra,
            elapsed: Duration::ZERO,
        }
    }
}

/// GP-Edge candidates scanned in descending order of their truss-group
/// upper bound, stopping once no remaining bound can beat the best found.
#[derive(Debug, Clone)]
pub struct UpEdge {
    k: u32,
    tau: TrussnessMap,
    index: GroupIndex,
    mode: IndexMode,
    parallel: bool,
    /// Level-k groups adjacent to each edge, kept until a refresh reports
    /// the edge.
    adjacent: Vec<Option<Vec<u32>>>,
}

impl UpEdge {
    pub fn new(g: &Graph, t: &TrussSubgraph, mode: IndexMode) -> Result<Self> {
        // Level-k groups only need to tell trussness k from anything above.
        let tau = TrussnessMap::capped(g, t, t.k() + 1);
        let index = GroupIndex::build(g, &tau, t.k(), &[])?;
        Ok(UpEdge {
            k: t.k(),
            tau,
            index,
            mode,
            parallel: false,
            adjacent: vec![None; g.edge_count()],
        })
    }

    /// Evaluates candidates in parallel waves. May evaluate more candidates
    /// than the sequential scan but picks the same edge.
    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    /// Trussness over the current k-truss, capped at `k + 1`.
    pub fn trussness(&self) -> &TrussnessMap {
        &self.tau
    }

    pub fn index(&self) -> &GroupIndex {
        &self.index
    }

    /// Same as [`GroupIndex::upper_bound`] on the current state, served from
    /// the adjacency cache where possible.
    pub fn upper_bound(&mut self, g: &Graph, e: EdgeId) -> Result<usize> {
        if !self.tau.alive().contains(e) || self.tau.get(e) < self.k {
            return Err(crate::Error::NotInTruss(e));
        }
        Ok(self.cached_bound(g, e))
    }

    fn cached_bound(&mut self, g: &Graph, e: EdgeId) -> usize {
        let slot = &mut self.adjacent[e as usize];
        if slot.is_none() {
            *slot = Some(self.index.adjacent_groups(g, &self.tau, e));
        }
        slot.iter().flatten().map(|&gid| self.index.group_size(self.k, gid)).sum()
    }
}

impl Strategy for UpEdge {
    fn select(&mut self, g: &Graph, t: &TrussSubgraph) -> Selection {
        let found = find_support_groups(g, t);
        let candidates = &found.candidates;
        let mut ranked: Vec<(usize, EdgeId)> = candidates.iter().map(|&c| (self.cached_bound(g, c), c)).collect();
        ranked.sort_unstable_by_key(|&(ub, c)| (Reverse(ub), c));
        let order: Vec<EdgeId> = ranked.iter().map(|&(_, c)| c).collect();

        // An equal bound is still evaluated: a tied candidate can carry a
        // smaller-id tie that only `settle_ties` finds. A zero bound means
        // zero followers.
        let scan = scan_with_follower_pruning(g, t, &order, self.parallel, |pos, c, best| {
            let ub = ranked[pos].0;
            debug_assert_eq!(ranked[pos].1, c);
            if ub < best.followers || ub == 0 {
                Admit::Stop
            } else {
                Admit::Evaluate
            }
        });
        let (best, extra) = settle_ties(g, t, &scan, &tie_pool(g, &found));
        let (edge, followers) = best.resolve(t);
        Selection {
            edge,
            followers,
            candidates_total: candidates.len(),
            candidates_evaluated: scan.evaluated + extra,
            elapsed: Duration::ZERO,
        }
    }

    fn commit(&mut self, g: &Graph, removed: &[EdgeId]) {
        let delta = self
            .tau
            .delete_edge_with_cascade(g, removed[0], &removed[1..], self.k)
            .expect("chosen edge is live");
        match self.mode {
            IndexMode::Incremental => {
                for e in self.index.refresh(g, &self.tau, &delta) {
                    self.adjacent[e as usize] = None;
                }
            }
            IndexMode::FullRebuild => {
                self.index = GroupIndex::build(g, &self.tau, self.k, &[]).expect("k is valid");
                self.adjacent.iter_mut().for_each(|a| *a = None);
            }
        }
        // Followers have left the k-truss for good.
        self.tau.drop_below(self.k, &delta.lowered);
    }
}

/// Deletes the lowest-support edge that shares a triangle with the globally
/// lowest-support edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct SupportHeuristic;

impl Strategy for SupportHeuristic {
    fn select(&mut self, g: &Graph, t: &TrussSubgraph) -> Selection {
        let weakest = t
            .edges()
            .min_by_key(|&e| (t.support(e), e))
            .expect("select is only called on a non-empty truss");
        let mut partners = Vec::new();
        g.for_each_triangle_in(weakest, t.alive(), |_, a, b| partners.extend([a, b]));
        // Inside a k-truss with k >= 3 every edge lies in a triangle.
        let edge = partners
            .iter()
            .copied()
            .min_by_key(|&e| (t.support(e), e))
            .expect("k-truss edges have support of at least one");
        partners.sort_unstable();
        partners.dedup();
        let followers = CascadeScratch::new(t).follower_count(g, t, edge);
        Selection {
            edge,
            followers,
            candidates_total: partners.len(),
            candidates_evaluated: 1,
            elapsed: Duration::ZERO,
        }
    }
}

pub fn solve_baseline(g: &Graph, t: &TrussSubgraph, b: usize) -> GreedyRun {
    run_greedy(g, t.clone(), b, &mut Baseline::default())
}

pub fn solve_gp_edge(g: &Graph, t: &TrussSubgraph, b: usize) -> GreedyRun {
    run_greedy(g, t.clone(), b, &mut GpEdge::default())
}

pub fn solve_up_edge(g: &Graph, t: &TrussSubgraph, b: usize) -> Result<GreedyRun> {
    let mut up = UpEdge::new(g, t, IndexMode::Incremental)?;
    Ok(run_greedy(g, t.clone(), b, &mut up))
}

pub fn solve_support(g: &Graph, t: &TrussSubgraph, b: usize) -> GreedyRun {
    run_greedy(g, t.clone(), b, &mut SupportHeuristic)
}
