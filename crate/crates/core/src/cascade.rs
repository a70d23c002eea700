//! Cascading edge removal from a k-truss.
//!
//! Deleting edges from a k-truss destroys triangles, which can push other
//! edges below the `k - 2` support threshold; those leave too, and so on
//! until a fixpoint. The edges that leave because of the deletion (but are
//! not themselves deleted) are the followers of the deleted set.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeKey, EdgeSet, Graph};
use crate::truss::TrussSubgraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionOutcome {
    /// The requested edges that were live in the truss, ascending.
    pub deleted: Vec<EdgeId>,
    /// Edges removed by the cascade, excluding `deleted`, ascending.
    pub followers: Vec<EdgeId>,
    pub surviving: TrussSubgraph,
}

pub fn delete_and_cascade(g: &Graph, t: &TrussSubgraph, batch: &[EdgeId]) -> DeletionOutcome {
    let mut surviving = t.clone();
    let mut deleted: Vec<EdgeId> = batch.iter().copied().filter(|&e| t.contains(e)).collect();
    deleted.sort_unstable();
    deleted.dedup();
    let removed = surviving.delete(g, &deleted);
    let mut followers: Vec<EdgeId> = removed[deleted.len()..].to_vec();
    followers.sort_unstable();
    DeletionOutcome { deleted, followers, surviving }
}

/// Reusable workspace for evaluating many candidate deletions against one
/// truss snapshot without cloning it.
///
/// Each run mutates a private copy of the support counters and records what
/// it touched; the next run starts by rolling those entries back.
pub struct CascadeScratch {
    support: Vec<u32>,
    dead: EdgeSet,
    queued: EdgeSet,
    touched: Vec<EdgeId>,
    removed: Vec<EdgeId>,
    queue: Vec<EdgeId>,
}

impl CascadeScratch {
    pub fn new(t: &TrussSubgraph) -> Self {
        let m = t.alive().capacity();
        CascadeScratch {
            support: t.supports().to_vec(),
            dead: EdgeSet::empty(m),
            queued: EdgeSet::empty(m),
            touched: Vec::new(),
            removed: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn rollback(&mut self, t: &TrussSubgraph) {
        for &e in &self.touched {
            self.support[e as usize] = t.supports()[e as usize];
        }
        for &e in &self.removed {
            self.dead.remove(e);
            self.queued.remove(e);
        }
        self.touched.clear();
        self.removed.clear();
    }

    /// Simulates deleting `seeds` from `t` and returns every removed edge,
    /// seeds first (in the given order, skipping dead or repeated ones),
    /// followed by the cascade. `t` is never modified.
    pub fn run(&mut self, g: &Graph, t: &TrussSubgraph, seeds: &[EdgeId]) -> &[EdgeId] {
        self.rollback(t);
        let threshold = t.k() - 2;
        let alive = t.alive();
        for &e in seeds {
            if alive.contains(e) && !self.queued.contains(e) {
                self.queued.insert(e);
                self.queue.push(e);
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let e = self.queue[head];
            head += 1;
            self.dead.insert(e);
            self.removed.push(e);
            let (dead, queued, support, touched, queue) = (
                &self.dead,
                &mut self.queued,
                &mut self.support,
                &mut self.touched,
                &mut self.queue,
            );
            g.for_each_triangle_in(e, alive, |_, a, b| {
                if dead.contains(a) || dead.contains(b) {
                    return;
                }
                for x in [a, b] {
                    support[x as usize] -= 1;
                    touched.push(x);
                    if support[x as usize] < threshold && !queued.contains(x) {
                        queued.insert(x);
                        queue.push(x);
                    }
                }
            });
        }
        self.queue.clear();
        &self.removed
    }

    /// Number of followers of a single live edge.
    pub fn follower_count(&mut self, g: &Graph, t: &TrussSubgraph, e: EdgeId) -> usize {
        self.run(g, t, &[e]).len().saturating_sub(1)
    }
}

pub fn followers_of_edge(g: &Graph, t: &TrussSubgraph, e: EdgeKey) -> Result<usize> {
    let id = g.find_edge(e)?;
    if !t.contains(id) {
        return Err(Error::DeadEdge(e));
    }
    Ok(CascadeScratch::new(t).follower_count(g, t, id))
}

/// Exhaustive single-edge maximiser: the live edge with the most followers,
/// ties broken by smallest edge id.
pub fn oracle_best_single(g: &Graph, t: &TrussSubgraph) -> Result<(EdgeId, usize)> {
    let mut scratch = CascadeScratch::new(t);
    let mut best: Option<(EdgeId, usize)> = None;
    for e in t.edges() {
        let n = scratch.follower_count(g, t, e);
        if best.is_none_or(|(_, b)| n > b) {
            best = Some((e, n));
        }
    }
    best.ok_or(Error::EmptyTruss)
}
