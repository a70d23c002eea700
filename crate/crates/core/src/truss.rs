//! k-core and k-truss extraction, truss decomposition, and trussness
//! maintenance under single-edge deletion.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeKey, EdgeSet, Graph, VertexId};

/// Trussness assigned to an edge that belongs to no 3-truss.
pub const NO_TRUSS: u32 = 2;

/// A k-truss given as a live edge set over its parent graph together with
/// the support of every live edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussSubgraph {
    k: u32,
    alive: EdgeSet,
    support: Vec<u32>,
}

impl TrussSubgraph {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alive(&self) -> &EdgeSet {
        &self.alive
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.alive.contains(e)
    }

    /// Support of a live edge; zero for edges outside the truss.
    #[inline]
    pub fn support(&self, e: EdgeId) -> u32 {
        if self.alive.contains(e) {
            self.support[e as usize]
        } else {
            0
        }
    }

    pub(crate) fn supports(&self) -> &[u32] {
        &self.support
    }

    pub fn edge_count(&self) -> usize {
        self.alive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.alive.iter()
    }

    /// Vertices incident to at least one live edge, ascending.
    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut seen = vec![false; g.vertex_count()];
        for e in self.alive.iter() {
            let key = g.edge(e);
            seen[key.u as usize] = true;
            seen[key.v as usize] = true;
        }
        (0..g.vertex_count() as VertexId).filter(|&v| seen[v as usize]).collect()
    }

    /// Removes `deleted` and then every edge whose support falls below
    /// `k - 2`, until fixpoint. Returns all removed edges in removal order,
    /// starting with the live members of `deleted`.
    pub fn delete(&mut self, g: &Graph, deleted: &[EdgeId]) -> Vec<EdgeId> {
        let threshold = self.k - 2;
        let mut removed = Vec::new();
        let mut queue = VecDeque::new();
        // An edge leaves `alive` when it is dequeued; `pending` marks edges
        // already queued so that each is queued once.
        let mut pending = EdgeSet::empty(g.edge_count());
        for &e in deleted {
            if self.alive.contains(e) && !pending.contains(e) {
                pending.insert(e);
                queue.push_back(e);
            }
        }
        while let Some(e) = queue.pop_front() {
            self.alive.remove(e);
            removed.push(e);
            let (alive, support) = (&self.alive, &mut self.support);
            g.for_each_triangle_in(e, alive, |_, a, b| {
                for x in [a, b] {
                    support[x as usize] -= 1;
                    if support[x as usize] < threshold && !pending.contains(x) {
                        pending.insert(x);
                        queue.push_back(x);
                    }
                }
            });
            self.support[e as usize] = 0;
        }
        removed
    }
    /// The `k'`-truss inside this truss for `k' >= k`, peeled from the
    /// supports already at hand.
    pub fn tighten(&self, g: &Graph, k: u32) -> TrussSubgraph {
        assert!(k >= self.k, "tighten cannot loosen a {}-truss to k={k}", self.k);
        let mut inner = TrussSubgraph { k, ..self.clone() };
        let weak: Vec<EdgeId> = inner.edges().filter(|&e| inner.support(e) < k - 2).collect();
        inner.delete(g, &weak);
        inner
    }
}

fn core_flags(g: &Graph, k: u32, alive: &EdgeSet) -> Vec<bool> {
    let n = g.vertex_count();
    let mut degree = vec![0u32; n];
    for e in alive.iter() {
        let key = g.edge(e);
        degree[key.u as usize] += 1;
        degree[key.v as usize] += 1;
    }
    let mut in_core = vec![true; n];
    let mut stack: Vec<VertexId> = (0..n as VertexId).filter(|&v| degree[v as usize] < k).collect();
    for &v in &stack {
        in_core[v as usize] = false;
    }
    while let Some(v) = stack.pop() {
        for (w, e) in g.adjacency(v) {
            if !alive.contains(e) || !in_core[w as usize] {
                continue;
            }
            degree[w as usize] -= 1;
            if degree[w as usize] < k {
                in_core[w as usize] = false;
                stack.push(w);
            }
        }
    }
    in_core
}

/// Vertices of the k-core, ascending.
pub fn k_core(g: &Graph, k: u32) -> Vec<VertexId> {
    let flags = core_flags(g, k, &g.all_edges());
    (0..g.vertex_count() as VertexId).filter(|&v| flags[v as usize]).collect()
}

pub fn k_truss(g: &Graph, k: u32) -> Result<TrussSubgraph> {
    k_truss_within(g, k, &g.all_edges())
}

/// k-truss of the subgraph formed by the edges in `alive`.
pub fn k_truss_within(g: &Graph, k: u32, alive: &EdgeSet) -> Result<TrussSubgraph> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k must be at least 3, got {k}")));
    }
    // Every vertex of a k-truss has at least k-1 neighbours inside it.
    let in_core = core_flags(g, k - 1, alive);
    let mut live = EdgeSet::empty(g.edge_count());
    for e in alive.iter() {
        let key = g.edge(e);
        if in_core[key.u as usize] && in_core[key.v as usize] {
            live.insert(e);
        }
    }
    let mut support = vec![0u32; g.edge_count()];
    for e in live.iter() {
        support[e as usize] = g.support_of(e, &live);
    }
    let mut truss = TrussSubgraph { k, alive: live, support };
    let weak: Vec<EdgeId> = truss.edges().filter(|&e| truss.support(e) < k - 2).collect();
    truss.delete(g, &weak);
    Ok(truss)
}

/// Per-edge trussness over a live edge set. Edges outside the live set read
/// as 0; live edges in no triangle read as [`NO_TRUSS`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussnessMap {
    tau: Vec<u32>,
    alive: EdgeSet,
}

/// What one edge deletion did to a [`TrussnessMap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrussnessDelta {
    pub deleted: EdgeId,
    /// Trussness the deleted edge had.
    pub deleted_trussness: u32,
    /// Edges whose trussness dropped by one, ascending.
    pub lowered: Vec<EdgeId>,
}

impl TrussnessMap {
    #[inline]
    pub fn get(&self, e: EdgeId) -> u32 {
        self.tau[e as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.tau
    }

    pub fn alive(&self) -> &EdgeSet {
        &self.alive
    }

    pub fn max(&self) -> u32 {
        self.tau.iter().copied().max().unwrap_or(0)
    }

    /// Edges with trussness at least `k`, i.e. the edge set of the k-truss.
    pub fn truss_edges(&self, k: u32) -> EdgeSet {
        EdgeSet::from_ids(
            self.tau.len(),
            self.alive.iter().filter(|&e| self.tau[e as usize] >= k),
        )
    }

    /// Trussness of the edges of `t`, capped at `cap`: an edge reads as
    /// `min(τ, cap)`. Only the trusses from `t.k()` to `cap` are peeled, so
    /// this is much cheaper than a full decomposition when `cap` is close to
    /// `t.k()`. Deletions keep the map exact under the cap, since a deletion
    /// lowers any trussness by at most one.
    pub fn capped(g: &Graph, t: &TrussSubgraph, cap: u32) -> TrussnessMap {
        let mut tau = vec![0u32; g.edge_count()];
        for e in t.edges() {
            tau[e as usize] = t.k();
        }
        let mut level = t.clone();
        for k in t.k() + 1..=cap {
            level = level.tighten(g, k);
            if level.is_empty() {
                break;
            }
            for e in level.edges() {
                tau[e as usize] = k;
            }
        }
        TrussnessMap { tau, alive: t.alive().clone() }
    }

    /// Copy with every value capped at `cap`.
    pub fn clamp(&self, cap: u32) -> TrussnessMap {
        TrussnessMap {
            tau: self.tau.iter().map(|&t| t.min(cap)).collect(),
            alive: self.alive.clone(),
        }
    }

    /// Deletes `e` and lowers the trussness of every edge that no longer
    /// reaches its old level.
    ///
    /// A deletion lowers any trussness by at most one, so level `l` can be
    /// settled on its own: an edge of trussness `l` keeps it iff it survives
    /// peeling among the edges of trussness `l` with support counted over
    /// triangles whose other edges have trussness at least `l`. Only the
    /// region reachable from `e` through such triangles is touched.
    pub fn delete_edge(&mut self, g: &Graph, e: EdgeId) -> Result<TrussnessDelta> {
        if !self.alive.contains(e) {
            return Err(Error::DeadEdge(g.edge(e)));
        }
        let top = self.tau[e as usize];
        self.alive.remove(e);
        self.tau[e as usize] = 0;

        let mut lowered = Vec::new();
        let mut scratch = LevelScratch::new(self.tau.len());
        for level in 3..=top {
            self.settle_level(g, e, level, &mut scratch, &mut lowered);
        }
        for &x in &lowered {
            self.tau[x as usize] -= 1;
        }
        lowered.sort_unstable();
        Ok(TrussnessDelta { deleted: e, deleted_trussness: top, lowered })
    }

    /// Same as [`delete_edge`](Self::delete_edge) for a map whose live edges
    /// all have trussness at least `floor`, given the `fallen` edges that
    /// deleting `e` cascades out of the `floor`-truss. Those are exactly the
    /// edges dropping from `floor`, so only the levels above are settled.
    pub fn delete_edge_with_cascade(&mut self, g: &Graph, e: EdgeId, fallen: &[EdgeId], floor: u32) -> Result<TrussnessDelta> {
        if !self.alive.contains(e) {
            return Err(Error::DeadEdge(g.edge(e)));
        }
        let top = self.tau[e as usize];
        self.alive.remove(e);
        self.tau[e as usize] = 0;

        let mut lowered = fallen.to_vec();
        if top > floor {
            let mut scratch = LevelScratch::new(self.tau.len());
            for level in floor + 1..=top {
                self.settle_level(g, e, level, &mut scratch, &mut lowered);
            }
        }
        for &x in &lowered {
            self.tau[x as usize] -= 1;
        }
        lowered.sort_unstable();
        Ok(TrussnessDelta { deleted: e, deleted_trussness: top, lowered })
    }

    /// Forgets every live edge in `edges` with trussness below `floor`.
    /// Trussness at `floor` and above does not depend on such edges, so it
    /// stays exact.
    pub fn drop_below(&mut self, floor: u32, edges: &[EdgeId]) {
        for &e in edges {
            if self.alive.contains(e) && self.tau[e as usize] < floor {
                self.alive.remove(e);
                self.tau[e as usize] = 0;
            }
        }
    }

    fn settle_level(&self, g: &Graph, deleted: EdgeId, level: u32, scratch: &mut LevelScratch, lowered: &mut Vec<EdgeId>) {
        let need = level - 2;
        let tau = &self.tau;
        let alive = &self.alive;
        // Trussness values are read before any lowering is applied. A
        // triangle dies when the first of its edges is processed, so supports
        // are counted against `processed`, not against `queued`.
        let LevelScratch { support, state, seen } = scratch;
        let mut queue: Vec<EdgeId> = Vec::new();

        let level_support = |x: EdgeId, state: &[u8]| {
            let mut s = 0;
            g.for_each_triangle_in(x, alive, |_, a, b| {
                if tau[a as usize] >= level
                    && tau[b as usize] >= level
                    && state[a as usize] & PROCESSED == 0
                    && state[b as usize] & PROCESSED == 0
                {
                    s += 1;
                }
            });
            s
        };

        // Seeds: level-l edges that shared an l-triangle with the deleted edge.
        let mut seeds = Vec::new();
        g.for_each_triangle_in(deleted, alive, |_, a, b| {
            if tau[a as usize] >= level && tau[b as usize] >= level {
                seeds.extend([a, b].into_iter().filter(|&x| tau[x as usize] == level));
            }
        });
        for x in seeds {
            if state[x as usize] & KNOWN != 0 {
                continue;
            }
            let s = level_support(x, state);
            support[x as usize] = s;
            state[x as usize] |= KNOWN;
            seen.push(x);
            if s < need {
                state[x as usize] |= QUEUED;
                queue.push(x);
            }
        }

        let mut touched = Vec::new();
        while let Some(x) = queue.pop() {
            state[x as usize] |= PROCESSED;
            lowered.push(x);
            touched.clear();
            g.for_each_triangle_in(x, alive, |_, a, b| {
                if tau[a as usize] < level
                    || tau[b as usize] < level
                    || state[a as usize] & PROCESSED != 0
                    || state[b as usize] & PROCESSED != 0
                {
                    return;
                }
                touched.extend([a, b].into_iter().filter(|&y| tau[y as usize] == level));
            });
            for &y in &touched {
                let i = y as usize;
                let s = if state[i] & KNOWN != 0 {
                    support[i] -= 1;
                    support[i]
                } else {
                    let s = level_support(y, state);
                    support[i] = s;
                    state[i] |= KNOWN;
                    seen.push(y);
                    s
                };
                if s < need && state[i] & QUEUED == 0 {
                    state[i] |= QUEUED;
                    queue.push(y);
                }
            }
        }

        for x in seen.drain(..) {
            state[x as usize] = 0;
        }
    }
}

const KNOWN: u8 = 1;
const QUEUED: u8 = 2;
const PROCESSED: u8 = 4;

/// Per-edge scratch for settling one level, cleared through `seen`.
struct LevelScratch {
    support: Vec<u32>,
    state: Vec<u8>,
    seen: Vec<EdgeId>,
}

impl LevelScratch {
    fn new(m: usize) -> Self {
        LevelScratch { support: vec![0; m], state: vec![0; m], seen: Vec::new() }
    }
}

pub fn truss_decompose(g: &Graph) -> TrussnessMap {
    truss_decompose_within(g, &g.all_edges())
}

/// Trussness of every edge of the subgraph formed by `alive`.
///
/// Peels edges in ascending support order (ties by smallest edge id),
/// assigning each the running maximum of `support + 2`.
pub fn truss_decompose_within(g: &Graph, alive: &EdgeSet) -> TrussnessMap {
    let m = g.edge_count();
    let mut support = vec![0u32; m];
    let mut heap = BinaryHeap::new();
    for e in alive.iter() {
        support[e as usize] = g.support_of(e, alive);
        heap.push(Reverse((support[e as usize], e)));
    }
    let mut tau = vec![0u32; m];
    let mut remaining = alive.clone();
    let mut level = NO_TRUSS;
    while let Some(Reverse((s, e))) = heap.pop() {
        if !remaining.contains(e) || s != support[e as usize] {
            continue;
        }
        level = level.max(s + 2);
        tau[e as usize] = level;
        remaining.remove(e);
        g.for_each_triangle_in(e, &remaining, |_, a, b| {
            for x in [a, b] {
                support[x as usize] -= 1;
                heap.push(Reverse((support[x as usize], x)));
            }
        });
    }
    TrussnessMap { tau, alive: alive.clone() }
}

/// Functional form of [`TrussnessMap::delete_edge`].
pub fn update_after_deletion(
    g: &Graph,
    tau: &TrussnessMap,
    e: EdgeKey,
) -> Result<(TrussnessMap, TrussnessDelta)> {
    let id = g.find_edge(e)?;
    let mut next = tau.clone();
    let delta = next.delete_edge(g, id)?;
    Ok((next, delta))
}
