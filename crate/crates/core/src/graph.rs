//! Immutable undirected simple graph in compressed sparse row form.
//!
//! Vertices are dense ids in `0..n`, assigned in ascending order of the
//! original input labels. Every undirected edge is stored once as a
//! canonical [`EdgeKey`] (`u < v`) and numbered densely; the numbering
//! follows lexicographic `(u, v)` order, so it is stable under any
//! reordering of the input lines.

use std::collections::HashMap;
use std::io::BufRead;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

/// Canonical undirected edge between two dense vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeKey {
    pub u: VertexId,
    pub v: VertexId,
}

impl EdgeKey {
    /// Orients the pair so that `u < v`. Returns `None` for a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(EdgeKey { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(EdgeKey { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }
}

/// Triangle with `a < b < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
}

/// Subset of edge ids of one graph, stored as a bitset.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeSet(FixedBitSet);

impl EdgeSet {
    pub fn empty(edge_count: usize) -> Self {
        EdgeSet(FixedBitSet::with_capacity(edge_count))
    }

    pub fn full(edge_count: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(edge_count);
        bits.insert_range(..);
        EdgeSet(bits)
    }

    pub fn from_ids(edge_count: usize, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut set = Self::empty(edge_count);
        for e in ids {
            set.insert(e);
        }
        set
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(e as usize)
    }

    #[inline]
    pub fn insert(&mut self, e: EdgeId) {
        self.0.insert(e as usize);
    }

    #[inline]
    pub fn remove(&mut self, e: EdgeId) {
        self.0.set(e as usize, false);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Size of the id universe, i.e. the edge count of the owning graph.
    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.ones().map(|e| e as EdgeId)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference_with(&mut self, other: &EdgeSet) {
        self.0.difference_with(&other.0);
    }
}

impl std::fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<u64>,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    incident: Vec<EdgeId>,
    edges: Vec<EdgeKey>,
}

impl Graph {
    /// Builds a graph from labelled pairs. Self-loops are dropped and
    /// duplicate or reversed pairs collapse into one edge. Labels that only
    /// occur in self-loops do not become vertices.
    pub fn from_labeled_edges(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let pairs: Vec<(u64, u64)> = pairs.into_iter().filter(|(a, b)| a != b).collect();

        let mut labels: Vec<u64> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        labels.sort_unstable();
        labels.dedup();
        let dense: HashMap<u64, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, i as VertexId))
            .collect();

        let mut edges: Vec<EdgeKey> = pairs
            .iter()
            .filter_map(|(a, b)| EdgeKey::new(dense[a], dense[b]))
            .collect();
        edges.sort_unstable();
        edges.dedup();

        Self::from_canonical(labels, edges)
    }

    /// Builds a graph over vertices `0..n` whose labels equal their ids.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        let mut edges: Vec<EdgeKey> = pairs
            .into_iter()
            .filter_map(|(a, b)| {
                assert!((a as usize) < n && (b as usize) < n, "vertex out of range");
                EdgeKey::new(a, b)
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Self::from_canonical((0..n as u64).collect(), edges)
    }

    fn from_canonical(labels: Vec<u64>, edges: Vec<EdgeKey>) -> Self {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u as usize] += 1;
            degree[e.v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut fill = offsets.clone();
        let mut neighbors = vec![0; offsets[n]];
        let mut incident = vec![0; offsets[n]];
        // Edges arrive sorted by (u, v): vertex x first receives its smaller
        // neighbours (as the `v` side) and then its larger ones (as the `u`
        // side), both ascending, so every adjacency list comes out sorted.
        for (id, e) in edges.iter().enumerate() {
            let (u, v) = (e.u as usize, e.v as usize);
            neighbors[fill[u]] = e.v;
            incident[fill[u]] = id as EdgeId;
            fill[u] += 1;
            neighbors[fill[v]] = e.u;
            incident[fill[v]] = id as EdgeId;
            fill[v] += 1;
        }
        debug_assert!((0..n).all(|v| neighbors[offsets[v]..offsets[v + 1]].windows(2).all(|w| w[0] < w[1])));
        Graph { labels, offsets, neighbors, incident, edges }
    }

    /// Reads the whitespace-separated edge-list format: one pair of integer
    /// labels per line, `#` comment lines and blank lines ignored. Tokens
    /// after the second one are ignored.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let mut next = |what: &str| -> Result<u64> {
                let tok = tokens.next().ok_or_else(|| Error::Parse {
                    line: i + 1,
                    message: format!("missing {what} vertex"),
                })?;
                tok.parse::<u64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("invalid vertex label {tok:?}"),
                })
            };
            let a = next("first")?;
            let b = next("second")?;
            pairs.push((a, b));
        }
        Ok(Self::from_labeled_edges(pairs))
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Neighbours of `v` paired with the id of the connecting edge.
    pub fn adjacency(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.neighbors(v).iter().copied().zip(self.incident(v).iter().copied())
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> EdgeKey {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[EdgeKey] {
        &self.edges
    }

    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let key = EdgeKey::new(a, b)?;
        if key.v as usize >= self.vertex_count() {
            return None;
        }
        let nbrs = self.neighbors(key.u);
        nbrs.binary_search(&key.v).ok().map(|i| self.incident(key.u)[i])
    }

    pub fn find_edge(&self, key: EdgeKey) -> Result<EdgeId> {
        self.edge_id(key.u, key.v).ok_or(Error::UnknownEdge(key))
    }

    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v as usize]
    }

    pub fn vertex_by_label(&self, label: u64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok().map(|i| i as VertexId)
    }

    /// Endpoints of `e` in original labels, smaller label first.
    pub fn edge_labels(&self, e: EdgeId) -> [u64; 2] {
        let key = self.edge(e);
        [self.label(key.u), self.label(key.v)]
    }

    /// Calls `f(w, (u, w), (v, w))` for every common neighbour `w` of the
    /// endpoints of `e`, in ascending `w` order.
    #[inline]
    pub fn for_each_triangle(&self, e: EdgeId, mut f: impl FnMut(VertexId, EdgeId, EdgeId)) {
        let EdgeKey { u, v } = self.edge(e);
        let (nu, iu) = (self.neighbors(u), self.incident(u));
        let (nv, iv) = (self.neighbors(v), self.incident(v));
        // Hub vertices: binary-search the long list instead of walking it.
        if nu.len() * 16 < nv.len() || nv.len() * 16 < nu.len() {
            let swap = nu.len() > nv.len();
            let ((ns, is), (nl, il)) = if swap { ((nv, iv), (nu, iu)) } else { ((nu, iu), (nv, iv)) };
            let mut from = 0;
            for (x, &w) in ns.iter().enumerate() {
                from += nl[from..].partition_point(|&y| y < w);
                if from == nl.len() {
                    break;
                }
                if nl[from] == w {
                    if swap {
                        f(w, il[from], is[x]);
                    } else {
                        f(w, is[x], il[from]);
                    }
                }
            }
            return;
        }
        let (mut i, mut j) = (0, 0);
        while i < nu.len() && j < nv.len() {
            match nu[i].cmp(&nv[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    f(nu[i], iu[i], iv[j]);
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    /// Like [`Graph::for_each_triangle`] but only reports triangles whose two
    /// other edges are both in `alive`.
    #[inline]
    pub fn for_each_triangle_in(
        &self,
        e: EdgeId,
        alive: &EdgeSet,
        mut f: impl FnMut(VertexId, EdgeId, EdgeId),
    ) {
        self.for_each_triangle(e, |w, a, b| {
            if alive.contains(a) && alive.contains(b) {
                f(w, a, b)
            }
        })
    }

    pub fn common_neighbors(&self, key: EdgeKey) -> Result<Vec<VertexId>> {
        let e = self.find_edge(key)?;
        let mut out = Vec::new();
        self.for_each_triangle(e, |w, _, _| out.push(w));
        Ok(out)
    }

    /// Number of triangles containing `key` whose edges all lie in `alive`.
    pub fn support(&self, key: EdgeKey, alive: &EdgeSet) -> Result<u32> {
        let e = self.find_edge(key)?;
        if !alive.contains(e) {
            return Err(Error::DeadEdge(key));
        }
        Ok(self.support_of(e, alive))
    }

    pub(crate) fn support_of(&self, e: EdgeId, alive: &EdgeSet) -> u32 {
        let mut s = 0;
        self.for_each_triangle_in(e, alive, |_, _, _| s += 1);
        s
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for (id, key) in self.edges.iter().enumerate() {
            self.for_each_triangle(id as EdgeId, |w, _, _| {
                if w > key.v {
                    out.push(Triangle { a: key.u, b: key.v, c: w });
                }
            });
        }
        out
    }

    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (id, key) in self.edges.iter().enumerate() {
            self.for_each_triangle(id as EdgeId, |w, _, _| {
                if w > key.v {
                    count += 1;
                }
            });
        }
        count
    }
}
