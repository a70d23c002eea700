//! Definitional oracles. They only read the vertex pairs of a graph and
//! recompute everything with an adjacency matrix and naive fixpoints.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ktruss::synth::erdos_renyi;
use ktruss::Graph;
use proptest::prelude::*;

pub struct Naive {
    pub n: usize,
    pub pairs: Vec<(usize, usize)>,
    id: Vec<Vec<Option<usize>>>,
}

impl Naive {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let pairs: Vec<(usize, usize)> = g.edges().iter().map(|k| (k.u as usize, k.v as usize)).collect();
        let mut id = vec![vec![None; n]; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            id[u][v] = Some(i);
            id[v][u] = Some(i);
        }
        Naive { n, pairs, id }
    }

    pub fn all(&self) -> BTreeSet<usize> {
        (0..self.pairs.len()).collect()
    }

    pub fn support(&self, e: usize, alive: &BTreeSet<usize>) -> usize {
        let (u, v) = self.pairs[e];
        (0..self.n)
            .filter(|&w| {
                let a = self.id[u][w].is_some_and(|x| alive.contains(&x));
                let b = self.id[v][w].is_some_and(|x| alive.contains(&x));
                a && b
            })
            .count()
    }

    /// Largest subset of `alive` where every edge has support at least
    /// `k - 2`, by removing violators until nothing changes.
    pub fn truss(&self, k: usize, alive: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut cur = alive.clone();
        loop {
            let weak: Vec<usize> = cur.iter().copied().filter(|&e| self.support(e, &cur) + 2 < k).collect();
            if weak.is_empty() {
                return cur;
            }
            for e in weak {
                cur.remove(&e);
            }
        }
    }

    /// Trussness by membership: the largest k whose truss holds the edge.
    pub fn trussness(&self, alive: &BTreeSet<usize>) -> Vec<u32> {
        let mut tau = vec![0u32; self.pairs.len()];
        for &e in alive {
            tau[e] = 2;
        }
        let mut k = 3;
        loop {
            let t = self.truss(k, alive);
            if t.is_empty() {
                return tau;
            }
            for e in t {
                tau[e] = k as u32;
            }
            k += 1;
        }
    }

    /// Edges of `truss` (a k-truss) that leave when `deleted` is removed,
    /// not counting `deleted` itself.
    pub fn followers(&self, k: usize, truss: &BTreeSet<usize>, deleted: &BTreeSet<usize>) -> BTreeSet<usize> {
        let rest: BTreeSet<usize> = truss.difference(deleted).copied().collect();
        let after = self.truss(k, &rest);
        rest.difference(&after).copied().collect()
    }

    /// All triangles as sorted edge-id triples.
    pub fn triangles(&self, alive: &BTreeSet<usize>) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c in b + 1..self.n {
                    if let (Some(x), Some(y), Some(z)) = (self.id[a][b], self.id[a][c], self.id[b][c]) {
                        if alive.contains(&x) && alive.contains(&y) && alive.contains(&z) {
                            let mut t = [x, y, z];
                            t.sort_unstable();
                            out.push(t);
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn ids(set: impl IntoIterator<Item = u32>) -> BTreeSet<usize> {
    set.into_iter().map(|e| e as usize).collect()
}

/// Edge-list fixture from a whitespace edge-list string.
pub fn parse(text: &str) -> Graph {
    Graph::load_edge_list(text.as_bytes()).unwrap()
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.vertex_count() as u32;
    let mut pairs: Vec<(u32, u32)> = a.edges().iter().map(|k| (k.u, k.v)).collect();
    pairs.extend(b.edges().iter().map(|k| (k.u + shift, k.v + shift)));
    Graph::from_edges(a.vertex_count() + b.vertex_count(), pairs)
}

/// Random graph with at most `max_n` vertices, shrinkable towards fewer
/// vertices and edges.
pub fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3usize..=max_n).prop_flat_map(|n| {
        let all: Vec<(u32, u32)> =
            (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
        proptest::sample::subsequence(all.clone(), 0..=all.len()).prop_map(move |pairs| Graph::from_edges(n, pairs))
    })
}

/// Random dense graph: G(n, p) with n and p drawn from the given ranges.
pub fn dense_graph(n: std::ops::RangeInclusive<usize>, p: std::ops::Range<f64>) -> impl Strategy<Value = Graph> {
    (n, p, any::<u64>()).prop_map(|(n, p, seed)| erdos_renyi(n, p, seed))
}
