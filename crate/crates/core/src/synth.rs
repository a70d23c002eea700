//! Seeded synthetic graphs for tests and benchmarks.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};

/// Erdős–Rényi `G(n, p)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for a in 0..n as VertexId {
        for b in a + 1..n as VertexId {
            if rng.gen_bool(p) {
                pairs.push((a, b));
            }
        }
    }
    Graph::from_edges(n, pairs)
}

/// Complete graph on `n` vertices.
pub fn clique(n: usize) -> Graph {
    let mut pairs = Vec::new();
    for a in 0..n as VertexId {
        for b in a + 1..n as VertexId {
            pairs.push((a, b));
        }
    }
    Graph::from_edges(n, pairs)
}

/// Shape of a [`community_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommunityParams {
    pub vertices: usize,
    pub communities: usize,
    /// Community sizes are log-uniform in `[min_size, max_size]`.
    pub min_size: usize,
    pub max_size: usize,
    /// Intra-community edge probability is drawn per community from
    /// `[min_density, max_density]`.
    pub min_density: f64,
    pub max_density: f64,
    /// Communities are laid end to end around the ring of vertex ids; one of
    /// size `s` draws its members from the next `s * spread` ids, so
    /// neighbours overlap a little and most vertices belong to one or two.
    pub spread: f64,
    /// Uniform random edges added on top.
    pub background_edges: usize,
}

impl Default for CommunityParams {
    /// With seed 7: 4039 vertices, about 91k edges, 1.5M triangles, average
    /// clustering 0.58 and maximum trussness 89, close to the public
    /// Facebook ego-network crawl.
    fn default() -> Self {
        CommunityParams {
            vertices: 4039,
            communities: 85,
            min_size: 6,
            max_size: 160,
            min_density: 0.4,
            max_density: 0.9,
            spread: 1.0,
            background_edges: 1200,
        }
    }
}

/// Overlapping dense communities plus uniform noise.
pub fn community_graph(params: &CommunityParams, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.vertices;
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    let (lo, hi) = ((params.min_size.max(1)) as f64, (params.max_size.max(params.min_size).max(1)) as f64);
    let mut cursor = rng.gen_range(0..n);
    for _ in 0..params.communities {
        let size = (lo * (hi / lo).powf(rng.gen::<f64>())).round() as usize;
        let window = ((size as f64 * params.spread.max(1.0)).ceil() as usize).clamp(size.min(n), n);
        let size = size.min(window);
        let density = rng.gen_range(params.min_density..=params.max_density);
        let start = cursor;
        cursor = (cursor + size) % n;
        let members: Vec<VertexId> = sample(&mut rng, window, size)
            .into_iter()
            .map(|i| ((start + i) % n) as VertexId)
            .collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if rng.gen_bool(density) {
                    pairs.push((a, b));
                }
            }
        }
    }
    for _ in 0..params.background_edges {
        let a = rng.gen_range(0..n) as VertexId;
        let b = rng.gen_range(0..n) as VertexId;
        pairs.push((a, b));
    }
    Graph::from_edges(n, pairs)
}
