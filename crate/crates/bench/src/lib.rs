//! Shared fixtures for the benchmarks.

use ktruss::synth::{community_graph, CommunityParams};
use ktruss::Graph;

/// About 91k edges with dense overlapping communities.
pub fn facebook_like() -> Graph {
    community_graph(&CommunityParams::default(), 7)
}

/// A quarter-size variant, for the slow solvers.
pub fn small() -> Graph {
    let params = CommunityParams { vertices: 1000, communities: 20, background_edges: 300, ..CommunityParams::default() };
    community_graph(&params, 7)
}
