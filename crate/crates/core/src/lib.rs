//! k-truss decomposition and k-truss minimization.
//!
//! The k-truss of a graph is its largest subgraph in which every edge lies
//! in at least `k - 2` triangles. Deleting a few well-chosen edges can make
//! large parts of it unravel. This crate measures that fragility: it
//! computes trusses and trussness, simulates the cascade a deletion
//! triggers, and searches for the `b` edges whose deletion collapses the
//! most of the k-truss.
//!
//! ```
//! use ktruss::graph::Graph;
//! use ktruss::minimize::{solve, Algorithm, SolverConfig};
//!
//! let k5 = Graph::load_edge_list("0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n".as_bytes()).unwrap();
//! let report = solve(&k5, &SolverConfig::new(5, 1, Algorithm::UpEdge)).unwrap();
//! assert_eq!(report.totals.followers, 9);
//! ```

pub mod cascade;
pub mod error;
pub mod graph;
pub mod groups;
pub mod minimize;
pub mod synth;
pub mod truss;

pub use error::{Error, Result};
pub use graph::{EdgeId, EdgeKey, EdgeSet, Graph, VertexId};
pub use truss::{TrussSubgraph, TrussnessMap};
