use thiserror::Error;

use crate::graph::{EdgeId, EdgeKey};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("edge ({}, {}) is not present", .0.u, .0.v)]
    UnknownEdge(EdgeKey),

    #[error("edge ({}, {}) is not alive", .0.u, .0.v)]
    DeadEdge(EdgeKey),

    #[error("edge #{0} is not in the current k-truss")]
    NotInTruss(EdgeId),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty truss")]
    EmptyTruss,

    #[error(
        "exact search needs {combinations} edge subsets, above the cap of {cap}; \
         use a greedy algorithm (baseline, gp_edge or up_edge) instead"
    )]
    ExactCapExceeded { combinations: u128, cap: u128 },
}
