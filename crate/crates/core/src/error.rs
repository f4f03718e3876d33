use thiserror::Error;

use crate::graph::GraphError;

/// Which extremal element of a set failed its membership check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Join,
    Meet,
}

impl std::fmt::Display for Extremal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extremal::Join => write!(f, "join"),
            Extremal::Meet => write!(f, "meet"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no vertex with id {0}")]
    NoSuchVertex(i64),
    #[error("no edge between {0} and {1}")]
    NoSuchEdge(i64, i64),
    #[error("cycle has {found} coefficients, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("feasible region is empty")]
    EmptyFeasibleRegion,
    #[error("the {0} of the extremal set is not itself a member")]
    ExtremalNotMinimizer(Extremal),
    #[error("minimizer set is empty")]
    EmptyMinimizerSet,
    #[error("enumeration exceeded the limit of {limit} search nodes")]
    SearchLimitExceeded { limit: u64 },
    #[error("support of the cycle is not connected")]
    DisconnectedSupport,
    #[error("vertex subset does not induce a connected subgraph")]
    DisconnectedSubgraph,
    #[error("class is not in the dual lattice L'")]
    NotInDualLattice,
    #[error("class is not in the analytic semigroup")]
    NotInSemigroup,
    #[error("vertex {vertex} does not satisfy the star condition with negative pairing")]
    NotStar { vertex: i64 },
    #[error("graph is not elliptic")]
    NotElliptic,
    #[error("cycle must be effective")]
    NegativeInput,
    #[error("cycle must be nonzero")]
    ZeroInput,
    #[error("internal identity failed: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
