use plumbing_core::{Error, GraphError};

/// Exit codes: 1 input errors, 2 invariant violations, 3 violated theorem
/// hypotheses.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{origin}: parse error: {message}")]
    Parse { origin: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Core(Error::Graph(e))
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Argument(_) => 1,
            CliError::SelfCheck(_) => 2,
            CliError::Core(e) => match e {
                Error::Graph(GraphError::NotNegativeDefinite { .. }) => 2,
                Error::Graph(_)
                | Error::NoSuchVertex(_)
                | Error::NoSuchEdge(..)
                | Error::DimensionMismatch { .. }
                | Error::NegativeInput
                | Error::ZeroInput
                | Error::NotInDualLattice
                | Error::DisconnectedSupport
                | Error::DisconnectedSubgraph => 1,
                Error::ExtremalNotMinimizer(_)
                | Error::EmptyMinimizerSet
                | Error::EmptyFeasibleRegion
                | Error::NotInSemigroup
                | Error::NotStar { .. }
                | Error::NotElliptic => 3,
                Error::SearchLimitExceeded { .. } | Error::Invariant(_) => 2,
            },
        }
    }
}
