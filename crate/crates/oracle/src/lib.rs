//! Brute-force reference implementations for certifying the optimized
//! lattice computations on small graphs, and the fixed test corpus.

pub mod brute;
pub mod corpus;
pub mod tree_dp;

pub use brute::{
    analytic_box, brute_chi, brute_min_chi, brute_semigroup, brute_sublevel, brute_zmin,
    feasible_level, oracle_min_chi, oracle_semigroup, ScanBox, MAX_CANDIDATES,
};
pub use tree_dp::tree_min_chi;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("box has {candidates} candidates, above the scan guard")]
    BoxTooLarge { candidates: u128 },
    #[error("machine integer overflow")]
    Overflow,
    #[error("box contains no admissible point")]
    EmptyBox,
    #[error("scanned set has no least element")]
    NoLeastElement,
    #[error("independent recomputation disagrees: {0}")]
    Inconsistent(&'static str),
}
