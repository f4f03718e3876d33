//! Lattice invariants of negative definite plumbing graphs with rational
//! homology sphere links, evaluated for the generic analytic structure.

pub mod base_points;
pub mod catalog;
pub mod cycle;
pub mod error;
pub mod form;
pub mod graph;
pub mod graph_ops;
pub mod invariants;
pub mod lattice_opt;
pub mod linalg;

pub use base_points::{
    base_point_data, base_point_report, distinct_base_points_check, elliptic_claims,
    multiplicity_generic, star_condition, BasePointReport, DistinctCheck, Distinctness,
    EllipticClaims, VertexBaseData,
};
pub use cycle::{Cycle, RatCycle};
pub use error::{Error, Extremal, Result};
pub use form::{build_form, IntersectionForm};
pub use graph::{GraphError, ResolutionGraph, Vertex};
pub use graph_ops::{blow_up_edge, blow_up_generic, restrict_class, BlowUpResult};
pub use invariants::{
    analyze, classify, e_dimension, geometric_genus, h1_cycle, h1_cycle_large, h1_natural,
    h1_twisted, h1_twisted_large, hilbert_h, in_analytic_semigroup, maximal_ideal_cycle,
    minimally_elliptic_cycle, ClassTag, GraphClass, HilbertFunction, InvariantReport,
    MaximalIdealCycle, TwistedH1,
};
pub use lattice_opt::{
    extremal_join, extremal_meet, laufer_zmin, level_set, min_chi, minimizer_join, minimizer_meet,
    sublevel_set, ChiMinResult, Constraint, SearchStats, SublevelSet,
};
