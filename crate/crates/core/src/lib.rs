//! Conflict-free connection colorings of trees.
//!
//! An edge coloring is conflict-free connecting when every pair of vertices
//! is joined by a path on which some color appears exactly once; `cfc(T)` is
//! the fewest colors that achieve it. This crate builds such colorings by
//! balanced-edge decomposition ([`decompose`]), checks colorings
//! ([`verify`]), computes exact values for small trees ([`exact`]) and
//! generates the tree families those values are known for ([`families`]).

pub mod decompose;
pub mod error;
pub mod exact;
pub mod families;
pub mod graph;
pub mod io;
pub mod sweep;
pub mod verify;

pub use decompose::{algorithm1, depth, min_depth, ranking_from_trace, DecompositionTrace, TieBreak};
pub use error::{Error, Result};
pub use exact::{
    cfc_exact, cfc_fast_path, cfc_lower_bound, general_bounds, is_cfc_critical, oc_exact, rank_exact,
    CriticalityReport, GeneralBounds, SearchReport, DEFAULT_BUDGET,
};
pub use families::{generate, generate_with_certificate, random_tree, Family, FamilySpec};
pub use graph::{ceil_log2, Graph, SubTree, Tree};
pub use verify::{
    is_cfc_coloring, is_edge_ranking, is_odd_connected, parity_spectrum, parity_vector, restrict_coloring,
    EdgeColoring, ParityVector, Verdict,
};
