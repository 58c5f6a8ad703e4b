//! A laboratory for halving-edge graphs of planar point sets.
//!
//! A segment between two points of an even-size set is a *halving edge* when
//! the line through it leaves exactly half of the remaining points on each
//! side. This crate enumerates halving edges (and general k-edges) with exact
//! integer arithmetic, counts crossings of the resulting geometric graph,
//! checks the combinatorial identities that tie crossings to the degree
//! sequence, and reproduces the classical O(n^(4/3)) upper bound on the number
//! of halving edges as an executable pipeline built on a closed-form cubic
//! solver.
//!
//! The high-level entry points:
//!
//! - [`pointgen::generate`] produces reproducible general-position point sets.
//! - [`graph::halving_edges_rotational`] enumerates halving edges in
//!   O(n^2 log n); [`graph::halving_edges_bruteforce`] is the O(n^3) oracle.
//! - [`crossings::crossing_number`] counts proper edge crossings exactly.
//! - [`audit`] verifies the crossing/degree identity, the degree-histogram
//!   lemmas, the rotation property of halving edges, and the convex-chain
//!   decomposition.
//! - [`cubic::solve_cubic`] is a robust closed-form (Cardano) cubic solver.
//! - [`bound`] turns the crossing-lemma argument into numbers: it builds the
//!   cubic inequality satisfied by the halving-edge count and extracts its
//!   positive root for comparison against measured data.
//! - [`report::AnalysisReport`] aggregates everything for machine consumption.

pub mod audit;
pub mod bound;
pub mod crossings;
pub mod cubic;
pub mod fileio;
pub mod geom;
pub mod graph;
pub mod pointgen;
pub mod report;

pub use audit::{
    audit_lemmas, convex_chain_decompose, lovasz_rotation_check, verify_identity,
    ConvexChainDecomposition, IdentityReport, LemmaAuditReport, RotationReport,
};
pub use bound::{
    asymptotic_probe, bound_report, build_cubic, halving_upper_bound, BoundPreset, BoundReport,
};
pub use crossings::{crossing_number, CrossingReport};
pub use cubic::{largest_positive_root, solve_cubic, CubicPolynomial, CubicRoots};
pub use geom::{check_general_position, orientation, segments_cross, Orientation, Point, PointSet};
pub use graph::{
    degree_histogram, halving_edges_bruteforce, halving_edges_rotational, k_edges,
    DegreeHistogram, HalvingGraph,
};
pub use pointgen::{generate, GeneratorSpec, Kind};
pub use report::{analyze, AnalysisReport, AnalyzeOptions};
