//! Exact rational decompositions of dense t-uniform hypergraphs into cliques.
//!
//! The coverage system over the edges of a dense t-graph is solved over exact
//! rationals. A solution expands into a weighted list of cliques, which is
//! re-verified from scratch.
//! The [`johnson`] module carries the Johnson-scheme spectrum that explains
//! when the solution is positive, and [`bounds`] reports the perturbation
//! quantities for a concrete graph.

pub mod bounds;
pub mod cli;
pub mod combinat;
pub mod decomp;
pub mod error;
pub mod exactla;
pub mod hypergraph;
pub mod johnson;
pub mod poly;
pub mod rational;

pub use decomp::{
    build_mhat, epsilon_threshold, expand_certificate, solve_decomposition, trivial_complete_decomposition,
    verify_certificate, CoverageMatrix, DecompositionCertificate, SolveOutcome, SolveStatus, Verification,
};
pub use error::{Error, Result};
pub use hypergraph::TGraph;
pub use johnson::{JohnsonParams, SpectrumTable};

/// Largest `C(v,t)` accepted when materializing the Johnson matrices `M` and `M1`.
pub const MATRIX_CAP: usize = 1000;
/// Largest dimension accepted by exact determinant and characteristic polynomial paths.
pub const EXACT_CAP: usize = 300;
/// Largest edge count accepted when building the coverage matrix of a graph.
pub const EDGE_CAP: usize = 1000;
