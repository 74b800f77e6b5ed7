//! Exact-computation toolkit for tau-critical uniform hypergraphs.
//!
//! The crate centers on three exact invariants of an r-uniform hypergraph —
//! the transversal number tau, the independence number alpha, and the clique
//! number omega — together with the complementarity identities linking them,
//! criticality and witness diagnostics, clique-family (arrow notation)
//! machinery, and an isomorph-rejecting search for the maximum order of a
//! tau-critical hypergraph with given uniformity and transversal number.
//! Searches emit certificates that can be re-verified from scratch.
//!
//! All computation is exact (integer/rational); results are deterministic,
//! including witness choices and search outcomes.

pub mod arrow;
pub mod canon;
pub mod critical;
pub mod duality;
pub mod extremal;
pub mod hypergraph;
pub mod solve;
pub mod text;

pub use hypergraph::{Hypergraph, HypergraphError, Relabeling, VertexSet};
pub use solve::{SolveError, SolveResult};
