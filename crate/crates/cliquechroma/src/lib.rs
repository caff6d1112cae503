//! Clique colorings of graphs: a coloring is valid when no inclusion-maximal
//! clique (of size ≥ 2 by convention) is monochromatic, and the clique
//! chromatic number χ_c is the least palette admitting one.
//!
//! The crate provides bitset graphs with a deterministic G(n,p) sampler,
//! maximal-clique machinery, the greedy pivot coloring together with exact
//! and brute-force χ_c solvers, an adversarial coloring audit, closed-form
//! bound evaluators, and Monte Carlo checks of the probabilistic events
//! behind them.

pub mod bitset;
pub mod bounds;
pub mod budget;
pub mod cliques;
pub mod coloring;
pub mod error;
pub mod format;
pub mod graph;
pub mod probcheck;
pub mod rng;

pub use bitset::VertexSet;
pub use budget::Budget;
pub use coloring::Coloring;
pub use error::{Error, Result};
pub use graph::{GenParams, Graph};
