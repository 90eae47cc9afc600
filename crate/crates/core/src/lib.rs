//! Posets of subgraphs of finite multigraphs and the topology of their
//! order complexes, as they arise in Culler–Vogtmann Outer space.

pub mod enumerate;
pub mod error;
pub mod graph_posets;
pub mod homology;
pub mod morse;
pub mod multigraph;
pub mod poset;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
