//! Vertex-edge domination: exact oracles, a linear solver for block graphs,
//! the tree characterization of `γ_ve = i_ve`, the 3DM reduction for chordal
//! graphs and an audit of the subdivision-based tree algorithm.

pub mod block;
pub mod family;
pub mod graph;
pub mod lewis;
pub mod oracles;
pub mod par;
pub mod reduction;

pub use graph::{Graph, GraphError};
pub use oracles::{OracleConfig, OracleError, SolveResult, Variant};
