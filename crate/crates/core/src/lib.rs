//! Exact feasibility analysis for perfect colorings and completely regular
//! codes in Hamming graphs H(n,q) and Doob graphs D(m,n).
//!
//! Everything is computed in exact arithmetic. Graphs are given by their
//! parameters and never materialized unless an operation genuinely needs to
//! enumerate vertices, so the necessary-condition checks run unchanged on
//! graphs with astronomically many vertices.

pub mod codes;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod fourier;
pub mod graphs;
pub mod spectra;

pub use error::{Error, Result};
pub use exact::ScaledRational;
pub use graphs::{GraphSpec, Vertex, DEFAULT_ENUM_BUDGET};
