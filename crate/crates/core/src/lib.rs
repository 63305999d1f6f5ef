//! Topological quantum computation with Fibonacci and Ising anyons.
//!
//! The crate is layered bottom-up: braid words and closures
//! ([`knot_theory`]), the exact bracket/Jones oracle ([`kauffman_oracle`]),
//! anyon F/R data and generator matrices ([`anyon_models`]), the path-model
//! representation ([`ajl_representation`]), gate compilation by exhaustive
//! weave search ([`braid_compiler`]), the qubit register ([`tqc_simulator`])
//! and the stochastic/exact Jones estimators built on it ([`ajl_quantum`]).

pub mod ajl_quantum;
pub mod ajl_representation;
pub mod anyon_models;
pub mod braid_compiler;
pub mod cli;
pub mod error;
pub mod kauffman_oracle;
pub mod knot_theory;
pub mod linalg;
pub mod tqc_simulator;

pub use error::{Error, Result};
