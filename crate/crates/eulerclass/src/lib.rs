//! Exact generating functions for the generalized Euler and class numbers
//! s_{m,n}, together with the oracles that cross-check them: a numeric
//! Dirichlet-series evaluator, implied linear recurrences, and brute-force
//! enumeration of alternating signed permutations.

pub mod arith;
pub mod closedform;
pub mod dirichlet;
pub mod series;
pub mod signedperm;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
