//! Generalised pattern matching over an explicit matching relationship.
//!
//! A text over `Σ_T` and a pattern over `Σ_P` are compared position by
//! position through a bipartite matching relationship `M ⊆ Σ_T × Σ_P`.
//! The crate implements, next to the quadratic brute-force oracle:
//!
//! * Monte Carlo reporting and approximate counting parameterised by the
//!   maximum degree `D` and the edge count `S` of `M` ([`randomized`]),
//! * deterministic approximate counting built on data-dependent
//!   superimposed codes ([`deterministic`], [`superimposed`],
//!   [`discrepancy`]),
//! * an exact deterministic algorithm parameterised by the number of
//!   character intervals `I` ([`intervals`]),
//! * the binary don't-care convolution primitive all of them share
//!   ([`convolution`]).
//!
//! Alignments follow the 1-based convention `i ∈ [n-m+1]`: alignment `i`
//! places the pattern under `T[i, i+m-1]`. Tables store the value for
//! alignment `i` at index `i-1`.

pub mod convolution;
pub mod deterministic;
pub mod discrepancy;
mod error;
pub mod files;
pub mod intervals;
pub mod model;
pub mod randomized;
mod ratio;
pub mod rng;
pub mod superimposed;

pub use error::{Error, Result};
pub use ratio::Ratio;
