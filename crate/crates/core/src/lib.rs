//! Modularity of binomial random graphs `G(n, p)`: sampling, exact and
//! heuristic modularity, the normalized-Laplacian spectral gap, Chernoff-type
//! concentration checks, minimum bisection, and closed-form bounds in `d = np`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod bisection;
pub mod bounds;
pub mod concentration;
mod error;
pub mod graph;
pub mod modularity;
mod partition;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{sample_gnp, EdgeCounts, Graph, VertexSubset};
pub use modularity::{Method, ModularityResult};
pub use partition::Partition;
