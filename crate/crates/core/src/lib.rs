//! Absorption-method toolkit for pseudo-random k-uniform hypergraphs.
//!
//! The crate is `no_std` and needs only `alloc`. It contains the hypergraph
//! representation, generators, pseudo-randomness audits, edge degeneracy,
//! the grid and path absorbers, flexible templates, the rooted embedder and
//! the three-stage pipeline that finds perfect matchings, F-factors and loose
//! Hamilton cycles together with independently checkable certificates.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod absorbers;
pub mod audit;
pub mod degeneracy;
pub mod embedder;
mod error;
pub mod generators;
pub mod hypergraph;
pub mod matching;
pub mod pipeline;
pub mod rng;
mod set;
pub mod templates;
pub mod verification;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, RootedMotif, Vertex};
pub use set::VertexSet;
pub use verification::Verification;
