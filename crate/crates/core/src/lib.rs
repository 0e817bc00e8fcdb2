//! Certified cycle-spectrum engine for graphs with `δ(G) ≥ α̃(G)`.
//!
//! [`bip_indep`] computes the bipartite independence number α̃ exactly,
//! [`engine`] turns the rotation/extension argument into an algorithm that
//! outputs a cycle of every length `3..=n` (or the balanced complete bipartite
//! exception), and [`oracle`] provides brute-force ground truth. Every object
//! the engine emits is checked by a verifier in [`structures`] or
//! [`certificate`].

pub mod bip_indep;
pub mod bitset;
pub mod certificate;
pub mod engine;
pub mod graph;
pub mod oracle;
pub mod structures;

/// Vertices are dense indices `0..n`.
pub type Vertex = usize;

pub use bip_indep::{
    alpha_tilde, holds_property, independence_number, BipWitness, PropertyCheck, ViolatingPair,
};
pub use bitset::{VertexSet, MAX_VERTICES};
pub use graph::{Graph, GraphError};
pub use structures::{Switch, TaggedCycle};
