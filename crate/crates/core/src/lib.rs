//! Finite lattices whose principal congruences and automorphisms are
//! prescribed: order and lattice primitives, congruence computation,
//! automorphism search, group and graph constructions, the rigid block
//! tower, and the end-to-end representation pipeline.

pub mod blocks;
pub mod congruence;
pub mod dot;
pub mod error;
pub mod graph;
pub mod order;
pub mod report;
pub mod representation;
pub mod symmetry;

pub use error::{Error, Result};
