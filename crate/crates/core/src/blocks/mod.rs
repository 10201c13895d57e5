//! The rigid simple block tower.

mod certify;
mod labels;
pub mod substitutes;
mod tower;

pub use certify::{certify_block, BlockSpec, SelfDualMode};
pub use labels::{Label, LabeledLattice};
pub use substitutes::{anchor_block, edge_block, edge_block_dual, middle_block};
pub use tower::{
    atom_count, build_S, build_S0, build_T, build_T_dual, classify_edge, pairwise_nonisomorphic, verify_S, EdgeKind,
};
