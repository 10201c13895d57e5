//! Finite posets and lattices and the constructions used to assemble them.

pub mod construct;
pub mod enumerate;
mod lattice;
mod poset;

pub use construct::{
    glue_hall_dilworth, insert_into_prime_interval, insert_many, zero_one_sum, Built, GlueSpec,
    IntervalRef,
};
pub use lattice::{Lattice, LatticeJson};
pub use poset::{Poset, PosetJson};
