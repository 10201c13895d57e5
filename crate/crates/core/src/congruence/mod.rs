//! Principal congruences, `Princ L`, simplicity, insertion preconditions and
//! quasi-colourings.

mod closure;
mod engine;
pub mod oracle;
mod partition;
pub mod quasi;

pub use closure::{congruence_generated, principal_congruence};
pub use engine::{check_insertion_precondition, is_simple, principal_poset, CongruenceEngine, PrincipalPoset};
pub use oracle::{all_congruences, all_congruences_bounded, least_containing, ORACLE_BOUND};
pub use partition::Partition;
pub use quasi::{check_quasi_coloring, quotient_order, Coloring, ColoringReport, ColoringViolation, QuasiOrder};
