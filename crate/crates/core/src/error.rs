use thiserror::Error;

/// Everything that can go wrong while building or checking a structure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cover relation contains a cycle through element {0}")]
    CycleDetected(u32),
    #[error("index {index} out of range for {n} elements")]
    IndexOutOfRange { index: u32, n: usize },
    #[error("pair ({0}, {0}) is not a cover")]
    SelfCover(u32),
    #[error("not a lattice: elements {x} and {y} have no unique {kind}")]
    NotALattice { x: u32, y: u32, kind: &'static str },
    #[error("poset is not bounded")]
    Unbounded,
    #[error("poset is empty")]
    Empty,
    #[error("gluing map is not an order isomorphism between filter and ideal: {0}")]
    IsoInvalid(String),
    #[error("summand {0} has fewer than two elements")]
    PartTooSmall(usize),
    #[error("[{lo}, {hi}] is not a prime interval")]
    NotPrime { lo: u32, hi: u32 },
    #[error("({0}, {1}) is not a covering pair")]
    NotACover(u32, u32),
    #[error("elements {0} and {1} are not comparable in the required direction")]
    NotComparable(u32, u32),
    #[error("input of size {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("search exceeded its node budget of {0}")]
    BudgetExceeded(u64),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("elements do not generate the group")]
    NotGenerating,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("a gadget from {0} to {1} is already present")]
    DuplicateGadget(u32, u32),
    #[error("interval of {0} is no longer prime after splicing")]
    NotPrimeAfterSplice(u32),
    #[error("no gadget found with at most {0} extra elements")]
    NotFound(usize),
    #[error("insertion precondition fails at [{lo}, {hi}]")]
    PreconditionFailed { lo: u32, hi: u32 },
    #[error("arrows do not generate the quasiorder")]
    GenerationFailure,
    #[error("invalid quasiorder: {0}")]
    InvalidQuasiOrder(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
