use thiserror::Error;

/// Errors raised across the library. The `Display` form names the module
/// that raised the error so the CLI can print it as a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("poset: duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("poset: unknown element `{0}`")]
    UnknownElement(String),
    #[error("poset: cycle detected, `{0}` <= `{1}` and `{1}` <= `{0}`")]
    CycleDetected(String, String),
    #[error("poset: sequence is not a permutation of the poset's elements")]
    NotAPermutation,
    #[error("poset: sequence is not a linear extension")]
    NotALinearExtension,
    #[error("realizer: the two linear extensions do not realize the poset")]
    InvalidRealizer,
    #[error("{0}: size limit exceeded ({1} > {2})")]
    SizeLimitExceeded(&'static str, u128, u128),
    #[error("birkhoff: set is not a downset of this lattice")]
    UnknownDownset,
    #[error("birkhoff: set is not an antichain")]
    NotAnAntichain,
    #[error("valuation: table does not match the lattice or poset ({0})")]
    DomainMismatch(String),
    #[error("valuation: valuation is not bijective")]
    NotBijective,
    #[error("valuation: table violates the valuation axioms")]
    NotAValuation,
    #[error("valuation: input collection is empty")]
    EmptyInput,
    #[error("valuation: arithmetic overflow while summing weights")]
    Overflow,
    #[error("realizer: valuation is not complete")]
    NotComplete,
    #[error("realizer: two elements share a cone value")]
    DuplicateConeValue,
    #[error("realizer: current downset is already the top element")]
    AtTop,
    #[error("realizer: successor step did not raise the value by one ({0})")]
    SuccessorMismatch(String),
    #[error("io: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
