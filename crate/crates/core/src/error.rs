use thiserror::Error;

/// Errors raised by the ring, semigroup and series backends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("carrier of size {requested} exceeds the cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("ring axiom violated: {axiom} at {witness:?}")]
    AxiomViolation {
        axiom: &'static str,
        witness: Vec<usize>,
    },

    #[error("not a homomorphism: {reason}, witness ({}, {})", .witness.0, .witness.1)]
    NotAHomomorphism {
        reason: &'static str,
        witness: (usize, usize),
    },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("ring is not local: {maximal_ideals} maximal ideals found")]
    NotLocal { maximal_ideals: usize },

    #[error("the zero ring has empty spectrum")]
    EmptySpectrum,

    #[error("witness failure: {0}")]
    WitnessFailure(String),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
