//! Crate-wide error type.
//!
//! Loader errors are deliberately fine-grained (a malformed input file is
//! rejected with a code naming the first violated property) so that callers
//! and the CLI can report something more useful than "bad file".

/// Every fallible operation in this crate returns this error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("empty input")]
    EmptyInput,

    #[error("schema index must be at least 1")]
    ZeroSchemaIndex,

    #[error("world {world} out of range for frame of size {size}")]
    WorldOutOfRange { world: usize, size: usize },

    #[error("not a partial order: {0}")]
    NotPartialOrder(String),

    #[error("frame is not rooted: {0}")]
    NotRooted(String),

    #[error("not a lattice: {0}")]
    NotLattice(String),

    #[error("lattice is not distributive: {0}")]
    NotDistributive(String),

    #[error("missing residual: {0}")]
    MissingResidual(String),

    #[error("declared bounds do not match the order: {0}")]
    BadBounds(String),

    #[error("no value assigned to variable p{0}")]
    UnassignedVariable(u32),

    #[error("valuation of p{0} is not upward closed")]
    ValuationNotUpClosed(u32),

    #[error("evaluation budget of {limit} exhausted")]
    BudgetExhausted { limit: u64 },

    #[error("bottom element is not meet-irreducible")]
    ZeroNotMeetIrreducible,

    #[error("not a countermodel: {0}")]
    NotCountermodel(String),

    #[error("not an antichain: {0}")]
    NotAntichain(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
