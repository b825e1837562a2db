use thiserror::Error;

/// Errors raised by coverkit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground-set mismatch: {0}")]
    GroundMismatch(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("right operand of cut-composition is not lower")]
    NotLower,
    #[error("relation is not an endorelation")]
    NotEndorelation,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid order relation: {0}")]
    InvalidOrder(String),
    #[error("invalid convexity: {0}")]
    InvalidConvexity(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
