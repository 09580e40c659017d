use thiserror::Error;

use crate::ring::{Axiom, ElementId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring order {order} exceeds the configured cap {cap}")]
    CapExceeded { order: u128, cap: usize },

    #[error("modulus must be at least 1, got {0}")]
    InvalidModulus(u64),

    #[error("matrix dimension must be at least 1")]
    InvalidDimension,

    #[error("product needs at least one factor")]
    EmptyProduct,

    #[error("matrix base ring is not commutative: {a} * {b} != {b} * {a}")]
    NonCommutativeBase { a: ElementId, b: ElementId },

    #[error("malformed tables: {0}")]
    MalformedTables(String),

    #[error("axiom '{axiom}' violated at {witness:?}")]
    Axiom { axiom: Axiom, witness: Vec<ElementId> },

    #[error("element index {index} does not belong to a ring of order {order}")]
    ForeignElement { index: usize, order: usize },

    #[error("{0} is not a central projection")]
    NotCentralProjection(ElementId),

    #[error("ring is not a p.q.-Baer *-ring (witness {0})")]
    NotPqBaer(ElementId),

    #[error("central cover of {0} does not exist")]
    CoverAbsent(ElementId),

    #[error("{a} is not below {b} in Conrad's order")]
    NotBelow { a: ElementId, b: ElementId },

    #[error("Conrad's relation is not a partial order: {axiom} fails at {witness:?}")]
    NotPartialOrder { axiom: String, witness: Vec<ElementId> },

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("unknown theorem id '{0}'")]
    UnknownTheorem(String),

    #[error("invalid fuzz configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short stable tag used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::InvalidModulus(_) => "invalid-modulus",
            Error::InvalidDimension => "invalid-dimension",
            Error::EmptyProduct => "empty-product",
            Error::NonCommutativeBase { .. } => "non-commutative-base",
            Error::MalformedTables(_) => "malformed-tables",
            Error::Axiom { .. } => "axiom-violation",
            Error::ForeignElement { .. } => "foreign-element",
            Error::NotCentralProjection(_) => "not-central-projection",
            Error::NotPqBaer(_) => "not-pq-baer",
            Error::CoverAbsent(_) => "cover-absent",
            Error::NotBelow { .. } => "not-below",
            Error::NotPartialOrder { .. } => "not-partial-order",
            Error::Verification(_) => "verification-failed",
            Error::UnknownTheorem(_) => "unknown-theorem",
            Error::InvalidConfig(_) => "invalid-config",
            Error::Json(_) => "bad-json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
