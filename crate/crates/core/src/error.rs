use std::fmt;

use serde::{Deserialize, Serialize};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Machine-readable reason attached to a rejected model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectReason {
    NonPrimitiveRay,
    NotFano,
    NonSimplicialCone,
    NotAnticanonical,
    NotEffective,
    InvalidTable,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::NonPrimitiveRay => "NON_PRIMITIVE_RAY",
            RejectReason::NotFano => "NOT_FANO",
            RejectReason::NonSimplicialCone => "NON_SIMPLICIAL_CONE",
            RejectReason::NotAnticanonical => "NOT_ANTICANONICAL",
            RejectReason::NotEffective => "NOT_EFFECTIVE",
            RejectReason::InvalidTable => "INVALID_TABLE",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("region is unbounded")]
    Unbounded,
    #[error("polytope is empty")]
    Empty,
    #[error("point outside the admissible domain: {0}")]
    Domain(String),
    #[error("unknown valuation `{0}`")]
    UnknownValuation(String),
    #[error("model rejected ({reason}): {message}")]
    Rejected { reason: RejectReason, message: String },
    #[error("invariant violated at {witness}: {message}")]
    InvariantViolation { witness: String, message: String },
}

impl Error {
    pub(crate) fn rejected(reason: RejectReason, message: impl Into<String>) -> Self {
        Error::Rejected {
            reason,
            message: message.into(),
        }
    }

    pub(crate) fn violation(witness: impl fmt::Display, message: impl Into<String>) -> Self {
        Error::InvariantViolation {
            witness: witness.to_string(),
            message: message.into(),
        }
    }
}
