//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
///
/// Variants fall into three families: arithmetic failures (`Divisibility`,
/// `Field`, `Domain`, `Pole`), mathematical precondition violations
/// (`Singularity`, `NotFertile`, `Degree`, `NotGeneric`, `NotASolution`,
/// `CenterGap`, `Grade`, `Depth`), and `Internal`, which flags an identity
/// that the theory guarantees and whose failure falsifies the implementation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("exact division left a nonzero remainder")]
    Divisibility,
    #[error("non-invertible scalar where an inverse was required")]
    Field,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation at a pole of the denominator")]
    Pole,
    #[error("coincident interacting variables in a critical system")]
    Singularity,
    #[error("no polynomial solution of the expected degree: tuple is not fertile in direction {0}")]
    NotFertile(usize),
    #[error("direction {0} is not degree increasing here")]
    Degree(usize),
    #[error("tuple is not generic (multiple roots or consecutive common roots)")]
    NotGeneric,
    #[error("function does not solve the required Riccati equation")]
    NotASolution,
    #[error("no central element at grade {0}")]
    CenterGap(i64),
    #[error("grade error: {0}")]
    Grade(String),
    #[error("dressing depth {have} is insufficient, need at least {need}")]
    Depth { have: i64, need: i64 },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("internal identity violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end:
    /// 1 usage/format, 2 mathematical precondition, 3 falsified identity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::CenterGap(_) => 1,
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}
