//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by geometric constructions, solvers and input handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty support")]
    EmptySupport,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("covector is unbounded below on the polyhedron")]
    Unbounded,
    #[error("Newton polyhedron is not convenient")]
    NotConvenient,
    #[error("projection of the support along the coordinates {subspace:?} is not convenient")]
    NotConvenientProjection { subspace: Vec<usize> },
    #[error("faces lie at equal level, no scaled asymptotic exists")]
    EqualLevel,
    #[error("polyhedron of f is not contained in polyhedron of g")]
    NotEmbedded,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid daughter sub-polytope: {0}")]
    InvalidDaughter(String),
    #[error("polytopes are not semi-interlaced")]
    NotSemiInterlaced,
    #[error("complement of the region is unbounded")]
    UnboundedComplement,
    #[error("Newton number is zero, no positive jump exists")]
    ZeroNewtonNumber,
    #[error("not a face of the polytope: {0}")]
    NotAFace(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("verification failed: formula total {formula}, classical difference {classical}")]
    Verification { formula: String, classical: String },
}

pub type Result<T> = std::result::Result<T, Error>;
