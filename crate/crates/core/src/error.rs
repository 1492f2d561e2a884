use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
///
/// All variants describe invalid input or a violated precondition; the CLI
/// maps them to the "validation error" exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("scalar modes mixed: {0}")]
    ModeMix(String),
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("frame is rank deficient (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },
    #[error("subspace is not Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("matrix is not symplectic")]
    NotSymplectic,
    #[error("symplectic form is degenerate or not skew")]
    InvalidSymplecticForm,
    #[error("angle {0} outside [0, pi)")]
    AngleOutOfRange(String),
    #[error("path is not closed")]
    OpenPath,
    #[error("path undersampled: argument jump {jump:.4} rad at step {step}")]
    Undersampled { step: usize, jump: f64 },
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("inputs are not simultaneously diagonal: {0}")]
    NotDiagonal(String),
    #[error("group context mismatch")]
    ContextMismatch,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("missing bordism table entry for degree {0}")]
    MissingTableEntry(usize),
    #[error("degree {0} beyond supplied homology")]
    DegreeBeyondHomology(usize),
    #[error("degenerate contact form")]
    DegenerateContact,
    #[error("missing tangent frames: {0}")]
    MissingFrames(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
