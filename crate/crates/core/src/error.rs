//! Crate-wide error type.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("graph is not connected")]
    DisconnectedGraph,

    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),

    #[error("edge `{a}`-`{b}` has nonpositive weight {weight}")]
    NonpositiveWeight { a: String, b: String, weight: f64 },

    #[error("edge `{a}`-`{b}` listed twice with different weights")]
    DuplicateEdgeConflict { a: String, b: String },

    #[error("graph needs at least one edge")]
    NoEdges,

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("bad family parameters: {0}")]
    BadParams(String),

    #[error("family `{0}` does not define an exhaustion sequence")]
    BadFamily(String),

    #[error("measure mass at index {0} is not positive")]
    NonpositiveMass(usize),

    #[error("measure masses sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not positive definite (pivot {pivot:e} at index {index})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("dimension {got} exceeds the oracle limit {limit}")]
    DimensionTooLarge { got: usize, limit: usize },

    #[error("objective returned NaN")]
    ObjectiveNaN,

    #[error("Omega must be a nonempty proper vertex subset")]
    OmegaNotProper,

    #[error("eigenvalue index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("exact identity violated: lhs {lhs} vs rhs {rhs} (tol {tol:e})")]
    InternalIdentityViolation { lhs: f64, rhs: f64, tol: f64 },

    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),

    #[error("bad F: {0}")]
    BadF(String),
}

pub type Result<T> = core::result::Result<T, Error>;
