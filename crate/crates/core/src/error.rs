//! Crate-wide error type for structural failures.
//!
//! Law violations discovered by verification are not errors; they come back
//! as certificates or reports. Errors are reserved for requests that are
//! malformed before any mathematics happens (shape mismatches, composing
//! morphisms whose endpoints disagree, invalid inputs).

use thiserror::Error;

use crate::algebra::MorphismCertificate;
use crate::states::StateCertificate;

#[derive(Debug, Error)]
pub enum Error {
    #[error("block dimensions must be a non-empty list of positive integers")]
    InvalidBlockDims,

    #[error("element blocks do not match the algebra's block dimensions")]
    BlockShapeMismatch,

    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientLength { expected: usize, found: usize },

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("operation requires a single-block algebra, found {blocks} blocks")]
    NotSingleBlock { blocks: usize },

    #[error("morphism matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MorphismShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("morphism endpoints do not match the requested operation")]
    EndpointMismatch,

    #[error("morphism has not been verified")]
    UnverifiedMorphism,

    #[error("morphism fails the star-homomorphism laws (max violation {max_violation:.3e})", max_violation = .0.max_violation)]
    MorphismCheckFailed(Box<MorphismCertificate>),

    #[error("matrix is not unitary (violation {violation:.3e})")]
    NotUnitary { violation: f64 },

    #[error("state fails validity checks (max violation {max_violation:.3e})", max_violation = .0.max_violation)]
    InvalidState(Box<StateCertificate>),

    #[error("density matrix fails validity checks: {reason} (violation {violation:.3e})")]
    InvalidDensityMatrix {
        reason: &'static str,
        violation: f64,
    },

    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("states disagree where agreement is required (coefficient distance {distance:.3e})")]
    StateMismatch { distance: f64 },

    #[error("point vector is not normalized (deviation {violation:.3e})")]
    PointNotNormalized { violation: f64 },

    #[error("representation does not send the unit to the identity (violation {violation:.3e})")]
    UnitImage { violation: f64 },

    #[error("representation is not cyclic (orbit rank {rank} of dimension {dim})")]
    NotCyclic { rank: usize, dim: usize },

    #[error("unknown law id {law_id:?}")]
    UnknownLaw { law_id: String },

    #[error("input document is invalid: {reason}")]
    Schema { reason: String },
}
