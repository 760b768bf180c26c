use thiserror::Error;

use crate::construct::DecisionReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("monomial of degree {degree} at position {position}; only quadratics are supported")]
    Degree { position: usize, degree: u32 },

    #[error("polynomial has no terms")]
    EmptyPolynomial,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("constant term {0} is not positive; a monic pencil needs f(0) > 0")]
    NonPositiveConstant(f64),

    #[error("constant term is zero")]
    ZeroConstantTerm,

    #[error("polynomial is not monic: constant term is {0}, expected 1")]
    NotMonic(f64),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("no size-2 representation exists (verdict {:?}, Schur rank {})", .0.verdict, .0.schur_rank)]
    NoSize2Representation(Box<DecisionReport>),

    #[error("no diagonal representation exists (Schur complement NSD: {schur_nsd}, rank {schur_rank})")]
    NoDiagonalRepresentation { schur_nsd: bool, schur_rank: usize },

    #[error("quadratic part is not negative semidefinite")]
    ANotNsd,

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("cone witness failed its check: {0}")]
    WitnessCheckFailed(String),

    #[error("factors have different Gram matrices (residual {residual:e})")]
    GramMismatch { residual: f64 },

    #[error("SU(2) parameters are not unit norm (a²+b²+c²+d² = {norm_sq})")]
    NotUnitNorm { norm_sq: f64 },

    #[error("orthogonal matrix has determinant {det}; no SU(2) preimage")]
    NotRotation { det: f64 },

    #[error("matrix is not orthogonal (residual {residual:e})")]
    NotOrthogonal { residual: f64 },

    #[error("pencil does not represent the polynomial")]
    VerificationMismatch,
}
