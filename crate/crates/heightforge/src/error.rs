//! Error values shared across the crate.

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while constructing fields, decomposing
/// places or evaluating heights and functionals.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Place decomposition above `p` is outside the supported class:
    /// either `Z[θ]` is not `p`-maximal, or a repeated factor could not be
    /// certified irreducible by a single-sloped Newton polygon.
    #[error("unsupported prime {p}: {reason}")]
    UnsupportedPrime { p: BigInt, reason: String },

    /// A computation could not reach the requested radius (or a valuation
    /// could not stabilize) within the precision cap.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// The auxiliary polynomial vanishes at the point, so the quotient-norm
    /// identity does not apply.
    #[error("auxiliary polynomial vanishes at the point")]
    TVanishesAtPoint,

    /// `W ∩ ker Ψ ≠ {0}`: the determinant of `Ψ` applied to the basis is 0.
    #[error("kernel of the linear map meets the subspace")]
    KernelMeetsSubspace,

    /// The supplied vectors do not span a subspace of the stated dimension.
    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    /// Division by zero, inversion of zero, or a zero input where a nonzero
    /// value is required.
    #[error("zero input: {0}")]
    ZeroInput(String),

    /// A ball operation received an enclosure it cannot handle (divisor
    /// containing zero, rational power of an enclosure touching ≤ 0).
    #[error("invalid enclosure: {0}")]
    InvalidEnclosure(String),

    /// The defining polynomial was rejected.
    #[error("invalid defining polynomial: {0}")]
    InvalidDefiningPolynomial(String),

    /// Root isolation requires squarefree input.
    #[error("polynomial is not squarefree")]
    NotSquarefree,

    /// Probabilistic irreducibility certification did not succeed.
    #[error("irreducibility not certified")]
    IrreducibilityNotCertified,

    /// Mismatched dimensions, degrees or variable counts.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Archimedean sup-norm estimation supports at most 3 variables.
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    /// The point is not on the variety `X(F)`.
    #[error("point is not on the variety: F(a) != 0")]
    PointNotOnVariety,

    /// The point lies on `X(T)`, so the congruence bound does not apply.
    #[error("bound inapplicable: point lies on the auxiliary variety X(T)")]
    PointOnAuxiliaryVariety,

    /// The congruence `T ≡ F mod m` does not hold.
    #[error("congruence failed: {0}")]
    CongruenceFailed(String),

    /// Elements from different field presentations were mixed.
    #[error("field mismatch: all inputs must live in one presented field")]
    FieldMismatch,
}

impl Error {
    /// Stable machine-readable code, used by the CLI and JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedPrime { .. } => "UNSUPPORTED_PRIME",
            Error::PrecisionExhausted(_) => "PRECISION_EXHAUSTED",
            Error::TVanishesAtPoint => "T_VANISHES",
            Error::KernelMeetsSubspace => "KERNEL_MEETS_SUBSPACE",
            Error::DependentBasis => "DEPENDENT_BASIS",
            Error::ZeroInput(_) => "ZERO_INPUT",
            Error::InvalidEnclosure(_) => "INVALID_ENCLOSURE",
            Error::InvalidDefiningPolynomial(_) => "INVALID_DEFINING_POLYNOMIAL",
            Error::NotSquarefree => "NOT_SQUAREFREE",
            Error::IrreducibilityNotCertified => "IRREDUCIBILITY_NOT_CERTIFIED",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::UnsupportedDimension(_) => "UNSUPPORTED_DIMENSION",
            Error::PointNotOnVariety => "POINT_NOT_ON_VARIETY",
            Error::PointOnAuxiliaryVariety => "POINT_ON_AUXILIARY_VARIETY",
            Error::CongruenceFailed(_) => "CONGRUENCE_FAILED",
            Error::FieldMismatch => "FIELD_MISMATCH",
        }
    }

    /// `true` for errors that reflect bad or unsupported input rather than a
    /// computation that ran and failed.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::PrecisionExhausted(_))
    }
}
