use thiserror::Error;

/// Error type shared by every analysis in this crate.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("numerical routine failed: {0}")]
    NumericalFailure(String),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("matrix is not normal (commutator norm {0:.3e})")]
    NotNormal(f64),

    #[error("matrix is not unitary (defect {0:.3e})")]
    NotUnitary(f64),

    #[error("entries must be finite")]
    NonFiniteEntries,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("central projection selects no blocks")]
    EmptySelection,

    #[error("block ideal must kill a nonempty proper subset of blocks")]
    InvalidIdeal,

    #[error("symbol vanishes on the unit circle (|p| = {modulus:.3e} at angle {angle:.6})")]
    SymbolVanishesOnCircle { modulus: f64, angle: f64 },

    #[error("element is not a contraction (norm {0:.9})")]
    NotAContraction(f64),

    #[error("certificate construction failed: {0}")]
    CertificateConstructionFailed(String),

    #[error("coefficients do not sum to the identity (defect {0:.3e})")]
    CoefficientsNotPartitionOfUnity(f64),

    #[error("coefficient {index} is not certified invertible: {reason}")]
    CoefficientNotInvertible { index: usize, reason: String },

    #[error("combination does not reproduce the element (residual {0:.3e})")]
    SumMismatch(f64),

    #[error("block {0} payload is not an isometry")]
    NotIsometry(usize),

    #[error("unitary part not certified finite-dimensional (windows {0} and {1} disagree or fail checks)")]
    KNotStabilized(usize, usize),

    #[error("similarity precondition failed: {0}")]
    SimilarityMismatch(String),

    #[error("analysis window {0} too small: {1}")]
    WindowTooSmall(usize, String),

    #[error("input is not a projection (residual {0:.3e})")]
    NotAProjection(f64),

    #[error("shift-block projection outside the finite/cofinite class")]
    UnsupportedShiftProjection,

    #[error("shift-block element outside the supported subclass: {0}")]
    UnsupportedShiftElement(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
