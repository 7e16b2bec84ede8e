use thiserror::Error;

/// Errors surfaced by the symbolic engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u8, n: u8 },

    #[error("dimension must be even and within 2..=8, got {0}")]
    BadDimension(u8),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u8, u8),

    #[error("derivative order above two is not supported")]
    UnsupportedOrder,

    #[error("symbol cannot be differentiated: {0}")]
    UnsupportedDerivative(String),

    #[error("negative exponent on non-invertible symbol {0}")]
    NegativeExponent(String),

    #[error("substitution requires nonnegative exponent on {0}")]
    InvalidSubstitution(String),

    #[error("grade {grade} outside 0..={n}")]
    GradeOutOfRange { grade: u8, n: u8 },

    #[error("residue density needs n >= 4, got n={0}")]
    ResidueOrder(u8),

    #[error("a4 density implemented only for scalar and two-form perturbations")]
    UnsupportedA4,

    #[error("rational symbol does not decay (numerator degree {num_deg}, pole order {poles})")]
    DecayViolation { num_deg: usize, poles: usize },

    #[error("insufficient decay for integration (need numerator degree <= pole order - 2)")]
    IntegrationDecay,

    #[error("missing boundary fixture `{0}`")]
    MissingFixture(String),

    #[error("fixture parse error at line {line}: {msg}")]
    FixtureParse { line: usize, msg: String },

    #[error("product would be quadratic in the abstract form factor")]
    NonlinearPsi,

    #[error("numeric evaluation has no value for symbol {0}")]
    MissingValue(String),

    #[error("expression is not a combination of the recognised Laplacian arguments: {0}")]
    LapPattern(String),

    #[error("unsupported perturbation kind for this operation: {0}")]
    UnsupportedSpec(String),
}
