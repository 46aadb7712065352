use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {size} exceeds the configured cap of {cap}")]
    FieldTooLarge { size: u64, cap: u64 },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field elements are linearly dependent over the prime field")]
    DependentBasis,
    #[error("basis has {got} elements, field degree is {expected}")]
    BasisLength { expected: usize, got: usize },
    #[error("no multiplier w relates the vertical basis to the dual of the horizontal basis")]
    NoSuchW,
    #[error("linear map is singular")]
    SingularMap,
    #[error("linear map has determinant {0}, expected 1")]
    NonUnitDeterminant(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("striation {striation} probabilities sum to {sum}, deviation exceeds tolerance {tolerance}")]
    InconsistentProbabilities { striation: usize, sum: f64, tolerance: f64 },
    #[error("N = {size} exceeds the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("operation requires {expected}, got N = {got}")]
    WrongField { expected: &'static str, got: usize },
    #[error("invalid ray choice: {0}")]
    InvalidChoice(String),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("{0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
