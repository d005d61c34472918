use thiserror::Error;

/// Errors shared by all engine modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown base dimension '{symbol}' in class '{class}'")]
    UnknownBase { class: String, symbol: String },

    #[error("dimension classes differ: '{left}' vs '{right}'")]
    ClassMismatch { left: String, right: String },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("exponent arithmetic overflow")]
    ExponentOverflow,

    #[error("scale factor must be positive and finite, got {value}")]
    NonPositiveScale { value: f64 },

    #[error("unknown unit system '{name}'")]
    UnknownSystem { name: String },

    #[error("unit system '{name}' is already registered")]
    DuplicateSystem { name: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    #[error("division by a quantity measuring zero")]
    DivisionByZero,

    #[error("dimension exponent {exponent} is not divisible by root degree {degree}")]
    NonIntegralRoot { exponent: i64, degree: i64 },

    #[error("cannot take even root of negative value {value}")]
    NegativeRadicand { value: f64 },

    #[error("evidence does not witness the claimed dependence")]
    InvalidEvidence,

    #[error("dimension is not dependent on the basis; unreachable bases: {unreachable:?}")]
    NotDependent { unreachable: Vec<String> },

    #[error("basis dimensions are not independent")]
    NotIndependentBasis,

    #[error("no value given for '{name}'")]
    MissingValue { name: String },

    #[error("declared dimension of '{name}' does not match the supplied value")]
    DimMismatchWithDeclared { name: String },

    #[error("unknown equation '{name}'")]
    UnknownEquation { name: String },

    #[error("{line}:{col}: {message}")]
    Parse { line: u32, col: u32, message: String },

    #[error("{line}:{col}: undeclared name '{name}'")]
    UndeclaredName { line: u32, col: u32, name: String },

    #[error("{line}:{col}: duplicate name '{name}'")]
    DuplicateName { line: u32, col: u32, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
