use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variant names follow the operation contracts so that CLI diagnostics can
/// report them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NonPrimeCharacteristic: {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("InvalidDegree: extension degree must be at least 1")]
    InvalidDegree,
    #[error("InvalidModulus: {0}")]
    InvalidModulus(String),
    #[error("ReducibleModulus: modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("MissingConwayEntry: no Conway polynomial for GF({0}^{1})")]
    MissingConwayEntry(u32, u32),
    #[error("FieldTooLarge: GF({0}^{1}) exceeds the supported size")]
    FieldTooLarge(u32, u32),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("FieldMismatch: operands live in different fields")]
    FieldMismatch,
    #[error("NonDivisorDegree: {sub} does not divide {sup}")]
    NonDivisorDegree { sub: u32, sup: u32 },
    #[error("NotInSubfield")]
    NotInSubfield,
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("InvalidTower: s={s} does not divide r={r}")]
    InvalidTower { s: u32, r: u32 },
    #[error("IndexOutOfRange: index {index} exceeds {max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("EmptyDelta: exponent set is empty")]
    EmptyDelta,
    #[error("ExponentOutOfRange: exponent {exponent} not in [0, {max}]")]
    ExponentOutOfRange { exponent: u64, max: u64 },
    #[error("DeltaNotCosetClosed: exponent set is not a union of cyclotomic cosets")]
    DeltaNotCosetClosed,
    #[error("NotDualContaining: {0}")]
    NotDualContaining(String),
    #[error("BoundViolated: {0}")]
    BoundViolated(String),
    #[error("CertificationFailed: {0}")]
    CertificationFailed(String),
    #[error("InvalidDerivation: {0}")]
    InvalidDerivation(String),
    #[error("BudgetExceeded: needs {needed} codeword evaluations, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("ZeroDimensionalCode: code has no nonzero codeword")]
    ZeroDimensionalCode,
    #[error("MalformedFile: line {line}, column {column}: {message}")]
    MalformedFile {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("ConwayData: {0}")]
    ConwayData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
