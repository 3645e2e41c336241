use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{value} has no inverse modulo {p}")]
    NotInvertible { value: u64, p: u64 },

    #[error("residue {value} out of range for p = {p}")]
    ResidueOutOfRange { value: u64, p: u64 },

    #[error("subgroup order {order} does not divide p - 1 = {p_minus_1}")]
    NotADivisor { order: u64, p_minus_1: u64 },

    #[error("signal length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },

    #[error("signal entry {index} is not finite")]
    NonFinite { index: usize },

    #[error("window signal is zero")]
    ZeroWindow,

    #[error("{value} lies in the subgroup or is zero; gamma is defined only off the subgroup")]
    GammaOutsideDomain { value: u64 },

    #[error("index set is not of the form M x Z_p")]
    NotSubgroupProduct,

    #[error("index set contains duplicate element ({m}, {k})")]
    DuplicateIndex { m: u64, k: u64 },

    #[error("system is not a frame: eigenvalue {eigenvalue:e} is at or below tolerance {tolerance:e}")]
    NotAFrame { eigenvalue: f64, tolerance: f64 },

    #[error("reconstruction residual {residual:e} exceeds {tolerance:e}")]
    ReconstructionResidual { residual: f64, tolerance: f64 },

    #[error("tightness tests disagree: spectral flatness says {flatness}, coset condition says {coset_condition}")]
    InconsistentTightness { flatness: bool, coset_condition: bool },

    #[error("matrix is not Hermitian: |H[{row},{col}] - conj(H[{col},{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
