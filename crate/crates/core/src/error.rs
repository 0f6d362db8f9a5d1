use thiserror::Error;

/// Errors raised by the numerical kernels, channel validation and bound formulas.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("eigenvalue {value:e} is below the clipping tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("trace {trace} is not 1")]
    NotNormalized { trace: f64 },

    #[error("vector norm {norm} is not 1")]
    NotUnitVector { norm: f64 },

    #[error("missing bipartite dimensions")]
    MissingDims,

    #[error("Kraus operators violate completeness: max |sum K^dagger K - I| = {defect:e}")]
    Incomplete { defect: f64 },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("no {0} certificate: the sign precondition fails")]
    NoCertificate(&'static str),

    #[error("invalid file: {0}")]
    Format(String),
}

pub type Result<T> = core::result::Result<T, Error>;
