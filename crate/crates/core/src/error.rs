use thiserror::Error;

/// Errors raised by the solvers and their configuration layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CwfError {
    #[error("invalid basis index {index}: expected 1..={max}")]
    InvalidBasis { index: usize, max: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("surface overlap matrix is singular at p = {p}")]
    DegenerateSurface { p: f64 },

    #[error("match point p = {p} lies outside the mesh [{lo}, {hi}]")]
    MatchOutsideMesh { p: f64, lo: f64, hi: f64 },

    #[error("matching columns are rank deficient")]
    RankDeficient,

    #[error("no eigenvalue found: determinant keeps its sign on [{lo}, {hi}]")]
    NoEigenvalue { lo: f64, hi: f64 },

    #[error("pivot block is not invertible at mesh index {index}")]
    PivotFailure { index: usize },

    #[error("zero denominator in Rayleigh quotient")]
    ZeroNorm,

    #[error("empty CI sector for k = {k}")]
    EmptySector { k: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for CwfError {
    fn from(e: std::io::Error) -> Self {
        CwfError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CwfError>;
