use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("seed component {index} ({value}) lies within 1e-12 of a degenerate logistic-map point")]
    DegenerateSeed { index: usize, value: f64 },

    #[error("seed component {index} ({value}) is outside [0, 1]")]
    SeedOutOfRange { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid bounds in dimension {index}: lower {lower} must be finite and below upper {upper}")]
    InvalidBounds { index: usize, lower: f64, upper: f64 },

    #[error("search space must have at least one dimension")]
    EmptySpace,

    #[error("{0}! overflows the supported factorial range")]
    FactorialOverflow(usize),

    #[error("search box collapsed to zero width in dimension {index} around {center}")]
    CollapsedBox { index: usize, center: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
