use thiserror::Error;

/// Errors raised by geometry construction, shadow integration, kernel
/// assembly and spectrum extraction.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("domains overlap or nearly touch (min distance {min_distance:.3e} <= {limit:.3e})")]
    Overlap { min_distance: f64, limit: f64 },

    #[error("dimension mismatch: expected {expected}-D, found {found}-D")]
    Dimension { expected: usize, found: usize },

    #[error("quadrature did not converge (relative change {rel_change:.3e})")]
    Divergence { rel_change: f64 },

    #[error("kernel singularity: source and observer points coincide")]
    Singularity,

    #[error("block {rows}x{cols} exceeds the dense cap of {cap} entries")]
    Size { rows: usize, cols: usize, cap: usize },

    #[error("shape mismatch: expected length {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("SVD failed to converge: {0}")]
    Convergence(String),

    #[error("threshold {tau:.3e} is below the certified floor {floor:.3e}")]
    Floor { tau: f64, floor: f64 },

    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    #[error("spectrum carries no singular vectors for the requested group")]
    MissingVectors,

    #[error("no points fall inside the edge band of width {0}")]
    EmptyBand(f64),

    #[error("point sampling is not uniform along a line")]
    NonUniformSampling,

    #[error("unsupported shape for this operation: {0}")]
    UnsupportedShape(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
