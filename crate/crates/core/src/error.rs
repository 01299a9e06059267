//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension out of range: {0}")]
    Dimension(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("extrapolation failed: {message} (series carried, {} points)", series.len())]
    Extrapolation {
        message: String,
        /// The raw (x, value, stderr) series the caller handed in.
        series: Vec<(f64, f64, f64)>,
    },

    #[error("lookup failed: {0}")]
    Lookup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("validation failed:\n{0}")]
    Validation(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("chart degeneracy: {0}")]
    ChartDegeneracy(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tail divergence on stratum {stratum} for k = {k} (annulus ratio {ratio})")]
    Divergence { stratum: String, k: usize, ratio: f64 },

    #[error("unsupported slice codimension {codim} on space {space}: {detail}")]
    UnsupportedSlice { space: String, codim: usize, detail: String },

    #[error("non-stabilizing delta ladder: {0}")]
    Stabilization(String),

    #[error("incomplete critical point search: {0}")]
    IncompleteSearch(String),

    #[error("range error: {0}")]
    Range(String),
}
