//! Error taxonomy shared by the compute modules and the CLI.
//!
//! The CLI maps variants onto process exit codes: configuration problems
//! exit 2, semantic misuse (e.g. a compare run at an irrational time) exits
//! 3, and accuracy failures exit 4.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iteration failed to converge or produced a non-finite value.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Evaluation requested inside the exclusion radius of a cusp or jump.
    #[error("singularity proximity: x = {x} is within {dist:.3e} of a singular abscissa")]
    Singularity { x: f64, dist: f64 },

    /// A result failed a requested accuracy contract.
    #[error("accuracy error: {0}")]
    Accuracy(String),

    /// Malformed run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Operation invoked in a way that is well-formed but meaningless,
    /// e.g. comparing against a closed form at an irrational time.
    #[error("semantic misuse: {0}")]
    Semantic(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
