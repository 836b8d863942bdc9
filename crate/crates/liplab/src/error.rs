//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad curve, point outside a domain, empty set, ...
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A function produced a non-finite value where a finite one was required.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// An iterative scheme ran out of budget. Carries the last two estimates
    /// so the caller can judge how far apart they still were.
    #[error("{context}: no convergence (last estimate {last}, previous {previous})")]
    Convergence {
        context: String,
        last: f64,
        previous: f64,
    },

    /// The interior grid has no path between the two requested nodes.
    #[error("no grid path between {from} and {to}")]
    NoPath { from: String, to: String },

    /// A point sits too close to the boundary for the requested operation
    /// (the weight blows up inside the first grid cell).
    #[error("point {point} is within one grid cell of the boundary (distance {distance})")]
    NearBoundary { point: String, distance: f64 },

    /// A curve entered the shell of width `shell` around the boundary, where
    /// the boundary-distance weight is no longer trustworthy.
    #[error("curve touches the boundary shell: minimum boundary distance {min_distance} < {shell}")]
    BoundaryShell { min_distance: f64, shell: f64 },

    /// The majorant vanished at a positive argument, so a Hölder quotient is undefined.
    #[error("majorant degenerate: phi({argument}) = 0 for distinct points")]
    MajorantDegeneracy { argument: f64 },

    /// A theorem check was invoked without its hypothesis certified.
    #[error("precondition not satisfied: {0}")]
    Precondition(String),

    /// Bad configuration file or CLI usage.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
