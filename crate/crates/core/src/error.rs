use thiserror::Error;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parameters outside the regime of `{what}`: {reason}")]
    Regime { what: &'static str, reason: String },

    #[error("missing input `{0}` required by the requested constants")]
    MissingInput(&'static str),

    #[error("no classification branch matched (m={m}, p={p}, b={b}, beta={beta}, alpha={alpha})")]
    Unclassified {
        m: f64,
        p: f64,
        b: f64,
        beta: f64,
        alpha: f64,
    },

    #[error("time {t} is outside the validity window [0, {limit})")]
    OutOfTime { t: f64, limit: f64 },

    #[error("array of length {len} is too short (need at least {min})")]
    TooShort { len: usize, min: usize },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("non-finite value at node {node} (t = {t})")]
    Instability { node: usize, t: f64 },

    #[error("bad seed: {0}")]
    BadSeed(String),

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("requested value {requested} beyond the tabulated range {available}")]
    OutOfRange { requested: f64, available: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
