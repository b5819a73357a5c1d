use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coin amplitudes not normalized: |alpha|^2 + |beta|^2 = {norm_sq}")]
    Normalization { norm_sq: f64 },

    #[error("position {x0} outside lattice of {l} sites")]
    Bounds { x0: i64, l: usize },

    #[error("lattice size must be a positive odd integer, got {l}")]
    Lattice { l: usize },

    #[error("lattice of {l} sites cannot hold a {n}-step light cone; needs at least {}", 2 * n + 3)]
    LightCone { l: usize, n: usize },

    #[error("invalid walk spec: {0}")]
    Spec(String),

    #[error("{0}")]
    Precondition(String),

    #[error("destructive interference: superposed state norm {norm:e} below threshold")]
    DestructiveInterference { norm: f64 },

    #[error("degenerate state: vanishing norm")]
    DegenerateState,

    #[error("degenerate post-selection: outcome probability {prob:e} is zero")]
    DegeneratePostselection { prob: f64 },

    #[error("coin pair commutes (theta2 - theta1 = {delta} is a multiple of pi); use binomial_commuting_expand")]
    WrongRegime { delta: f64 },

    #[error("size budget exceeded: {0}")]
    Budget(String),

    #[error("invalid channel: {0}")]
    Channel(String),

    #[error("invalid density matrix: {0}")]
    Domain(String),

    #[error("dimension mismatch: {a} vs {b}")]
    DimMismatch { a: usize, b: usize },

    #[error("distribution not normalized: total probability {sum}")]
    UnnormalizedDistribution { sum: f64 },
}
