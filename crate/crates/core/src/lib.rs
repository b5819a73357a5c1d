//! Simulator for one-dimensional discrete-time quantum walks whose step
//! operators can be composed in a definite temporal order, the reversed
//! order, or a switch-controlled superposition of both, together with the
//! observables used to study them: position spread, trace-distance
//! revivals (BLP non-Markovianity), coin-position entanglement entropy,
//! and concurrence.
//!
//! The walker lives on a cyclic lattice of odd size `L`, with a two-level
//! coin steering a conditional shift. All evolution is exact dense complex
//! arithmetic in double precision; nothing is stochastic.

pub mod analysis;
pub mod channel;
pub mod commutator;
pub mod dense;
pub mod engine;
pub mod error;
pub mod observables;
pub mod oracle;
pub mod par;
pub mod sequence;
pub mod state;

pub use error::{Error, Result};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex64;

/// Norm threshold below which a superposed state counts as destructively
/// interfered away rather than renormalizable.
pub const DESTRUCTIVE_NORM_TOL: f64 = 1e-14;
