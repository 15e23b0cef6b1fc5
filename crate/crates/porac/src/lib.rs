//! Sequential parity-oblivious random-access-code (PORAC) games with unsharp
//! measurements.
//!
//! Alice encodes an n-bit string into a qubit (or two-qubit) state and relays
//! it through a chain of observers, each of whom performs an unsharp dichotomic
//! measurement (POVM `M = (I ± λB)/2`) to guess a randomly chosen bit of the
//! string. The parity-oblivious constraint forbids the message from carrying
//! any multi-bit parity information, which caps classical strategies at
//! `(n+1)/2n` while quantum strategies do better — and the amount by which each
//! observer beats the classical bound certifies their unsharpness parameter λ
//! in a semi-device-independent way.
//!
//! Module layout:
//! - [`qalgebra`] — small dense complex matrices, Bloch vectors, observables,
//!   POVM elements and unsharp Kraus instruments
//! - [`racgame`] — game specs, parity sets, PO checks, classical brute-force
//!   bounds and the quantum success evaluator
//! - [`seqsim`] — exact sequential-chain simulation plus canonical optimal
//!   ensembles and measurement settings
//! - [`closedform`] — analytic optimal success probabilities, trade-off
//!   curves and minimal-λ cascades
//! - [`certify`] — turning observed success probabilities into certified λ
//!   points and intervals
//! - [`optsearch`] — derivative-free multi-restart search verifying that the
//!   analytic optima are attained and never exceeded
//! - [`report`] — reproducible JSON/CSV report plumbing

pub mod certify;
pub mod closedform;
pub mod optsearch;
pub mod qalgebra;
pub mod racgame;
pub mod report;
pub mod seqsim;

pub use closedform::Scenario;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("invalid observable: {0}")]
    InvalidObservable(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("witness not on the optimal curve: residual {residual:.3e} exceeds tolerance {tol:.1e}")]
    OffCurve { residual: f64, tol: f64 },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
