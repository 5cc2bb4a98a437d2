//! Crate-wide error type.
//!
//! Evaluation routines return `Result<T>` whenever a documented failure mode
//! exists (branch restrictions, overflow, non-convergent series, exhausted
//! quadrature budgets). Plain domain violations on constructor arguments
//! panic instead; see the individual `new` functions.

/// Failure modes shared by the evaluation and sampling routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument was outside the documented domain of the operation.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// A series did not settle within its term budget. `partial` is the sum
    /// reached when the budget ran out.
    #[error("series did not converge after {terms} terms (partial sum {partial:e})")]
    NonConvergence { partial: f64, terms: usize },

    /// Adaptive quadrature exhausted its segment budget above the requested
    /// tolerance.
    #[error("quadrature stalled at error {achieved:e} (requested {requested:e})")]
    Quadrature { achieved: f64, requested: f64 },

    /// A value was computed but cancellation left it less accurate than
    /// requested.
    #[error("value {value:e} reached error {achieved:e} (requested {requested:e})")]
    Accuracy {
        value: f64,
        achieved: f64,
        requested: f64,
    },

    /// Parameters fall outside the real branch of a transform formula.
    #[error("parameters outside the real branch")]
    Branch,

    /// The result overflows or underflows the representable range.
    #[error("result outside representable range")]
    Range,

    /// No fast density is implemented for this fractional order.
    #[error("no closed-form density for order nu = {nu}")]
    UnsupportedOrder { nu: f64 },

    /// A path-based sampler ran out of steps before locating its crossing.
    #[error("path resolution exhausted before the crossing was located")]
    ResolutionExhausted,

    /// A structural precondition on the input data was violated.
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;
