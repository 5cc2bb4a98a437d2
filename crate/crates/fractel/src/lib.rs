//! Time-changed telegraph-type processes.
//!
//! The crate implements the probabilistic objects behind space-time
//! fractional telegraph equations: stable subordinators and their inverses,
//! composite first-passage time changes, the one-dimensional and planar
//! telegraph processes, and the compositions of the two. Each object comes
//! in up to three forms that are cross-checked against one another:
//!
//! * exact samplers (seed-deterministic, thread-count independent),
//! * closed-form or quadrature densities,
//! * transform-side formulas (Fourier and Laplace).
//!
//! The `verify` module holds the discrete fractional operators and the
//! statistical tests used to tie the three forms together; `cli` packages
//! them as named check suites behind the `fractel` binary.

pub mod cli;
pub mod compose;
pub mod error;
pub(crate) mod quad;
pub(crate) mod rng;
pub mod specfun;
pub mod stable;
pub mod subord;
pub mod telegraph;
pub mod verify;

pub use error::{Error, Result};
