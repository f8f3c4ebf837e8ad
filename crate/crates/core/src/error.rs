//! Error taxonomy for the toolkit.
//!
//! Domain violations (excluded wavenumbers, coincident points, bad
//! parameters) are separated from numeric failures (quadrature or
//! eigensolver non-convergence) so callers can tell a misuse from a
//! computation that honestly gave up.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameter validation failed (non-positive kappa, bad tolerances, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// k = 0 sits outside the scattering continuum; the zero mode of the
    /// ladder operator is the bound state, not a plane-wave state.
    #[error("k = 0 lies outside the continuum")]
    ExcludedWavenumber,

    /// Parity-resolved states and the momentum matrix element are defined
    /// for k > 0 only.
    #[error("wavenumber must be positive, got {k}")]
    NonPositiveWavenumber { k: f64 },

    /// The transform has a pole at k = 0 (principal-value integral).
    #[error("transform diverges at k = 0")]
    DivergentAtZero,

    /// d = 0 is the jump point of the sign factor.
    #[error("d = 0 is the jump point of the sign factor")]
    ZeroSeparation,

    /// The off-diagonal kernel form needs x != y; use the diagonal form.
    #[error("x = y: use the diagonal operation")]
    CoincidentPoints,

    /// Adaptive quadrature exhausted its panel budget. Carries the best
    /// value found and its error estimate so callers can still inspect it.
    #[error("quadrature did not converge: best ({re}, {im}), estimate {estimate}, {panels} panels")]
    NonConvergence {
        re: f64,
        im: f64,
        estimate: f64,
        panels: usize,
    },

    /// An internal cross-check failed; indicates a bug or a loss of
    /// precision, never a caller mistake.
    #[error("internal inconsistency at x = {x}: {detail}")]
    InternalInconsistency { x: f64, detail: String },

    /// The QL iteration hit its sweep cap on one eigenvalue.
    #[error("eigensolver did not converge on eigenvalue {index}")]
    EigenNonConvergence { index: usize },

    /// Fixed-step propagation would be unstable at this energy; retry with
    /// at least the suggested number of steps.
    #[error("step too coarse for k = {k}; need at least {suggested_n} steps")]
    StepSize { k: f64, suggested_n: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
