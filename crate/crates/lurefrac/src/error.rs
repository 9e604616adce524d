//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input (empty polynomial, bad sector, bad config, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Commensurate order outside the admissible open interval (0, 2).
    #[error("commensurate order {0} outside (0, 2)")]
    InvalidOrder(f64),

    /// Numerator degree exceeds denominator degree after reduction.
    #[error("improper transfer function: numerator degree {num_degree} > denominator degree {den_degree}")]
    Improper {
        num_degree: usize,
        den_degree: usize,
    },

    /// Fractional exponents do not share a common commensurate base.
    #[error("exponents not commensurable within 1e-9 (denominator cap {cap}): {detail}")]
    NotCommensurable { cap: u64, detail: String },

    /// Simultaneous root iteration hit the iteration cap.
    #[error("root finding did not converge after {iterations} iterations (worst residual {residual:.3e})")]
    RootConvergence { iterations: usize, residual: f64 },

    /// Denominator vanishes at w = 0, so the dc value is undefined.
    #[error("pole at w = 0: dc value undefined")]
    PoleAtZero,

    /// An operation required a BIBO-stable transfer function.
    #[error("transfer function is not BIBO stable: {0}")]
    Unstable(String),

    /// Winding-number query point sits on the sampled locus.
    #[error("point lies on the frequency locus (distance {distance:.3e})")]
    PointOnCurve { distance: f64 },

    /// Phase increments between successive samples are too coarse.
    #[error(
        "sample density too low for winding computation near omega = {omega:.6e}; refine the sweep"
    )]
    RefineNeeded { omega: f64 },

    /// The requested configuration falls outside what the criteria support.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// A multiplier was used before its l1 norm was certified.
    #[error("multiplier has no l1-norm certificate; run certify_nonneg first")]
    NeedsCertification,

    /// Loop transformation produced a transformed plant with poles on the
    /// evaluation ray.
    #[error("loop transformation failed: {0}")]
    LoopTransformation(String),

    /// Algebraic feedthrough loop is not a contraction.
    #[error("algebraic loop: {0}")]
    AlgebraicLoop(String),

    /// Simulation state stopped being finite.
    #[error("state diverged at step {step} (t = {t:.6})")]
    Divergence { step: usize, t: f64 },

    /// Fixed-point iteration for the feedthrough loop did not converge.
    #[error("algebraic loop failed to converge at step {step}")]
    LoopNoConvergence { step: usize },
}
