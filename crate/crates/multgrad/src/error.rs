//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong while computing spectra, gradients and
/// independence reports.
#[derive(Debug, Error)]
pub enum Error {
    /// A compose/iterate result would exceed the configured degree cap.
    #[error("degree cap exceeded: requested degree {requested} > cap {cap}")]
    DegreeCapExceeded { requested: u128, cap: usize },

    /// Integer or escape-bound overflow.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The root finder failed to reach the residual target.
    #[error("root finder did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    /// Nearest-root matching during orbit grouping was not decisive.
    #[error("ambiguous orbit grouping: match distance {distance:.3e} exceeds half the minimal root separation {separation:.3e}")]
    AmbiguousGrouping { distance: f64, separation: f64 },

    /// A root that must be simple is (numerically) not: the implicit-function
    /// formula for the gradient breaks down.
    #[error("simple-root violation: |{quantity}| = {magnitude:.3e} below {threshold:.1e}")]
    SimpleRootViolation {
        quantity: &'static str,
        magnitude: f64,
        threshold: f64,
    },

    /// Newton re-location of a perturbed periodic point did not converge;
    /// the perturbation likely crossed a bifurcation.
    #[error("Newton iteration diverged while tracking a periodic point (step {step})")]
    NewtonDivergence { step: usize },

    /// The polynomial is not in the square-free locus required for period r.
    #[error("polynomial has a multiple root of the period-{period} equation (minimal root separation {separation:.3e})")]
    NotInZ { period: u32, separation: f64 },

    /// The requested signature asks for more orbits of some exact period
    /// than the polynomial has.
    #[error("infeasible signature: {requested} orbits of exact period {period} requested, only {available} exist")]
    SignatureInfeasible {
        period: u32,
        requested: usize,
        available: usize,
    },

    /// A linear system was too ill-conditioned to trust.
    #[error("ill-conditioned system: condition number {condition:.3e} exceeds {limit:.1e}")]
    IllConditioned { condition: f64, limit: f64 },

    /// Malformed input (constructor invariants, preconditions).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
