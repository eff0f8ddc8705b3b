//! Run configuration: tolerances, caps and budgets.
//!
//! Every numeric threshold used by the library is collected here with its
//! default value, so that CLI flags and config files can override them in
//! one place.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residual target for accepted roots: |p(z)| / max|coeff| must not exceed this.
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// Two roots closer than this are treated as one multiple root, putting the
/// polynomial outside the square-free locus. Below double-precision
/// root-splitting accuracy at degree of a few hundred.
pub const MULTIPLICITY_TOL: f64 = 1e-7;

/// Relative rank threshold: a stacked gradient matrix counts as full rank
/// when sigma_min > RANK_TOL * sigma_max.
pub const RANK_TOL: f64 = 1e-8;

/// Acceptable relative disagreement between the analytic gradient and the
/// central-difference oracle.
pub const GRADIENT_TOL: f64 = 1e-5;

/// Hard cap on explicit polynomial degrees (compose/iterate materialise
/// coefficient vectors; gradient paths use value-level recurrences instead).
pub const DEGREE_CAP: usize = 1 << 20;

/// Orbit values beyond this magnitude signal a non-periodic seed.
pub const ESCAPE_BOUND: f64 = 1e12;

/// Maximum simultaneous-iteration sweeps for the root finder.
pub const MAX_ROOT_ITERS: usize = 200;

/// Maximum tuples examined per membership/independence call before
/// switching to seeded sampling.
pub const TUPLE_BUDGET: usize = 10_000;

/// Condition-number limit for the power-sum linear systems.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Derivative magnitudes below this fail the simple-root precondition.
pub const SIMPLE_ROOT_TOL: f64 = 1e-10;

/// Tolerances, caps and budgets for a run. `Default` matches the module
/// constants above.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub root_residual: f64,
    pub multiplicity_tol: f64,
    pub rank_tol: f64,
    pub gradient_tol: f64,
    pub degree_cap: usize,
    pub escape_bound: f64,
    pub max_root_iters: usize,
    pub budget: usize,
    pub seed: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            root_residual: ROOT_RESIDUAL,
            multiplicity_tol: MULTIPLICITY_TOL,
            rank_tol: RANK_TOL,
            gradient_tol: GRADIENT_TOL,
            degree_cap: DEGREE_CAP,
            escape_bound: ESCAPE_BOUND,
            max_root_iters: MAX_ROOT_ITERS,
            budget: TUPLE_BUDGET,
            seed: None,
        }
    }
}

impl RunConfig {
    /// Check the invariants every consumer relies on: positive tolerances
    /// and a degree cap of at least 16.
    pub fn validate(&self) -> Result<()> {
        let tols = [
            ("root_residual", self.root_residual),
            ("multiplicity_tol", self.multiplicity_tol),
            ("rank_tol", self.rank_tol),
            ("gradient_tol", self.gradient_tol),
            ("escape_bound", self.escape_bound),
        ];
        for (name, value) in tols {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if self.degree_cap < 16 {
            return Err(Error::InvalidInput(format!(
                "degree_cap must be at least 16, got {}",
                self.degree_cap
            )));
        }
        if self.max_root_iters == 0 || self.budget == 0 {
            return Err(Error::InvalidInput(
                "max_root_iters and budget must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_small_degree_cap() {
        let cfg = RunConfig {
            degree_cap: 8,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        let cfg = RunConfig {
            rank_tol: 0.0,
            ..RunConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
