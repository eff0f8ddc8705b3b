//! Multiplier gradients of periodic orbits of monic complex polynomial maps.
//!
//! For a monic degree-n polynomial g the multiplier of a period-r orbit
//! through beta is the derivative of the r-fold iterate at beta. Viewed as a
//! function of the coefficient vector (a_0, ..., a_{n-1}), each multiplier is
//! locally holomorphic, and its gradient in C^n is computable from an
//! implicit-function formula at the simple roots of g^(or)(x) - x. This crate
//! computes those gradients (with a finite-difference cross-check), the exact
//! closed forms at the pure power map x^n, the periodic-orbit spectra and
//! Moebius orbit counts behind them, and numerical linear-independence
//! verdicts over all orbit choices.
//!
//! Start with the runnable examples (`cargo run --example ...`); the `multgrad`
//! binary exposes the same operations as subcommands.

pub mod config;
pub mod error;
pub mod gradient;
pub mod independence;
pub mod json;
pub mod monomial;
pub mod periodic;
pub mod polynomial;
pub mod verify;

pub use config::RunConfig;
pub use error::{Error, Result};
pub use gradient::{finite_difference_gradient, multiplier_gradient, GradientVector};
pub use independence::{rank_test, z0_membership, IndependenceReport, OrbitSignature, Verdict};
pub use monomial::{unity_orbits, MonomialGradient, UnityPoint};
pub use periodic::{find_roots, nu, orbit_count, periodic_spectrum, Orbit, PeriodicSpectrum};
pub use polynomial::{DensePoly, MonicPoly};
