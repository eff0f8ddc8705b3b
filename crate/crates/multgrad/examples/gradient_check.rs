//! Analytic multiplier gradients against the central-difference oracle on a
//! random cubic, with a step-halving consistency check.
//!
//! Run with: cargo run --example gradient_check

use multgrad::gradient::{
    finite_difference_gradient, multiplier_gradient, relative_difference, DEFAULT_FD_STEP,
};
use multgrad::{periodic_spectrum, MonicPoly, RunConfig};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig::default();
    let g = MonicPoly::new(vec![
        Complex64::new(0.05, -0.02),
        Complex64::new(0.1, 0.07),
        Complex64::new(-0.12, 0.0),
    ])?;

    for r in [1u32, 2, 3] {
        let spectrum = periodic_spectrum(&g, r, &cfg)?;
        let Some(orbit) = spectrum.orbits_of_period(r).next() else {
            println!("r = {r}: no orbit of exact period {r}");
            continue;
        };
        let analytic = multiplier_gradient(&g, orbit, r)?;
        let fd = finite_difference_gradient(&g, orbit, r, DEFAULT_FD_STEP)?;
        let halved = finite_difference_gradient(&g, orbit, r, DEFAULT_FD_STEP / 2.0)?;
        println!(
            "r = {r}: orbit through {:.4}{:+.4}i, |gradient| = {:.4}",
            orbit.representative().re,
            orbit.representative().im,
            analytic.norm()
        );
        println!(
            "  analytic vs differences: {:.2e} (step h), {:.2e} (step h/2)",
            relative_difference(analytic.entries(), fd.entries()),
            relative_difference(analytic.entries(), halved.entries()),
        );
    }
    Ok(())
}
