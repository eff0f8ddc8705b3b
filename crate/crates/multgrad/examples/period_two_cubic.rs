//! The cubic power map at period two: three orbits, two shared lines, and a
//! lost membership.
//!
//! z -> z^3 has three period-2 orbits among the 8th roots of unity. The orbit
//! of the primitive 4th roots has gradient direction (0,1,0); the two
//! primitive-8th-root orbits share the line through (3,0,1), so choosing both
//! of them gives linearly dependent gradients and the signature (2,2) fails.
//!
//! Run with: cargo run --example period_two_cubic

use multgrad::independence::{z0_membership, OrbitSignature};
use multgrad::{multiplier_gradient, periodic_spectrum, MonicPoly, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig::default();
    let g = MonicPoly::pure_power(3)?;

    let spectrum = periodic_spectrum(&g, 2, &cfg)?;
    println!(
        "{} fixed points, {} period-2 orbits (square-free: {})",
        spectrum.orbits_of_period(1).count(),
        spectrum.orbits_of_period(2).count(),
        spectrum.in_znr
    );

    for orbit in spectrum.orbits_of_period(2) {
        let grad = multiplier_gradient(&g, orbit, 2)?;
        let entries: Vec<String> = grad
            .entries()
            .iter()
            .map(|z| format!("{:.2}{:+.2}i", z.re, z.im))
            .collect();
        println!(
            "  orbit through {:.3}{:+.3}i: multiplier {:.1}, gradient ({})",
            orbit.representative().re,
            orbit.representative().im,
            orbit.multiplier().re,
            entries.join(", ")
        );
    }

    let signature = OrbitSignature::new(vec![2, 2], false)?;
    let report = z0_membership(&g, &signature, &cfg)?;
    println!("signature (2,2): {:?}", report.verdict);
    if let Some(witness) = report.dependent_choices.first() {
        let reps: Vec<String> = witness
            .representatives
            .iter()
            .map(|z| format!("{:.3}{:+.3}i", z.re, z.im))
            .collect();
        println!(
            "  dependent choice through [{}], smallest singular value {:.2e}",
            reps.join(", "),
            witness.sigma_min
        );
    }
    Ok(())
}
