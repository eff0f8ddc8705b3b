//! Membership is an open condition: this example perturbs every coefficient
//! of a member polynomial by random offsets of size 1e-8 and re-runs the
//! membership scan on each draw.
//!
//! Run with: cargo run --example perturbation_stability

use multgrad::independence::{openness_proxy, OrbitSignature};
use multgrad::{MonicPoly, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        seed: Some(11),
        ..RunConfig::default()
    };
    let g = MonicPoly::pure_power(5)?;
    let signature = OrbitSignature::new(vec![2, 3], false)?;

    for epsilon in [0.0, 1e-10, 1e-8] {
        let stable = openness_proxy(&g, &signature, epsilon, 20, &cfg)?;
        println!("x^5, signature (2,3), 20 perturbations of size {epsilon:.0e}: stable = {stable}");
    }
    Ok(())
}
