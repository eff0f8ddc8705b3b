//! Membership scans: for which orbit signatures does the power map keep all
//! gradient choices independent?
//!
//! Run with: cargo run --example membership

use multgrad::independence::{z0_membership, OrbitSignature};
use multgrad::{MonicPoly, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig::default();

    // period sum 5 = degree: every orbit choice independent
    let quintic = MonicPoly::pure_power(5)?;
    let report = z0_membership(&quintic, &OrbitSignature::new(vec![2, 3], false)?, &cfg)?;
    println!(
        "x^5 with signature (2,3): {:?} after {} orbit choices",
        report.verdict, report.choices_tested
    );

    // the aligned primitive orbits break (2,2) at degree 3
    let cubic = MonicPoly::pure_power(3)?;
    let report = z0_membership(&cubic, &OrbitSignature::new(vec![2, 2], false)?, &cfg)?;
    println!(
        "x^3 with signature (2,2): {:?} after {} orbit choices",
        report.verdict, report.choices_tested
    );

    // a period-3 orbit of x^4 aligns with the zero fixed point, breaking (3,1)
    let quartic = MonicPoly::pure_power(4)?;
    let report = z0_membership(&quartic, &OrbitSignature::new(vec![3, 1], false)?, &cfg)?;
    println!(
        "x^4 with signature (3,1): {:?} after {} orbit choices",
        report.verdict, report.choices_tested
    );
    for witness in &report.dependent_choices {
        let reps: Vec<String> = witness
            .representatives
            .iter()
            .map(|z| format!("{:.4}{:+.4}i", z.re, z.im))
            .collect();
        println!("  witness representatives: [{}]", reps.join(", "));
    }
    Ok(())
}
