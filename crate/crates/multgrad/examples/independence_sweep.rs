//! Sweep every orbit-choice tuple at the power map for a family of
//! signatures, using the exact cyclotomic closed forms.
//!
//! With all periods at least 2 and period sum at most n, every tuple is
//! independent; pushing the sum past n can fail, and the zero-fixed-point
//! vector can be adjoined while the sum stays below n - 1.
//!
//! Run with: cargo run --example independence_sweep

use multgrad::independence::{all_monomial_tuples_independent, OrbitSignature};
use multgrad::RunConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig::default();
    let cases: [(u32, &[u32], bool); 7] = [
        (5, &[2, 3], false),
        (6, &[2, 2, 2], false),
        (6, &[3, 3], false),
        (6, &[2, 2], true),
        (3, &[2, 2], false), // sum 4 > 3: the known dependent pair
        // The sweep draws nonzero roots of unity only, so (3,1) at n=4 passes
        // here even though full membership fails through the zero fixed point
        // (compare the membership example).
        (4, &[3, 1], false),
        (8, &[2, 2, 2, 2], false),
    ];
    for (n, periods, with_zero) in cases {
        let signature = OrbitSignature::new(periods.to_vec(), with_zero)?;
        let verdict = all_monomial_tuples_independent(n, &signature, &cfg)?;
        println!(
            "n = {n}, periods {:?}{}: all tuples independent: {verdict}",
            periods,
            if with_zero { " + zero vector" } else { "" }
        );
    }
    Ok(())
}
