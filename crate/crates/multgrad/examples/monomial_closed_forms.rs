//! Exact closed forms at the pure power map: gradient entries from integer
//! exponent arithmetic, the level-change scaling identity, and the tangent
//! images of the coefficient directions.
//!
//! Run with: cargo run --example monomial_closed_forms

use multgrad::monomial::{gradient_at, scaling_relation_holds, tangent_basis_image, UnityPoint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // alpha = i among the 8th roots of unity (n = 3, r = 2, index 2)
    let point = UnityPoint::new(3, 2, 2)?;
    println!(
        "alpha = i: exact period {}, orbit indices {:?}",
        point.exact_period(),
        point.orbit_indices()
    );
    let grad = gradient_at(&point, 2)?;
    let entries: Vec<String> = grad
        .entries()
        .iter()
        .map(|z| format!("{:.1}{:+.1}i", z.re, z.im))
        .collect();
    println!("gradient at level 2: ({})", entries.join(", "));

    // a fixed point evaluated at a deeper level scales by r n^r / (d n^d)
    let fixed = UnityPoint::new(3, 1, 1)?; // alpha = -1
    for r in [2u32, 3] {
        println!(
            "scaling identity at level {r} from a fixed point: {}",
            scaling_relation_holds(&fixed, r, 1e-9)?
        );
    }

    // tangent images of the basis directions x^k have degrees n^r - n + k
    println!("tangent images at n=3, r=2:");
    for k in 0..3 {
        let image = tangent_basis_image(3, 2, k, 1 << 20)?;
        let terms: Vec<String> = image
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(e, c)| format!("{:.0} x^{e}", c.re))
            .collect();
        println!(
            "  x^{k} maps to {} (degree {:?})",
            terms.join(" + "),
            image.degree()
        );
    }
    Ok(())
}
