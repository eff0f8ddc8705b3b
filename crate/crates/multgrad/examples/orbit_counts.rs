//! Exact-period point counts: the Moebius-inversion table, orbit counts, and
//! a cross-check against actually enumerated cyclotomic orbits.
//!
//! Run with: cargo run --example orbit_counts

use multgrad::monomial::unity_orbits;
use multgrad::periodic::{nu, orbit_count};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("exact-period-m points of a generic degree-n map (nu), and orbit counts:");
    println!("{:>4} {:>4} {:>12} {:>10}", "n", "m", "nu(n,m)", "orbits");
    for (n, m) in [(2u32, 3u32), (2, 6), (3, 2), (3, 4), (5, 3), (10, 5)] {
        println!(
            "{n:>4} {m:>4} {:>12} {:>10}",
            nu(n, m)?,
            orbit_count(n, m)?
        );
    }

    // the counts are realized on the nose by the index orbits of z -> z^n
    let n = 3;
    let r = 3;
    let points = unity_orbits(n, r)?;
    println!("\norbit representatives of z -> z^{n} on the period-{r} locus:");
    for m in [1u32, 3] {
        let found = points.iter().filter(|p| p.exact_period() == m).count();
        println!(
            "  exact period {m}: {found} orbits found, {} predicted",
            orbit_count(n, m)?
        );
    }
    for p in points.iter().take(6) {
        println!(
            "  index {:>2} / modulus {}: period {}{}",
            p.index(),
            p.modulus(),
            p.exact_period(),
            if p.is_zero() { " (the zero fixed point)" } else { "" }
        );
    }
    Ok(())
}
