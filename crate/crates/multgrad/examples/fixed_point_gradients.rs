//! Gradients of fixed-point multipliers of the power maps x^m.
//!
//! The fixed points of z -> z^m are 0 and the (m-1)th roots of unity. The
//! gradient of the multiplier with respect to the coefficients has an exact
//! closed form at each of them; this example computes both the closed form
//! and the general implicit-function gradient and shows they agree.
//!
//! Run with: cargo run --example fixed_point_gradients

use multgrad::gradient::multiplier_gradient_at_point;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in [3usize, 5, 8] {
        let g = multgrad::MonicPoly::pure_power(m)?;
        println!("g(x) = x^{m}");

        // the superattracting fixed point: gradient picks out the linear term
        let at_zero = multiplier_gradient_at_point(&g, Complex64::new(0.0, 0.0), 1)?;
        println!("  at 0:          {}", fmt(&at_zero));

        // one root of unity: entries (i - m) alpha^(i-1)
        let alpha = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / (m as f64 - 1.0));
        let at_alpha = multiplier_gradient_at_point(&g, alpha, 1)?;
        println!("  at e^(2pi i/{}): {}", m - 1, fmt(&at_alpha));

        let mut closed = Vec::with_capacity(m);
        let mut power = alpha.inv();
        for i in 0..m {
            closed.push(power * (i as f64 - m as f64));
            power *= alpha;
        }
        let worst = at_alpha
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        println!("  closed-form max deviation: {worst:.2e}");
    }
    Ok(())
}

fn fmt(v: &[Complex64]) -> String {
    let body: Vec<String> = v.iter().map(|z| format!("{:.3}{:+.3}i", z.re, z.im)).collect();
    format!("({})", body.join(", "))
}
