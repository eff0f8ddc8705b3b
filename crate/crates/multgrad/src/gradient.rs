//! Gradients of multiplier functions with respect to polynomial coefficients.
//!
//! For g in the square-free locus and a period-r orbit through beta, the
//! multiplier g -> (g^or)'(beta) is locally holomorphic in the coefficients.
//! Writing F = g^(or)(x) - x, its gradient entry for coefficient a_i is
//!
//!   d/da_i (g^or)'(beta) = P'_i(beta) - P_i(beta) * F''(beta) / F'(beta)
//!
//! where P_i = d(g^or)/da_i. Everything on the right is computed by value
//! recurrences along the orbit in O(r n) per coefficient, so the degree-n^r
//! iterate is never expanded.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::json::{complex_pair, complex_vec};
use crate::periodic::{newton_periodic, Orbit};
use crate::polynomial::MonicPoly;

/// Gradient of one multiplier function at one polynomial, as a vector of
/// d Mult / d a_i over the n low-order coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GradientVector {
    #[serde(with = "complex_vec")]
    entries: Vec<Complex64>,
    #[serde(skip)]
    base: Option<MonicPoly>,
    #[serde(with = "complex_pair")]
    orbit_rep: Complex64,
    period: u32,
}

impl GradientVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn orbit_rep(&self) -> Complex64 {
        self.orbit_rep
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn base(&self) -> Option<&MonicPoly> {
        self.base.as_ref()
    }

    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Differential of the simple-root functional f -> f'(alpha) in the tangent
/// direction p: p'(alpha) - p(alpha) f''(alpha) / f'(alpha).
///
/// `SimpleRootViolation` when |f'(alpha)| < 1e-12, the implicit function
/// theorem hypothesis.
pub fn root_derivative_differential(
    p_val: Complex64,
    p_deriv: Complex64,
    f_prime: Complex64,
    f_second: Complex64,
) -> Result<Complex64> {
    if f_prime.norm() < 1e-12 {
        return Err(Error::SimpleRootViolation {
            quantity: "f'(alpha)",
            magnitude: f_prime.norm(),
            threshold: 1e-12,
        });
    }
    Ok(p_deriv - p_val * f_second / f_prime)
}

/// Gradient of f -> f'(alpha) at a monic f with simple root alpha, mapped
/// over the coefficient basis directions x^i.
pub fn root_derivative_gradient(f: &MonicPoly, alpha: Complex64) -> Result<Vec<Complex64>> {
    let dense = f.to_dense();
    let f_prime = dense.derivative().eval(alpha);
    let f_second = dense.second_derivative().eval(alpha);
    let n = f.degree();
    let mut entries = Vec::with_capacity(n);
    let mut power = Complex64::new(1.0, 0.0); // alpha^i
    let mut prev_power = Complex64::new(0.0, 0.0); // alpha^(i-1)
    for i in 0..n {
        let basis_deriv = if i == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            prev_power * i as f64
        };
        entries.push(root_derivative_differential(
            power,
            basis_deriv,
            f_prime,
            f_second,
        )?);
        prev_power = power;
        power *= alpha;
    }
    Ok(entries)
}

/// Per-step tangent values along an orbit: with u_j = g^(oj)(beta),
///
///   P_{i,j}  = d(g^oj)/da_i (beta)
///   Pd_{i,j} = (d(g^oj)/da_i)'(beta)
///   D_j      = (g^oj)'(beta)
///   D2_j     = (g^oj)''(beta)
///
/// advanced by one application of g at a time.
#[derive(Debug, Clone)]
pub struct TangentData {
    /// coeff_partials[i][j] = P_{i,j}, j = 0..=r
    coeff_partials: Vec<Vec<Complex64>>,
    /// coeff_partial_derivs[i][j] = Pd_{i,j}
    coeff_partial_derivs: Vec<Vec<Complex64>>,
    /// chain[j] = D_j
    chain: Vec<Complex64>,
    /// chain_second[j] = D2_j
    chain_second: Vec<Complex64>,
}

impl TangentData {
    /// Run the recurrences through j = r, starting at beta.
    pub fn compute(g: &MonicPoly, beta: Complex64, r: u32) -> Self {
        let n = g.degree();
        let steps = r as usize;
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);

        let mut coeff_partials = vec![vec![zero; steps + 1]; n];
        let mut coeff_partial_derivs = vec![vec![zero; steps + 1]; n];
        let mut chain = vec![one; steps + 1];
        let mut chain_second = vec![zero; steps + 1];
        chain[0] = one;
        chain_second[0] = zero;

        let mut u = beta;
        for j in 1..=steps {
            let (value, d1, d2) = g.eval_with_derivs(u);
            chain[j] = d1 * chain[j - 1];
            chain_second[j] = d2 * chain[j - 1] * chain[j - 1] + d1 * chain_second[j - 1];

            // powers of u up to n-1, shared across coefficient indices
            let mut power = one; // u^i
            let mut prev_power = zero; // u^(i-1)
            for (i, (partials, partial_derivs)) in coeff_partials
                .iter_mut()
                .zip(coeff_partial_derivs.iter_mut())
                .enumerate()
            {
                let monomial_deriv = if i == 0 { zero } else { prev_power * i as f64 };
                partials[j] = d1 * partials[j - 1] + power;
                partial_derivs[j] = d2 * chain[j - 1] * partials[j - 1]
                    + d1 * partial_derivs[j - 1]
                    + monomial_deriv * chain[j - 1];
                prev_power = power;
                power *= u;
            }
            u = value;
        }

        TangentData {
            coeff_partials,
            coeff_partial_derivs,
            chain,
            chain_second,
        }
    }

    /// P_{i,j}
    pub fn coeff_partial(&self, i: usize, j: usize) -> Complex64 {
        self.coeff_partials[i][j]
    }

    /// Pd_{i,j}
    pub fn coeff_partial_deriv(&self, i: usize, j: usize) -> Complex64 {
        self.coeff_partial_derivs[i][j]
    }

    /// D_j, the derivative of the j-fold iterate at beta.
    pub fn chain(&self, j: usize) -> Complex64 {
        self.chain[j]
    }

    /// D2_j, the second derivative of the j-fold iterate at beta.
    pub fn chain_second(&self, j: usize) -> Complex64 {
        self.chain_second[j]
    }
}

/// Compute the tangent recurrences for an orbit of g.
pub fn tangent_data(g: &MonicPoly, orbit: &Orbit, r: u32) -> Result<TangentData> {
    check_period(orbit, r)?;
    Ok(TangentData::compute(g, orbit.representative(), r))
}

fn check_period(orbit: &Orbit, r: u32) -> Result<()> {
    if r == 0 || !r.is_multiple_of(orbit.exact_period()) {
        return Err(Error::InvalidInput(format!(
            "iteration count {r} is not a multiple of the orbit's exact period {}",
            orbit.exact_period()
        )));
    }
    Ok(())
}

/// Gradient at an explicit periodic point (must satisfy g^(or)(beta) = beta).
pub fn multiplier_gradient_at_point(
    g: &MonicPoly,
    beta: Complex64,
    r: u32,
) -> Result<Vec<Complex64>> {
    let data = TangentData::compute(g, beta, r);
    let steps = r as usize;
    let denom = data.chain(steps) - Complex64::new(1.0, 0.0);
    if denom.norm() < config::SIMPLE_ROOT_TOL {
        return Err(Error::SimpleRootViolation {
            quantity: "multiplier - 1",
            magnitude: denom.norm(),
            threshold: config::SIMPLE_ROOT_TOL,
        });
    }
    let second = data.chain_second(steps);
    Ok((0..g.degree())
        .map(|i| {
            data.coeff_partial_deriv(i, steps) - data.coeff_partial(i, steps) * second / denom
        })
        .collect())
}

/// Gradient of the multiplier of `orbit` under r-fold iteration, by the
/// implicit-function formula. Rejects multiplier-1 cycles, where the periodic
/// point is not a simple root of g^(or)(x) - x.
pub fn multiplier_gradient(g: &MonicPoly, orbit: &Orbit, r: u32) -> Result<GradientVector> {
    check_period(orbit, r)?;
    let beta = orbit.representative();
    let entries = multiplier_gradient_at_point(g, beta, r)?;
    Ok(GradientVector {
        entries,
        base: Some(g.clone()),
        orbit_rep: beta,
        period: r,
    })
}

/// (g^or)'(z) by the chain rule along the orbit of z.
fn multiplier_value(g: &MonicPoly, z: Complex64, r: u32) -> Complex64 {
    let mut u = z;
    let mut chain = Complex64::new(1.0, 0.0);
    for _ in 0..r {
        let (value, d1, _) = g.eval_with_derivs(u);
        chain *= d1;
        u = value;
    }
    chain
}

/// Central-difference oracle for [`multiplier_gradient`]: perturb each
/// coefficient by +-h_i with h_i = h max(1, |a_i|), re-locate the continued
/// periodic point by Newton iteration seeded at the orbit representative, and
/// difference the multipliers.
///
/// `NewtonDivergence` signals that a perturbation crossed a bifurcation;
/// retry with a smaller h.
pub fn finite_difference_gradient(
    g: &MonicPoly,
    orbit: &Orbit,
    r: u32,
    h: f64,
) -> Result<GradientVector> {
    check_period(orbit, r)?;
    if !(1e-8..=1e-4).contains(&h) {
        return Err(Error::InvalidInput(format!(
            "finite-difference step {h:.3e} outside [1e-8, 1e-4]"
        )));
    }
    let beta = orbit.representative();
    let n = g.degree();
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let a_i = g.coeffs()[i];
        let step = h * a_i.norm().max(1.0);
        let mut samples = [Complex64::new(0.0, 0.0); 2];
        for (slot, sign) in samples.iter_mut().zip([1.0, -1.0]) {
            let perturbed = g.with_coeff(i, a_i + Complex64::new(sign * step, 0.0))?;
            let moved = newton_periodic(&perturbed, r, beta, 50)?;
            if (moved - beta).norm() > 1e4 * step {
                // Newton settled on a different cycle: the perturbation left
                // the basin of the tracked point.
                return Err(Error::NewtonDivergence { step: i });
            }
            *slot = multiplier_value(&perturbed, moved, r);
        }
        entries.push((samples[0] - samples[1]) / (2.0 * step));
    }
    Ok(GradientVector {
        entries,
        base: Some(g.clone()),
        orbit_rep: beta,
        period: r,
    })
}

/// Default finite-difference base step.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Relative disagreement ||a - b|| / max(||a||, tiny) between two gradients.
pub fn relative_difference(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let scale: f64 = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    diff / scale.max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use crate::periodic::periodic_spectrum;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn power_minus_x(m: usize) -> MonicPoly {
        let mut coeffs = vec![re(0.0); m];
        coeffs[1] = re(-1.0);
        MonicPoly::new(coeffs).unwrap()
    }

    #[test]
    fn gradient_at_zero_of_power_minus_x() {
        // f = x^m - x at alpha = 0: the gradient picks out the linear
        // coefficient, (0, 1, 0, ..., 0).
        for m in 3..=8 {
            let f = power_minus_x(m);
            let grad = root_derivative_gradient(&f, re(0.0)).unwrap();
            for (i, entry) in grad.iter().enumerate() {
                let expect = if i == 1 { 1.0 } else { 0.0 };
                assert!((entry - re(expect)).norm() < 1e-12, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn gradient_at_unity_roots_of_power_minus_x() {
        // f = x^m - x at alpha with alpha^(m-1) = 1: entries (i - m) alpha^(i-1).
        for m in 3..=8usize {
            let f = power_minus_x(m);
            for j in 0..(m - 1) {
                let alpha = Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * j as f64 / (m as f64 - 1.0),
                );
                let grad = root_derivative_gradient(&f, alpha).unwrap();
                let mut prev_power = alpha.inv(); // alpha^(i-1) at i=0
                for (i, entry) in grad.iter().enumerate() {
                    let expect = prev_power * (i as f64 - m as f64);
                    assert!(
                        (entry - expect).norm() <= 1e-10 * expect.norm().max(1.0),
                        "m={m} alpha^{j} i={i}: {entry} vs {expect}"
                    );
                    prev_power *= alpha;
                }
            }
        }
    }

    #[test]
    fn differential_of_f_itself_is_f_prime() {
        // p = f at a simple root alpha: p(alpha) = 0, so the differential is
        // p'(alpha) = f'(alpha).
        let f = power_minus_x(4);
        let alpha = re(1.0);
        let dense = f.to_dense();
        let fp = dense.derivative().eval(alpha);
        let fs = dense.second_derivative().eval(alpha);
        let out = root_derivative_differential(f.eval(alpha), fp, fp, fs).unwrap();
        assert!((out - fp).norm() < 1e-12);
    }

    #[test]
    fn differential_rejects_critical_root() {
        let err = root_derivative_differential(re(1.0), re(1.0), re(0.0), re(1.0)).unwrap_err();
        assert!(matches!(err, Error::SimpleRootViolation { .. }));
    }

    #[test]
    fn tangent_data_first_step() {
        let g = MonicPoly::new(vec![re(0.1), re(-0.2), re(0.3)]).unwrap();
        let beta = Complex64::new(0.4, -0.1);
        let data = TangentData::compute(&g, beta, 1);
        let (_, d1, d2) = g.eval_with_derivs(beta);
        assert!((data.chain(1) - d1).norm() < 1e-14);
        assert!((data.chain_second(1) - d2).norm() < 1e-14);
        let mut power = Complex64::new(1.0, 0.0);
        for i in 0..3 {
            assert!((data.coeff_partial(i, 1) - power).norm() < 1e-14);
            let expect_deriv = if i == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                beta.powu(i as u32 - 1) * i as f64
            };
            assert!((data.coeff_partial_deriv(i, 1) - expect_deriv).norm() < 1e-14);
            power *= beta;
        }
    }

    #[test]
    fn tangent_data_matches_explicit_composition() {
        // For a random cubic at r=2, the recurrence values must match the
        // coefficient-level route: P_i = d(g^o2)/da_i expanded explicitly.
        let g = MonicPoly::new(vec![
            Complex64::new(0.12, -0.05),
            Complex64::new(-0.3, 0.08),
            Complex64::new(0.2, 0.1),
        ])
        .unwrap();
        let beta = Complex64::new(0.35, -0.2);
        let data = TangentData::compute(&g, beta, 2);

        // d(g(g(x)))/da_i = g'(g(x)) * x^i + g(x)^i, expanded as polynomials.
        let cap = 1 << 20;
        let inner = g.to_dense();
        let gprime = g.derivative();
        let gprime_of_g = gprime.compose(&inner, cap).unwrap();
        for i in 0..3 {
            let x_i = crate::polynomial::DensePoly::monomial(re(1.0), i);
            let mut g_pow_i = crate::polynomial::DensePoly::monomial(re(1.0), 0);
            for _ in 0..i {
                g_pow_i = g_pow_i.mul(&inner);
            }
            let partial = gprime_of_g.mul(&x_i).add(&g_pow_i);
            let expect_val = partial.eval(beta);
            let expect_deriv = partial.derivative().eval(beta);
            assert!(
                (data.coeff_partial(i, 2) - expect_val).norm() < 1e-12 * expect_val.norm().max(1.0),
                "P_{i}"
            );
            assert!(
                (data.coeff_partial_deriv(i, 2) - expect_deriv).norm()
                    < 1e-12 * expect_deriv.norm().max(1.0),
                "Pd_{i}"
            );
        }
        // chain values against the explicit iterate
        let iterate = g.iterate(2, cap).unwrap();
        let d1 = iterate.derivative().eval(beta);
        let d2 = iterate.second_derivative().eval(beta);
        assert!((data.chain(2) - d1).norm() < 1e-12 * d1.norm().max(1.0));
        assert!((data.chain_second(2) - d2).norm() < 1e-12 * d2.norm().max(1.0));
    }

    #[test]
    fn tangent_values_match_basis_images_at_power_map() {
        // At g = x^n the coefficient partials of the iterate are exactly the
        // closed-form tangent images: P_{i,r} = image_i(beta) for unity beta.
        use crate::monomial::tangent_basis_image;
        for n in 2..=3u32 {
            for r in 1..=3u32 {
                let g = MonicPoly::pure_power(n as usize).unwrap();
                let modulus = (n as u64).pow(r) - 1;
                for k in [1u64, modulus / 2 + 1] {
                    let beta = Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * k as f64 / modulus as f64,
                    );
                    let data = TangentData::compute(&g, beta, r);
                    for i in 0..n {
                        let image = tangent_basis_image(n, r, i, 1 << 20).unwrap();
                        let expect = image.eval(beta);
                        let got = data.coeff_partial(i as usize, r as usize);
                        assert!(
                            (got - expect).norm() <= 1e-10 * expect.norm().max(1.0),
                            "n={n} r={r} i={i}: {got} vs {expect}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn finite_differences_at_zero_fixed_point_of_power_map() {
        // the central-difference oracle reproduces (0, 1, 0, ..., 0) at the
        // superattracting fixed point
        for m in [3usize, 5] {
            let g = MonicPoly::pure_power(m).unwrap();
            let orbit = Orbit::from_cycle(&g, vec![re(0.0)], f64::INFINITY).unwrap();
            let fd = finite_difference_gradient(&g, &orbit, 1, DEFAULT_FD_STEP).unwrap();
            for (i, entry) in fd.entries().iter().enumerate() {
                let expect = if i == 1 { 1.0 } else { 0.0 };
                assert!((entry - re(expect)).norm() < 1e-6, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn fixed_point_gradient_of_power_map() {
        // g = x^n, fixed point 0: gradient (0, 1, 0, ..., 0).
        for n in 3..=6 {
            let g = MonicPoly::pure_power(n).unwrap();
            let grad = multiplier_gradient_at_point(&g, re(0.0), 1).unwrap();
            for (i, entry) in grad.iter().enumerate() {
                let expect = if i == 1 { 1.0 } else { 0.0 };
                assert!((entry - re(expect)).norm() < 1e-14, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn matches_root_derivative_gradient_at_period_one() {
        // r=1 on g is the same arithmetic as the direct differential at
        // f = g - x: identical entries to machine precision.
        let g = MonicPoly::new(vec![re(0.05), re(0.1), re(0.0)]).unwrap();
        let cfg = RunConfig::default();
        let spectrum = periodic_spectrum(&g, 1, &cfg).unwrap();
        let mut f_coeffs = g.coeffs().to_vec();
        f_coeffs[1] -= re(1.0);
        let f = MonicPoly::new(f_coeffs).unwrap();
        for orbit in &spectrum.orbits {
            let grad = multiplier_gradient(&g, orbit, 1).unwrap();
            let direct = root_derivative_gradient(&f, orbit.representative()).unwrap();
            for (a, b) in grad.entries().iter().zip(&direct) {
                assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
            }
        }
    }

    #[test]
    fn orbit_representative_invariance() {
        // The gradient must not depend on which orbit point seeds the
        // recurrences.
        let g = MonicPoly::new(vec![re(0.05), re(0.02), re(-0.1)]).unwrap();
        let cfg = RunConfig::default();
        let spectrum = periodic_spectrum(&g, 2, &cfg).unwrap();
        let orbit = spectrum
            .orbits_of_period(2)
            .next()
            .expect("period-2 orbit exists");
        let from_rep = multiplier_gradient_at_point(&g, orbit.points()[0], 2).unwrap();
        let from_other = multiplier_gradient_at_point(&g, orbit.points()[1], 2).unwrap();
        for (a, b) in from_rep.iter().zip(&from_other) {
            assert!((a - b).norm() <= 1e-8 * b.norm().max(1.0));
        }
    }

    #[test]
    fn rejects_multiplier_one_cycle() {
        // g(x) = x^2 + (1-2b)x + b^2 has a fixed point at b with g'(b) = 1.
        let b = 0.3;
        let g = MonicPoly::new(vec![re(b * b), re(1.0 - 2.0 * b)]).unwrap();
        let err = multiplier_gradient_at_point(&g, re(b), 1).unwrap_err();
        assert!(matches!(err, Error::SimpleRootViolation { .. }));
    }

    #[test]
    fn finite_difference_agrees_on_random_cubic_fixed_points() {
        let g = MonicPoly::new(vec![re(0.05), re(0.1), re(0.0)]).unwrap();
        let cfg = RunConfig::default();
        let spectrum = periodic_spectrum(&g, 1, &cfg).unwrap();
        for orbit in &spectrum.orbits {
            let analytic = multiplier_gradient(&g, orbit, 1).unwrap();
            let numeric = finite_difference_gradient(&g, orbit, 1, DEFAULT_FD_STEP).unwrap();
            let rel = relative_difference(analytic.entries(), numeric.entries());
            assert!(rel <= 1e-6, "relative difference {rel}");
        }
    }

    #[test]
    fn richardson_consistency_of_central_differences() {
        // Halving h should shrink the deviation from the analytic gradient
        // roughly fourfold (second-order differences); allow slack for
        // rounding noise.
        let g = MonicPoly::new(vec![re(0.08), re(-0.12), re(0.03)]).unwrap();
        let cfg = RunConfig::default();
        let spectrum = periodic_spectrum(&g, 2, &cfg).unwrap();
        let orbit = spectrum.orbits_of_period(2).next().unwrap();
        let analytic = multiplier_gradient(&g, orbit, 2).unwrap();
        let coarse = finite_difference_gradient(&g, orbit, 2, 8e-5).unwrap();
        let fine = finite_difference_gradient(&g, orbit, 2, 4e-5).unwrap();
        let err_coarse = relative_difference(analytic.entries(), coarse.entries());
        let err_fine = relative_difference(analytic.entries(), fine.entries());
        assert!(
            err_fine <= err_coarse / 2.0 + 1e-9,
            "coarse {err_coarse}, fine {err_fine}"
        );
    }

    #[test]
    fn fd_step_bounds_are_enforced() {
        let g = MonicPoly::pure_power(3).unwrap();
        let cfg = RunConfig::default();
        let spectrum = periodic_spectrum(&g, 1, &cfg).unwrap();
        let orbit = &spectrum.orbits[0];
        assert!(matches!(
            finite_difference_gradient(&g, orbit, 1, 1e-3),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn gradient_json_shape() {
        let g = MonicPoly::pure_power(3).unwrap();
        let grad = GradientVector {
            entries: vec![re(0.0), re(1.0), re(0.0)],
            base: Some(g),
            orbit_rep: re(0.0),
            period: 1,
        };
        let text = serde_json::to_string(&grad).unwrap();
        assert_eq!(
            text,
            r#"{"entries":[[0.0,0.0],[1.0,0.0],[0.0,0.0]],"orbit_rep":[0.0,0.0],"period":1}"#
        );
        let back: GradientVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back.entries(), grad.entries());
        assert_eq!(back.period(), 1);
    }
}
