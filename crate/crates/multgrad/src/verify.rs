//! Built-in verification suite.
//!
//! Ten named checks reproduce the worked special cases and sweep the
//! theorem-backed ranges at desk scale, each against an independent route:
//! closed forms against the general machinery, analytic gradients against
//! central differences, Moebius counts against brute-force orbit walks, and
//! membership verdicts against exact cyclotomic combinatorics. The `multgrad
//! verify-paper` subcommand and the acceptance test target both run this
//! suite.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::config::RunConfig;
use crate::error::Error;
use crate::gradient::{
    finite_difference_gradient, multiplier_gradient, multiplier_gradient_at_point,
    relative_difference, root_derivative_gradient, DEFAULT_FD_STEP,
};
use crate::independence::{
    all_monomial_tuples_independent, disc_sample, newton_vanishing_check, openness_proxy,
    power_sums, rank_test, z0_membership, OrbitSignature, Verdict,
};
use crate::monomial::{self, UnityPoint};
use crate::periodic::{multiple_root_propagation_check, nu, orbit_count, periodic_spectrum};
use crate::polynomial::MonicPoly;

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub details: String,
    pub seconds: f64,
}

/// Summary of a full run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckOutcome>,
    pub all_passed: bool,
}

pub const CHECK_NAMES: [&str; 10] = [
    "fixed-point-gradients",
    "tangent-basis-images",
    "cubic-period-two-geometry",
    "adjacent-degree-orbits",
    "independence-sweeps",
    "gradient-oracle-agreement",
    "nu-table",
    "parabolic-root-propagation",
    "power-sum-vandermonde",
    "perturbation-stability",
];

/// Run the suite, or the single check selected by `only`.
pub fn run(cfg: &RunConfig, only: Option<&str>) -> VerifySummary {
    type Check = fn(&RunConfig) -> (bool, String);
    let table: [(&str, Check, Option<f64>); 10] = [
        ("fixed-point-gradients", check_fixed_point_gradients, Some(1.0)),
        ("tangent-basis-images", check_tangent_basis_images, Some(5.0)),
        ("cubic-period-two-geometry", check_cubic_period_two, None),
        ("adjacent-degree-orbits", check_adjacent_degree_orbits, Some(10.0)),
        ("independence-sweeps", check_independence_sweeps, Some(300.0)),
        ("gradient-oracle-agreement", check_gradient_oracle, Some(120.0)),
        ("nu-table", check_nu_table, Some(30.0)),
        ("parabolic-root-propagation", check_parabolic_propagation, None),
        ("power-sum-vandermonde", check_power_sum_vandermonde, None),
        ("perturbation-stability", check_perturbation_stability, None),
    ];
    let mut checks = Vec::new();
    for (name, check, budget) in table {
        if let Some(filter) = only {
            if filter != name {
                continue;
            }
        }
        let start = Instant::now();
        let (mut passed, mut details) = check(cfg);
        let seconds = start.elapsed().as_secs_f64();
        if let Some(limit) = budget {
            if seconds >= limit {
                passed = false;
                details.push_str(&format!("; OVER TIME BUDGET {limit}s"));
            }
        }
        checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            details,
            seconds,
        });
    }
    let all_passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
    VerifySummary { checks, all_passed }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn power_minus_x(m: usize) -> MonicPoly {
    let mut coeffs = vec![re(0.0); m];
    coeffs[1] = re(-1.0);
    MonicPoly::new(coeffs).expect("valid polynomial")
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Angle between the complex lines spanned by u and v, via the rejection of
/// v from u (the sine of the angle stays accurate for tiny angles, where a
/// cosine-based formula bottoms out near sqrt(eps)).
fn angular_deviation(u: &[Complex64], v: &[Complex64]) -> f64 {
    let uu: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    let inner: Complex64 = v.iter().zip(u).map(|(a, b)| a * b.conj()).sum();
    let coefficient = inner / uu;
    let rejection: f64 = v
        .iter()
        .zip(u)
        .map(|(a, b)| (a - b * coefficient).norm_sqr())
        .sum::<f64>()
        .sqrt();
    (rejection / vec_norm(v)).clamp(0.0, 1.0).asin()
}

/// Gradients of the root-derivative functional at x^m - x: (0,1,0,...,0) at
/// the root 0, and (-m/a, 1-m, (2-m)a, ..., -a^(m-2)) at each root of unity,
/// for m = 3..8, cross-checked against the period-1 multiplier machinery.
fn check_fixed_point_gradients(_cfg: &RunConfig) -> (bool, String) {
    let mut worst_zero = 0.0f64;
    let mut worst_unity = 0.0f64;
    let mut worst_cross = 0.0f64;
    for m in 3..=8usize {
        let f = power_minus_x(m);
        let g = MonicPoly::pure_power(m).expect("valid degree");

        let at_zero = match root_derivative_gradient(&f, re(0.0)) {
            Ok(v) => v,
            Err(e) => return (false, format!("gradient at 0 failed for m={m}: {e}")),
        };
        for (i, entry) in at_zero.iter().enumerate() {
            let expect = if i == 1 { re(1.0) } else { re(0.0) };
            worst_zero = worst_zero.max((entry - expect).norm());
        }

        for j in 0..(m - 1) {
            let alpha =
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / (m - 1) as f64);
            let grad = match root_derivative_gradient(&f, alpha) {
                Ok(v) => v,
                Err(e) => return (false, format!("gradient failed for m={m}, root {j}: {e}")),
            };
            let mut prev_power = alpha.inv();
            for (i, entry) in grad.iter().enumerate() {
                let expect = prev_power * (i as f64 - m as f64);
                worst_unity = worst_unity.max((entry - expect).norm() / expect.norm().max(1.0));
                prev_power *= alpha;
            }
            // identical arithmetic through the period-1 multiplier route
            let via_multiplier = match multiplier_gradient_at_point(&g, alpha, 1) {
                Ok(v) => v,
                Err(e) => return (false, format!("multiplier route failed for m={m}: {e}")),
            };
            worst_cross = worst_cross.max(relative_difference(&grad, &via_multiplier));
        }
    }
    let passed = worst_zero < 1e-12 && worst_unity < 1e-10 && worst_cross < 1e-12;
    (
        passed,
        format!(
            "m=3..8: root-0 max abs dev {worst_zero:.2e} (<1e-12), unity-root max rel dev {worst_unity:.2e} (<1e-10), route agreement {worst_cross:.2e}"
        ),
    )
}

mod intpoly {
    //! Minimal integer polynomial arithmetic for the epsilon-expansion oracle.

    pub fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len().max(b.len())];
        for (i, &x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, &x) in b.iter().enumerate() {
            out[i] += x;
        }
        out
    }

    pub fn scale(a: &[i64], s: i64) -> Vec<i64> {
        a.iter().map(|&x| x * s).collect()
    }

    pub fn pow(a: &[i64], e: u32) -> Vec<i64> {
        let mut out = vec![1i64];
        for _ in 0..e {
            out = mul(&out, a);
        }
        out
    }
}

/// The tangent images of the basis directions at the pure power map, checked
/// coefficientwise in integer arithmetic against an epsilon-expansion of the
/// perturbed iterate, plus their degree/rank consequences.
fn check_tangent_basis_images(cfg: &RunConfig) -> (bool, String) {
    let mut compared = 0usize;
    for n in 2..=4u32 {
        for r in 1..=3u32 {
            let mut degrees = Vec::new();
            let mut rows: Vec<Vec<Complex64>> = Vec::new();
            let width = (n as usize).pow(r) + 1;
            for k in 0..n {
                // epsilon-expansion oracle: iterate x^n + eps x^k symbolically
                // to first order as the pair (head, tangent).
                let mut head = vec![0i64, 1]; // x
                let mut tangent: Vec<i64> = Vec::new(); // 0
                for _ in 0..r {
                    let head_pow_k = intpoly::pow(&head, k);
                    let head_pow_nm1 = intpoly::pow(&head, n - 1);
                    tangent = intpoly::add(
                        &intpoly::scale(&intpoly::mul(&head_pow_nm1, &tangent), n as i64),
                        &head_pow_k,
                    );
                    head = intpoly::mul(&head_pow_nm1, &head);
                }
                let image = match monomial::tangent_basis_image(n, r, k, cfg.degree_cap) {
                    Ok(p) => p,
                    Err(e) => return (false, format!("image failed for n={n} r={r} k={k}: {e}")),
                };
                // exact coefficizentwise match against the integer oracle
                let len = tangent.len().max(image.coeffs().len());
                for idx in 0..len {
                    let oracle = *tangent.get(idx).unwrap_or(&0) as f64;
                    let got = image.coeff(idx);
                    if got.im != 0.0 || got.re != oracle {
                        return (
                            false,
                            format!(
                                "coefficient mismatch at n={n} r={r} k={k} x^{idx}: {got} vs {oracle}"
                            ),
                        );
                    }
                }
                compared += 1;
                // degree n^r - n + k
                let expect_degree = (n as usize).pow(r) - n as usize + k as usize;
                if image.degree() != Some(expect_degree) {
                    return (
                        false,
                        format!(
                            "degree {:?} instead of {expect_degree} at n={n} r={r} k={k}",
                            image.degree()
                        ),
                    );
                }
                degrees.push(expect_degree);
                let mut row = vec![re(0.0); width];
                for (idx, c) in image.coeffs().iter().enumerate() {
                    row[idx] = *c;
                }
                rows.push(row);
            }
            degrees.dedup();
            if degrees.len() != n as usize {
                return (false, format!("degrees collide at n={n} r={r}"));
            }
            // distinct degrees force rank n of the tangent map at x^n
            let (independent, _) = rank_test(&rows, cfg.rank_tol);
            if !independent {
                return (false, format!("tangent images not full rank at n={n} r={r}"));
            }
        }
    }
    (
        true,
        format!("{compared} images exact against the integer epsilon-expansion; degrees distinct; tangent rank full"),
    )
}

/// The cubic at period two: orbit directions, the shared line of the two
/// primitive-eighth-root orbits, the resulting non-membership, and magnitude
/// agreement of the three gradient routes at the order-four orbit.
fn check_cubic_period_two(cfg: &RunConfig) -> (bool, String) {
    let g = match MonicPoly::pure_power(3) {
        Ok(g) => g,
        Err(e) => return (false, e.to_string()),
    };
    let spectrum = match periodic_spectrum(&g, 2, cfg) {
        Ok(s) => s,
        Err(e) => return (false, format!("spectrum failed: {e}")),
    };
    let mut order_four = None;
    let mut primitives = Vec::new();
    for orbit in spectrum.orbits_of_period(2) {
        let alpha = orbit.representative();
        if (alpha.powu(4) - re(1.0)).norm() < 1e-6 {
            order_four = Some(orbit.clone());
        } else {
            primitives.push(orbit.clone());
        }
    }
    let Some(order_four) = order_four else {
        return (false, "orbit of the primitive fourth roots not found".into());
    };
    if primitives.len() != 2 {
        return (false, format!("{} primitive orbits, expected 2", primitives.len()));
    }

    let e1 = [re(0.0), re(1.0), re(0.0)];
    let line = [re(3.0), re(0.0), re(1.0)];

    let grad_four = match multiplier_gradient(&g, &order_four, 2) {
        Ok(v) => v,
        Err(e) => return (false, format!("gradient at the order-four orbit: {e}")),
    };
    let dev_four = angular_deviation(grad_four.entries(), &e1);

    let mut dev_line = 0.0f64;
    let mut prim_grads = Vec::new();
    for orbit in &primitives {
        let grad = match multiplier_gradient(&g, orbit, 2) {
            Ok(v) => v,
            Err(e) => return (false, format!("gradient at a primitive orbit: {e}")),
        };
        dev_line = dev_line.max(angular_deviation(grad.entries(), &line));
        prim_grads.push(grad);
    }
    let dev_pair = angular_deviation(prim_grads[0].entries(), prim_grads[1].entries());

    let signature = match OrbitSignature::new(vec![2, 2], false) {
        Ok(s) => s,
        Err(e) => return (false, e.to_string()),
    };
    let report = match z0_membership(&g, &signature, cfg) {
        Ok(r) => r,
        Err(e) => return (false, format!("membership scan failed: {e}")),
    };

    // magnitude agreement of the three routes at the order-four orbit
    let closed = match UnityPoint::new(3, 2, 2).and_then(|p| monomial::gradient_at(&p, 2)) {
        Ok(v) => v.entries().to_vec(),
        Err(e) => return (false, format!("closed form failed: {e}")),
    };
    let fd = match finite_difference_gradient(&g, &order_four, 2, DEFAULT_FD_STEP) {
        Ok(v) => v,
        Err(e) => return (false, format!("difference oracle failed: {e}")),
    };
    let closed_vs_analytic = relative_difference(&closed, grad_four.entries());
    let analytic_vs_fd = relative_difference(grad_four.entries(), fd.entries());
    let closed_vs_fd = relative_difference(&closed, fd.entries());
    let middle = grad_four.entries()[1];

    let passed = dev_four < 1e-8
        && dev_line < 1e-8
        && dev_pair < 1e-8
        && report.verdict == Verdict::NotMember
        && closed_vs_analytic <= 1e-5
        && analytic_vs_fd <= 1e-5
        && closed_vs_fd <= 1e-5;
    (
        passed,
        format!(
            "direction deviations: order-four orbit {dev_four:.2e} off (0,1,0), primitives {dev_line:.2e} off (3,0,1), pair span {dev_pair:.2e}; verdict {:?}; route agreement closed/analytic {closed_vs_analytic:.2e}, analytic/differences {analytic_vs_fd:.2e}; middle entry of the order-four gradient: {:.0} on all three routes (a value of 6 is sometimes quoted for it; the direction is the pinned claim, reported alongside)",
            report.verdict, middle.re.round()
        ),
    )
}

/// For n = r+1: primitive r^2-th roots of unity have exact period r, their
/// gradients collapse onto the zero-fixed-point line with the predicted
/// constant, and both associated signatures lose x^n from the locus.
fn check_adjacent_degree_orbits(cfg: &RunConfig) -> (bool, String) {
    // the binomial congruence behind the orbit structure, by integer arithmetic
    for r in 2..=12u64 {
        let n = r + 1;
        let modulus = r * r;
        let mut n_pow = 1u64;
        for i in 1..=r {
            n_pow = (n_pow * (n % modulus)) % modulus;
            if n_pow != (1 + i * r) % modulus {
                return (false, format!("congruence fails at r={r}, i={i}"));
            }
        }
    }

    let mut worst_rel = 0.0f64;
    let mut budget_cfg = cfg.clone();
    budget_cfg.budget = budget_cfg.budget.max(20_000);

    for r in 2..=4u32 {
        let n = r + 1;
        let point_count = (r * r) as u64;
        let modulus = match UnityPoint::new(n, r, 0) {
            Ok(p) => p.modulus(),
            Err(e) => return (false, e.to_string()),
        };
        if modulus % point_count != 0 {
            return (false, format!("r^2 does not divide the modulus at r={r}"));
        }
        let stride = modulus / point_count;
        for j in 1..point_count {
            if gcd(j, point_count) != 1 {
                continue;
            }
            let point = match UnityPoint::new(n, r, stride * j) {
                Ok(p) => p,
                Err(e) => return (false, e.to_string()),
            };
            if point.exact_period() != r {
                return (
                    false,
                    format!("primitive point has period {} at r={r}", point.exact_period()),
                );
            }
            let grad = match monomial::gradient_at(&point, r) {
                Ok(v) => v,
                Err(e) => return (false, e.to_string()),
            };
            let alpha = point.value();
            let gamma = alpha.powu(r).inv();
            let constant =
                gamma * (-(r as f64) * (n as f64 - 1.0) * (n as f64).powi(r as i32 - 1));
            for (i, entry) in grad.entries().iter().enumerate() {
                let expect = if i == 1 { constant } else { re(0.0) };
                worst_rel = worst_rel.max((entry - expect).norm() / constant.norm());
            }
        }

        // losing the locus: the aligned period-r orbit pairs with the zero
        // fixed point, and (for r > 2) with a second aligned orbit
        let g = match MonicPoly::pure_power(n as usize) {
            Ok(g) => g,
            Err(e) => return (false, e.to_string()),
        };
        let sig_r1 = OrbitSignature::new(vec![r, 1], false).expect("valid signature");
        match z0_membership(&g, &sig_r1, &budget_cfg) {
            Ok(report) if report.verdict == Verdict::NotMember => {}
            Ok(report) => {
                return (
                    false,
                    format!("({r},1) at n={n} gave {:?}, expected not_member", report.verdict),
                )
            }
            Err(e) => return (false, format!("membership scan ({r},1) failed: {e}")),
        }
        if r >= 3 {
            let sig_rr = OrbitSignature::new(vec![r, r], false).expect("valid signature");
            match z0_membership(&g, &sig_rr, &budget_cfg) {
                Ok(report) if report.verdict == Verdict::NotMember => {}
                Ok(report) => {
                    return (
                        false,
                        format!("({r},{r}) at n={n} gave {:?}, expected not_member", report.verdict),
                    )
                }
                Err(e) => return (false, format!("membership scan ({r},{r}) failed: {e}")),
            }
        }
    }
    (
        worst_rel < 1e-9,
        format!(
            "congruences hold to r=12; primitive-orbit gradients within {worst_rel:.2e} of the aligned closed form (<1e-9); membership lost for (r,1) r=2..4 and (r,r) r=3..4"
        ),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All partitions of `total` into parts >= min_part, each partition sorted
/// descending.
fn partitions_with_min_part(total: u32, min_part: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, min_part: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= min_part {
            current.push(part);
            rec(remaining - part, part, min_part, current, out);
            current.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    rec(total, total, min_part, &mut current, &mut out);
    out
}

/// The independence sweeps over exact cyclotomic orbits: every tuple with
/// period sum at most n (parts >= 2) is independent, and the zero-fixed-point
/// vector can be adjoined whenever the sum stays below n - 1.
fn check_independence_sweeps(cfg: &RunConfig) -> (bool, String) {
    let mut sweep_cfg = cfg.clone();
    sweep_cfg.budget = 5_000;
    sweep_cfg.seed = Some(0x5EED);

    let mut signatures = 0usize;
    // parts >= 2, sum <= n
    for n in 3..=10u32 {
        for total in 2..=n {
            for periods in partitions_with_min_part(total, 2) {
                let signature = OrbitSignature::new(periods.clone(), false).expect("valid");
                signatures += 1;
                match all_monomial_tuples_independent(n, &signature, &sweep_cfg) {
                    Ok(true) => {}
                    Ok(false) => {
                        return (
                            false,
                            format!("dependent tuple found at n={n}, periods {periods:?}"),
                        )
                    }
                    Err(e) => return (false, format!("sweep failed at n={n} {periods:?}: {e}")),
                }
            }
        }
    }
    // adjoined zero vector, sum <= n - 2, parts >= 1
    for n in 4..=10u32 {
        for total in 1..=(n - 2) {
            for periods in partitions_with_min_part(total, 1) {
                let signature = OrbitSignature::new(periods.clone(), true).expect("valid");
                signatures += 1;
                match all_monomial_tuples_independent(n, &signature, &sweep_cfg) {
                    Ok(true) => {}
                    Ok(false) => {
                        return (
                            false,
                            format!("dependent tuple with zero vector at n={n}, periods {periods:?}"),
                        )
                    }
                    Err(e) => return (false, format!("sweep failed at n={n} {periods:?}+0: {e}")),
                }
            }
        }
    }
    (
        true,
        format!("{signatures} signatures swept (budget 5000 tuples each), every tested tuple independent at rank tolerance {:.0e}", cfg.rank_tol),
    )
}

/// Analytic gradients against the central-difference oracle on random
/// polynomials; failures must be flagged preconditions, not disagreements.
/// A divergent difference stencil is retried with smaller steps (the
/// documented recovery), and a multiplier-1 orbit falls through to the next
/// orbit of the same exact period.
fn check_gradient_oracle(cfg: &RunConfig) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF0);
    let mut agreed = 0usize;
    let mut flags: Vec<String> = Vec::new();
    let mut disagreements = Vec::new();
    let total = 100usize;
    for case in 0..total {
        let n = [2usize, 3, 4][rng.gen_range(0..3)];
        let r = rng.gen_range(1..=3u32);
        let coeffs: Vec<Complex64> = (0..n).map(|_| disc_sample(&mut rng, 0.5)).collect();
        let g = MonicPoly::new(coeffs).expect("finite coefficients");
        let spectrum = match periodic_spectrum(&g, r, cfg) {
            Ok(s) if s.in_znr => s,
            Ok(_) => {
                flags.push(format!("case {case}: outside the square-free locus"));
                continue;
            }
            Err(e) => {
                flags.push(format!("case {case}: spectrum failed ({e})"));
                continue;
            }
        };
        let mut verdict: Option<std::result::Result<f64, String>> = None;
        'orbits: for orbit in spectrum.orbits_of_period(r).take(3) {
            let analytic = match multiplier_gradient(&g, orbit, r) {
                Ok(v) => v,
                Err(Error::SimpleRootViolation { .. }) => {
                    verdict.get_or_insert(Err("multiplier-1 cycle".into()));
                    continue 'orbits;
                }
                Err(e) => return (false, format!("case {case}: unexpected failure {e}")),
            };
            for h in [DEFAULT_FD_STEP, 1e-7, 3e-8] {
                match finite_difference_gradient(&g, orbit, r, h) {
                    Ok(fd) => {
                        let rel = relative_difference(analytic.entries(), fd.entries());
                        verdict = Some(Ok(rel));
                        break 'orbits;
                    }
                    Err(Error::NewtonDivergence { .. }) => {
                        verdict = Some(Err("difference stencil diverged".into()));
                    }
                    Err(e) => return (false, format!("case {case}: unexpected failure {e}")),
                }
            }
        }
        match verdict {
            Some(Ok(rel)) if rel <= cfg.gradient_tol => agreed += 1,
            Some(Ok(rel)) => {
                disagreements.push(format!("case {case} (n={n}, r={r}): rel {rel:.2e}"))
            }
            Some(Err(reason)) => flags.push(format!("case {case}: {reason}")),
            None => flags.push(format!("case {case}: no orbit of exact period {r}")),
        }
    }
    let passed = agreed + flags.len() == total && agreed >= 95;
    (
        passed,
        format!(
            "{agreed}/{total} agreed within {:.0e}, {} flagged skips{}{}, {} unexplained{}{}",
            cfg.gradient_tol,
            flags.len(),
            if flags.is_empty() { "" } else { ": " },
            flags.join("; "),
            disagreements.len(),
            if disagreements.is_empty() { "" } else { ": " },
            disagreements.join("; ")
        ),
    )
}

/// The exact-period count table: positivity, the divisibility by
/// nm/gcd(n,m), the lower bound on orbit counts, and a brute-force
/// cross-check on roots of unity up to a million points.
fn check_nu_table(_cfg: &RunConfig) -> (bool, String) {
    let mut cross_checked = 0usize;
    for n in 2..=10u32 {
        for m in 1..=12u32 {
            let value = match nu(n, m) {
                Ok(v) => v,
                Err(e) => return (false, format!("nu({n},{m}) failed: {e}")),
            };
            if value <= 0 {
                return (false, format!("nu({n},{m}) = {value} not positive"));
            }
            let q = (n as i64 * m as i64) / gcd(n as u64, m as u64) as i64;
            if value % q != 0 {
                return (false, format!("nu({n},{m}) = {value} not divisible by {q}"));
            }
            let orbits = match orbit_count(n, m) {
                Ok(v) => v,
                Err(e) => return (false, format!("orbit_count({n},{m}) failed: {e}")),
            };
            if orbits * (m as i64) < (n as i64) {
                return (false, format!("orbit count {orbits} below n/m at ({n},{m})"));
            }
            // brute force on the actual roots of unity when they fit
            let points = (n as u128).pow(m);
            if points <= 1_000_000 {
                let modulus = (points - 1) as u64;
                let mut count: i64 = if m == 1 { 1 } else { 0 }; // the fixed point 0
                for k in 0..modulus {
                    let mut j = ((n as u64 as u128 * k as u128) % modulus as u128) as u64;
                    let mut len = 1u32;
                    while j != k {
                        j = ((n as u64 as u128 * j as u128) % modulus as u128) as u64;
                        len += 1;
                        if len > m {
                            break;
                        }
                    }
                    if len == m && j == k {
                        count += 1;
                    }
                }
                if count != value {
                    return (
                        false,
                        format!("brute-force count {count} != nu({n},{m}) = {value}"),
                    );
                }
                cross_checked += 1;
            }
        }
    }
    (
        true,
        format!("108 (n,m) pairs verified; {cross_checked} cross-checked against brute-force orbit walks"),
    )
}

/// Constructed multiplier-one fixed points must be flagged as multiple roots
/// at every iteration depth.
fn check_parabolic_propagation(cfg: &RunConfig) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE);
    for case in 0..20usize {
        let n = if case % 2 == 0 { 2usize } else { 3 };
        let beta = disc_sample(&mut rng, 0.6);
        // solve g(beta) = beta, g'(beta) = 1 for a_0, a_1 given the rest
        let mut coeffs = vec![re(0.0); n];
        for c in coeffs.iter_mut().skip(2) {
            *c = disc_sample(&mut rng, 0.5);
        }
        let mut high_deriv = beta.powu(n as u32 - 1) * n as f64;
        let mut high_value = beta.powu(n as u32);
        for (i, c) in coeffs.iter().enumerate().skip(2) {
            high_deriv += c * beta.powu(i as u32 - 1) * i as f64;
            high_value += c * beta.powu(i as u32);
        }
        coeffs[1] = re(1.0) - high_deriv;
        coeffs[0] = beta - high_value - coeffs[1] * beta;
        let g = MonicPoly::new(coeffs).expect("finite coefficients");
        // construction sanity
        let (value, deriv, _) = g.eval_with_derivs(beta);
        if (value - beta).norm() > 1e-10 || (deriv - re(1.0)).norm() > 1e-10 {
            return (false, format!("case {case}: construction drifted"));
        }
        for r in 2..=4u32 {
            match multiple_root_propagation_check(&g, r, cfg) {
                Ok(true) => {}
                Ok(false) => {
                    return (
                        false,
                        format!("case {case}: multiple root not propagated to r={r}"),
                    )
                }
                Err(e) => return (false, format!("case {case}, r={r}: {e}")),
            }
        }
    }
    (true, "20 multiplier-one constructions propagate at r=2..4".into())
}

/// Random distinct-node instances of the power-sum system: nonsingular after
/// the conditioning filter, and a random nonzero weight vector always leaves
/// a visible power sum.
fn check_power_sum_vandermonde(_cfg: &RunConfig) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9A);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut worst_sum = f64::INFINITY;
    for case in 0..200usize {
        let d = rng.gen_range(1..=10usize);
        let mut nodes: Vec<Complex64> = Vec::with_capacity(d);
        while nodes.len() < d {
            let radius = 0.5 + rng.gen::<f64>();
            let z = Complex64::from_polar(radius, rng.gen::<f64>() * 2.0 * std::f64::consts::PI);
            if nodes.iter().all(|w| (w - z).norm() > 0.05) {
                nodes.push(z);
            }
        }
        let mut weights: Vec<Complex64> = (0..d).map(|_| disc_sample(&mut rng, 1.0)).collect();
        let norm = vec_norm(&weights);
        if norm < 1e-3 {
            weights[0] += re(1.0);
        }
        let norm = vec_norm(&weights);
        for w in weights.iter_mut() {
            *w /= norm;
        }
        match newton_vanishing_check(&nodes, &weights) {
            Ok(true) => {}
            Ok(false) => return (false, format!("case {case}: system reported singular")),
            Err(Error::IllConditioned { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return (false, format!("case {case}: {e}")),
        }
        let max_sum = power_sums(&nodes, &weights)
            .iter()
            .map(|s| s.norm())
            .fold(0.0f64, f64::max);
        worst_sum = worst_sum.min(max_sum);
        if max_sum <= 1e-10 {
            return (
                false,
                format!("case {case}: all power sums below 1e-10 for unit weights"),
            );
        }
        checked += 1;
    }
    (
        true,
        format!("{checked} instances nonsingular with visible power sums (min of max |sum| {worst_sum:.2e}), {skipped} skipped by the conditioning filter"),
    )
}

/// Membership must survive coefficient perturbations of size 1e-8.
fn check_perturbation_stability(cfg: &RunConfig) -> (bool, String) {
    let instances: [(u32, &[u32]); 10] = [
        (4, &[2, 2]),
        (5, &[2, 2]),
        (5, &[2, 3]),
        (6, &[2, 2]),
        (6, &[2, 3]),
        (6, &[3, 3]),
        (6, &[2, 2, 2]),
        (7, &[2, 2]),
        (7, &[3, 3]),
        (8, &[2, 2]),
    ];
    for (idx, (n, periods)) in instances.iter().enumerate() {
        let g = match MonicPoly::pure_power(*n as usize) {
            Ok(g) => g,
            Err(e) => return (false, e.to_string()),
        };
        let signature = OrbitSignature::new(periods.to_vec(), false).expect("valid");
        let mut instance_cfg = cfg.clone();
        instance_cfg.seed = Some(0x0B + idx as u64);
        match openness_proxy(&g, &signature, 1e-8, 20, &instance_cfg) {
            Ok(true) => {}
            Ok(false) => {
                return (
                    false,
                    format!("membership lost under perturbation at n={n}, periods {periods:?}"),
                )
            }
            Err(e) => return (false, format!("proxy failed at n={n} {periods:?}: {e}")),
        }
    }
    (true, "10 member instances stable under 20 perturbations of size 1e-8 each".into())
}
