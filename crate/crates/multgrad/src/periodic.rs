//! Periodic points of z -> g(z): numerical root extraction, orbit grouping
//! with exact periods, square-freeness tests, and Moebius orbit counts.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::json::{complex_pair, complex_vec};
use crate::polynomial::{period_polynomial, DensePoly, MonicPoly};

/// A cycle of z -> g(z). Points are ordered so that `points[j+1] = g(points[j])`
/// and `points[0]` is the lexicographically smallest (re, im) key, rounded to
/// ten decimal digits, for reproducible reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Orbit {
    #[serde(with = "complex_vec")]
    points: Vec<Complex64>,
    exact_period: u32,
    #[serde(with = "complex_pair")]
    multiplier: Complex64,
    separation: f64,
}

impl Orbit {
    /// Build an orbit from an explicit cycle. Validates that consecutive
    /// points map to each other under g, that the cycle closes, and that no
    /// proper rotation closes earlier (the length is the exact period).
    pub fn from_cycle(g: &MonicPoly, points: Vec<Complex64>, separation: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("orbit must contain a point".into()));
        }
        let m = points.len();
        let scale = 1.0 + points.iter().map(|p| p.norm()).fold(0.0, f64::max);
        for j in 0..m {
            let image = g.eval(points[j]);
            let target = points[(j + 1) % m];
            if (image - target).norm() > 1e-6 * scale {
                return Err(Error::InvalidInput(format!(
                    "orbit point {j} does not map to its successor (residual {:.3e})",
                    (image - target).norm()
                )));
            }
        }
        for j in 1..m {
            if (points[j] - points[0]).norm() <= 1e-9 * scale {
                return Err(Error::InvalidInput(
                    "cycle revisits its start before the stated period".into(),
                ));
            }
        }
        let gp = g.derivative();
        let multiplier = points.iter().map(|&p| gp.eval(p)).product::<Complex64>();
        let mut orbit = Orbit {
            points,
            exact_period: m as u32,
            multiplier,
            separation,
        };
        orbit.canonicalize();
        Ok(orbit)
    }

    /// Locate the orbit of the periodic point nearest `seed`: Newton-refine on
    /// g^(or)(x) - x, then follow images to read off the exact period.
    pub fn locate(g: &MonicPoly, seed: Complex64, r: u32) -> Result<Self> {
        let beta = newton_periodic(g, r, seed, 50)?;
        let scale = 1.0 + beta.norm();
        let mut d = 0;
        for m in divisors(r) {
            let image = iterate_value(g, beta, m);
            if (image - beta).norm() <= 1e-6 * scale {
                d = m;
                break;
            }
        }
        if d == 0 {
            return Err(Error::NewtonDivergence { step: 50 });
        }
        let mut points = Vec::with_capacity(d as usize);
        let mut u = beta;
        for _ in 0..d {
            points.push(u);
            u = g.eval(u);
        }
        Orbit::from_cycle(g, points, f64::INFINITY)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Canonical representative: the first stored point.
    pub fn representative(&self) -> Complex64 {
        self.points[0]
    }

    pub fn exact_period(&self) -> u32 {
        self.exact_period
    }

    /// Product of g'(p) over the cycle, the derivative of the m-fold iterate
    /// at any orbit point.
    pub fn multiplier(&self) -> Complex64 {
        self.multiplier
    }

    /// Minimal distance from this orbit to the other roots found alongside it
    /// (infinite when the orbit was located in isolation).
    pub fn separation(&self) -> f64 {
        self.separation
    }

    fn canonical_key(z: Complex64) -> (f64, f64) {
        ((z.re * 1e10).round(), (z.im * 1e10).round())
    }

    fn canonicalize(&mut self) {
        let start = self
            .points
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let ka = Orbit::canonical_key(**a);
                let kb = Orbit::canonical_key(**b);
                ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
            })
            .map(|(j, _)| j)
            .unwrap_or(0);
        self.points.rotate_left(start);
    }
}

/// All orbits of period dividing r for one polynomial, plus the verdict on
/// whether g^(or)(x) - x is square-free.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PeriodicSpectrum {
    pub base: MonicPoly,
    pub r: u32,
    pub orbits: Vec<Orbit>,
    pub in_znr: bool,
    /// Minimal pairwise distance among the found roots, the evidence behind
    /// `in_znr`.
    pub min_separation: f64,
}

impl PeriodicSpectrum {
    /// Orbits whose exact period is exactly `m`.
    pub fn orbits_of_period(&self, m: u32) -> impl Iterator<Item = &Orbit> {
        self.orbits.iter().filter(move |o| o.exact_period == m)
    }

    /// Total number of periodic points across all orbits.
    pub fn point_count(&self) -> usize {
        self.orbits.iter().map(|o| o.points.len()).sum()
    }
}

fn horner_with_deriv(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Sum of |c_i| |z|^i, the natural scale of rounding noise in a Horner pass.
fn eval_scale(abs_coeffs: &[f64], zn: f64) -> f64 {
    let mut acc = 0.0;
    for a in abs_coeffs.iter().rev() {
        acc = acc * zn + a;
    }
    acc
}

/// Overflow-safe complex division: scale the denominator to unit size first
/// so its squared norm cannot overflow.
fn safe_div(a: Complex64, b: Complex64) -> Complex64 {
    let scale = b.re.abs().max(b.im.abs());
    if scale == 0.0 || !scale.is_finite() {
        return Complex64::new(0.0, 0.0);
    }
    (a / scale) / (b / scale)
}

/// Initial guesses from the Newton polygon: the upper convex hull of
/// (i, log|c_i|) partitions the index range into segments whose slopes
/// estimate the root moduli, and each segment contributes that many starting
/// points on its circle. Angles within a circle are offset by 0.4 rad to
/// break the symmetric stalls of x^N - x.
fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let hull_points: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(i, c)| (i, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &hull_points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 - a.0) as f64 * (p.1 - b.1) - (b.1 - a.1) * (p.0 - b.0) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut guesses = Vec::with_capacity(deg);
    for (segment, w) in hull.windows(2).enumerate() {
        let (i1, l1) = w[0];
        let (i2, l2) = w[1];
        let count = i2 - i1;
        let radius = ((l1 - l2) / count as f64).exp().clamp(1e-12, 1e12);
        for t in 0..count {
            let angle = 2.0 * std::f64::consts::PI * t as f64 / count as f64
                + 0.4
                + 0.35 * segment as f64;
            guesses.push(Complex64::from_polar(radius, angle));
        }
    }
    guesses
}

/// All complex roots of p, with multiplicity, by Aberth-Ehrlich simultaneous
/// iteration from Newton-polygon starting circles. Roots at the origin are
/// deflated exactly first (zero low-order coefficients).
pub fn find_roots(p: &DensePoly, cfg: &RunConfig) -> Result<Vec<Complex64>> {
    let Some(deg) = p.degree() else {
        return Err(Error::InvalidInput(
            "cannot extract roots of the zero polynomial".into(),
        ));
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg > cfg.degree_cap {
        return Err(Error::DegreeCapExceeded {
            requested: deg as u128,
            cap: cfg.degree_cap,
        });
    }

    // deflate exact zero roots
    let zeros = p.coeffs().iter().take_while(|c| c.norm() == 0.0).count();
    let coeffs = &p.coeffs()[zeros..];
    let deg = coeffs.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if deg == 0 {
        return Ok(roots);
    }

    let abs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
    let coeff_norm = abs.iter().fold(0.0f64, |a, &b| a.max(b));

    let mut points = initial_guesses(coeffs);
    debug_assert_eq!(points.len(), deg);
    let fallback_radius = 1.0 + abs[..deg].iter().fold(0.0f64, |a, &b| a.max(b)) / abs[deg];

    // converged when the residual is indistinguishable from Horner rounding
    let stop = |value: Complex64, zn: f64| -> bool {
        let noise = 4.0 * (deg as f64 + 1.0) * f64::EPSILON * eval_scale(&abs, zn);
        noise.is_finite() && value.norm() <= noise.max(f64::MIN_POSITIVE)
    };

    for _ in 0..cfg.max_root_iters {
        let mut moved = false;
        for k in 0..deg {
            let zk = points[k];
            if !zk.re.is_finite() || !zk.im.is_finite() {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 1.1;
                points[k] = Complex64::from_polar(0.5 * fallback_radius, angle);
                moved = true;
                continue;
            }
            let (v, dv) = horner_with_deriv(coeffs, zk);
            if !v.re.is_finite() || !v.im.is_finite() {
                points[k] = zk * 0.5;
                moved = true;
                continue;
            }
            if stop(v, zk.norm()) {
                continue;
            }
            moved = true;
            let newton = if dv.norm() > 0.0 {
                safe_div(v, dv)
            } else {
                Complex64::new(f64::EPSILON.sqrt(), 0.0)
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &zj) in points.iter().enumerate() {
                if j != k {
                    let diff = zk - zj;
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 1e-300 {
                safe_div(newton, denom)
            } else {
                newton
            };
            points[k] = zk - step;
        }
        if !moved {
            break;
        }
    }

    // Newton polish on the expanded coefficients
    for z in points.iter_mut() {
        let mut current = *z;
        let (mut v, _) = horner_with_deriv(coeffs, current);
        for _ in 0..30 {
            if stop(v, current.norm()) {
                break;
            }
            let (_, dv) = horner_with_deriv(coeffs, current);
            if dv.norm() == 0.0 {
                break;
            }
            let candidate = current - safe_div(v, dv);
            let (cv, _) = horner_with_deriv(coeffs, candidate);
            if cv.norm() >= v.norm() {
                break;
            }
            current = candidate;
            v = cv;
        }
        *z = current;
    }

    for &z in &points {
        let (v, _) = horner_with_deriv(coeffs, z);
        if !(v.norm() <= cfg.root_residual * coeff_norm || stop(v, z.norm())) {
            return Err(Error::NoConvergence {
                iterations: cfg.max_root_iters,
            });
        }
    }
    roots.extend(points);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// g^(om)(z) by value iteration.
fn iterate_value(g: &MonicPoly, z: Complex64, m: u32) -> Complex64 {
    let mut u = z;
    for _ in 0..m {
        u = g.eval(u);
    }
    u
}

/// F(z) and F'(z) for F = g^(or)(x) - x, via the derivative chain rule; never
/// touches the degree-n^r coefficients.
pub(crate) fn period_map_with_deriv(g: &MonicPoly, z: Complex64, r: u32) -> (Complex64, Complex64) {
    let mut u = z;
    let mut chain = Complex64::new(1.0, 0.0);
    for _ in 0..r {
        let (v, d, _) = g.eval_with_derivs(u);
        chain *= d;
        u = v;
    }
    (u - z, chain - Complex64::new(1.0, 0.0))
}

/// Newton iteration on g^(or)(x) - x from `seed`.
pub(crate) fn newton_periodic(
    g: &MonicPoly,
    r: u32,
    seed: Complex64,
    max_steps: usize,
) -> Result<Complex64> {
    let mut z = seed;
    for step in 0..max_steps {
        let (f, df) = period_map_with_deriv(g, z, r);
        let scale = 1.0 + z.norm();
        if f.norm() <= 1e-12 * scale {
            return Ok(z);
        }
        if df.norm() < 1e-300 || !f.re.is_finite() || !f.im.is_finite() {
            return Err(Error::NewtonDivergence { step });
        }
        let delta = f / df;
        if delta.norm() > 1e3 * scale {
            return Err(Error::NewtonDivergence { step });
        }
        z -= delta;
    }
    let (f, _) = period_map_with_deriv(g, z, r);
    if f.norm() <= 1e-12 * (1.0 + z.norm()) {
        Ok(z)
    } else {
        Err(Error::NewtonDivergence { step: max_steps })
    }
}

/// Value-level polish of a root of g^(or)(x) - x. Near parabolic points the
/// expanded-coefficient residual floor is far above the value-level one, so
/// this step is what makes double roots collapse below the multiplicity
/// tolerance.
fn polish_periodic(g: &MonicPoly, r: u32, z: Complex64) -> Complex64 {
    let mut current = z;
    let (mut f, _) = period_map_with_deriv(g, current, r);
    for _ in 0..40 {
        let (_, df) = period_map_with_deriv(g, current, r);
        if df.norm() < 1e-300 {
            break;
        }
        let candidate = current - f / df;
        let (cf, _) = period_map_with_deriv(g, candidate, r);
        if cf.norm() >= f.norm() {
            break;
        }
        current = candidate;
        f = cf;
    }
    current
}

/// The refined periodic points of period dividing r: expanded-coefficient
/// Aberth extraction followed by value-level Newton polish.
pub(crate) fn periodic_points(g: &MonicPoly, r: u32, cfg: &RunConfig) -> Result<Vec<Complex64>> {
    let f = period_polynomial(g, r, cfg.degree_cap)?;
    let roots = find_roots(&f, cfg)?;
    Ok(roots
        .into_iter()
        .map(|z| polish_periodic(g, r, z))
        .collect())
}

fn min_pairwise_distance(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            best = best.min((points[i] - points[j]).norm());
        }
    }
    best
}

pub(crate) fn divisors(r: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=r).filter(|m| r.is_multiple_of(*m)).collect();
    out.sort_unstable();
    out
}

/// Group the periodic points of period dividing r into orbits with exact
/// periods assigned by minimal return over the divisors of r, and decide
/// square-freeness of g^(or)(x) - x by the minimal pairwise root distance.
pub fn periodic_spectrum(g: &MonicPoly, r: u32, cfg: &RunConfig) -> Result<PeriodicSpectrum> {
    if r == 0 {
        return Err(Error::InvalidInput("period must be >= 1".into()));
    }
    let points = periodic_points(g, r, cfg)?;
    let separation = min_pairwise_distance(&points);
    let in_znr = separation > cfg.multiplicity_tol;

    // Successor matching: g(z_i) against the found-root list.
    let mut successor = vec![0usize; points.len()];
    for (i, &z) in points.iter().enumerate() {
        let image = g.eval(z);
        let (best, dist) = points
            .iter()
            .enumerate()
            .map(|(j, &w)| (j, (image - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty root list");
        if in_znr && dist > 0.5 * separation {
            return Err(Error::AmbiguousGrouping {
                distance: dist,
                separation,
            });
        }
        successor[i] = best;
    }

    let gp = g.derivative();
    let mut visited = vec![false; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if visited[start] {
            continue;
        }
        // Walk to a cycle (immediately on one unless clusters collapsed).
        let mut seen = vec![start];
        let mut cursor = successor[start];
        while !seen.contains(&cursor) && !visited[cursor] {
            seen.push(cursor);
            cursor = successor[cursor];
        }
        if visited[cursor] {
            for &i in &seen {
                visited[i] = true;
            }
            continue;
        }
        let cycle_start = seen.iter().position(|&i| i == cursor).unwrap();
        let cycle: Vec<usize> = seen[cycle_start..].to_vec();
        for &i in &seen {
            visited[i] = true;
        }
        let m = cycle.len() as u32;
        if in_znr && !r.is_multiple_of(m) {
            return Err(Error::AmbiguousGrouping {
                distance: f64::NAN,
                separation,
            });
        }
        let orbit_points: Vec<Complex64> = cycle.iter().map(|&i| points[i]).collect();
        let multiplier = orbit_points.iter().map(|&p| gp.eval(p)).product();
        let orbit_sep = orbit_points
            .iter()
            .map(|&p| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| !cycle.contains(j))
                    .map(|(_, &w)| (p - w).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::INFINITY, f64::min);
        let mut orbit = Orbit {
            points: orbit_points,
            exact_period: m,
            multiplier,
            separation: orbit_sep,
        };
        orbit.canonicalize();
        orbits.push(orbit);
    }

    orbits.sort_by(|a, b| {
        let ka = Orbit::canonical_key(a.representative());
        let kb = Orbit::canonical_key(b.representative());
        a.exact_period
            .cmp(&b.exact_period)
            .then(ka.0.total_cmp(&kb.0))
            .then(ka.1.total_cmp(&kb.1))
    });

    Ok(PeriodicSpectrum {
        base: g.clone(),
        r,
        orbits,
        in_znr,
        min_separation: separation,
    })
}

/// Moebius function of m.
fn mobius(mut m: u32) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if m > 1 {
        mu = -mu;
    }
    mu
}

/// The number of points of exact period m for a generic degree-n map:
/// Moebius inversion of m' -> n^(m').
pub fn nu(n: u32, m: u32) -> Result<i64> {
    if n < 2 || m == 0 {
        return Err(Error::InvalidInput(format!(
            "nu requires n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    let mut total: i128 = 0;
    for d in divisors(m) {
        let mut power: i128 = 1;
        for _ in 0..d {
            power = power.checked_mul(n as i128).ok_or_else(|| {
                Error::Overflow(format!("n^m does not fit in 128-bit arithmetic: {n}^{m}"))
            })?;
        }
        total += mobius(m / d) as i128 * power;
    }
    if total <= 0 || total > i64::MAX as i128 {
        return Err(Error::Overflow(format!(
            "nu({n},{m}) = {total} outside the 64-bit range"
        )));
    }
    Ok(total as i64)
}

/// Number of length-m orbits, nu(n, m) / m. The divisibility is exact and the
/// count is at least n/m.
pub fn orbit_count(n: u32, m: u32) -> Result<i64> {
    let count = nu(n, m)?;
    assert_eq!(
        count % m as i64,
        0,
        "nu({n},{m}) = {count} must be divisible by m"
    );
    let orbits = count / m as i64;
    assert!(
        orbits * m as i64 >= n as i64,
        "orbit count {orbits} below n/m for n={n}, m={m}"
    );
    Ok(orbits)
}

/// Detected multiple roots of g^(om)(x)-x, as centroids of root clusters
/// closer than the multiplicity tolerance.
fn multiple_root_centroids(points: &[Complex64], tol: f64) -> Vec<Complex64> {
    let mut cluster_of: Vec<usize> = (0..points.len()).collect();
    fn find(cluster_of: &mut Vec<usize>, i: usize) -> usize {
        if cluster_of[i] != i {
            let root = find(cluster_of, cluster_of[i]);
            cluster_of[i] = root;
        }
        cluster_of[i]
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if (points[i] - points[j]).norm() <= tol {
                let (a, b) = (find(&mut cluster_of, i), find(&mut cluster_of, j));
                if a != b {
                    cluster_of[a] = b;
                }
            }
        }
    }
    let mut sums: std::collections::BTreeMap<usize, (Complex64, usize)> = Default::default();
    for (i, &point) in points.iter().enumerate() {
        let root = find(&mut cluster_of, i);
        let entry = sums.entry(root).or_insert((Complex64::new(0.0, 0.0), 0));
        entry.0 += point;
        entry.1 += 1;
    }
    sums.values()
        .filter(|(_, count)| *count >= 2)
        .map(|(sum, count)| sum / *count as f64)
        .collect()
}

/// Multiple roots propagate from divisor levels: every detected multiple root
/// of g^(om)(x)-x for m | r must also be detected as a multiple root of
/// g^(or)(x)-x.
pub fn multiple_root_propagation_check(g: &MonicPoly, r: u32, cfg: &RunConfig) -> Result<bool> {
    let top = multiple_root_centroids(&periodic_points(g, r, cfg)?, cfg.multiplicity_tol);
    for m in divisors(r) {
        if m == r {
            continue;
        }
        let level = multiple_root_centroids(&periodic_points(g, m, cfg)?, cfg.multiplicity_tol);
        for z in &level {
            let propagated = top.iter().any(|w| (z - w).norm() <= 1e-5);
            if !propagated {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
