//! Exact computations at the pure power map g(x) = x^n.
//!
//! Periodic points of z -> z^n of period dividing r are 0 together with the
//! (n^r - 1)th roots of unity; the latter are represented by their integer
//! index k (alpha = exp(2 pi i k / (n^r - 1))), so orbit structure and exact
//! periods are pure modular arithmetic. Gradient entries have a closed form
//!
//!   q_{r,k}(alpha) = -(n-k) n^(r-1) sum_{i=1..r} (1/alpha^(n^(i-1)))^(n-k)
//!
//! materialised in floating point only at evaluation time.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradient::multiplier_gradient_at_point;
use crate::json::complex_vec;
use crate::polynomial::{DensePoly, MonicPoly};

/// A periodic point of z -> z^n among the (n^r - 1)th roots of unity,
/// stored by integer index, plus the distinguished fixed point 0 (flagged).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnityPoint {
    n: u32,
    r: u32,
    /// n^r - 1; alpha = exp(2 pi i index / modulus).
    modulus: u64,
    index: u64,
    /// least d with n^d * index = index (mod modulus); divides r.
    period: u32,
    /// the superattracting fixed point 0 rather than a root of unity
    zero: bool,
}

fn power_modulus(n: u32, r: u32) -> Result<u64> {
    if n < 2 || r == 0 {
        return Err(Error::InvalidInput(format!(
            "unity points need n >= 2 and r >= 1, got n={n}, r={r}"
        )));
    }
    let mut m: u128 = 1;
    for _ in 0..r {
        m = m.saturating_mul(n as u128);
    }
    let m = m - 1;
    if m >= (1u128 << 63) {
        return Err(Error::Overflow(format!(
            "index modulus n^r - 1 = {m} exceeds the 63-bit bound"
        )));
    }
    Ok(m as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Orbit length of `index` under k -> n k (mod modulus).
fn orbit_length(n: u32, index: u64, modulus: u64) -> u32 {
    let mut j = mul_mod(n as u64, index, modulus);
    let mut len = 1;
    while j != index {
        j = mul_mod(n as u64, j, modulus);
        len += 1;
    }
    len
}

impl UnityPoint {
    /// The root of unity with the given index among the (n^r - 1)th roots.
    pub fn new(n: u32, r: u32, index: u64) -> Result<Self> {
        let modulus = power_modulus(n, r)?;
        if index >= modulus {
            return Err(Error::InvalidInput(format!(
                "index {index} out of range for modulus {modulus}"
            )));
        }
        let period = orbit_length(n, index, modulus);
        debug_assert_eq!(r % period, 0);
        Ok(UnityPoint {
            n,
            r,
            modulus,
            index,
            period,
            zero: false,
        })
    }

    /// The distinguished fixed point 0 of z -> z^n (not a root of unity).
    pub fn zero(n: u32, r: u32) -> Result<Self> {
        let modulus = power_modulus(n, r)?;
        Ok(UnityPoint {
            n,
            r,
            modulus,
            index: 0,
            period: 1,
            zero: true,
        })
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn exact_period(&self) -> u32 {
        self.period
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// The complex value of the point.
    pub fn value(&self) -> Complex64 {
        if self.zero {
            Complex64::new(0.0, 0.0)
        } else {
            unit_root(self.index, self.modulus)
        }
    }

    /// Indices along the orbit k, nk, n^2 k, ... (mod modulus).
    pub fn orbit_indices(&self) -> Vec<u64> {
        if self.zero {
            return vec![0];
        }
        let mut out = Vec::with_capacity(self.period as usize);
        let mut j = self.index;
        for _ in 0..self.period {
            out.push(j);
            j = mul_mod(self.n as u64, j, self.modulus);
        }
        out
    }

    /// alpha^e for a (possibly huge) integer exponent, reduced mod modulus.
    fn power(&self, exponent: i128) -> Complex64 {
        let m = self.modulus as i128;
        let e = exponent.rem_euclid(m) as u64;
        unit_root(mul_mod(self.index, e, self.modulus), self.modulus)
    }
}

fn unit_root(k: u64, modulus: u64) -> Complex64 {
    Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * k as f64 / modulus as f64,
    )
}

/// One gradient of the multiplier of the r-fold iterate at g = x^n,
/// with entries in the exact closed form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonomialGradient {
    #[serde(with = "complex_vec")]
    entries: Vec<Complex64>,
    point: UnityPoint,
}

impl MonomialGradient {
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn point(&self) -> &UnityPoint {
        &self.point
    }
}

/// Entry k of the gradient at level r (which must be a multiple of the
/// point's exact period): -(n-k) n^(r-1) sum_{i=1..r} alpha^(-(n^i - n^(i-1) k)),
/// all exponents reduced mod n^r - 1 in integer arithmetic.
pub fn gradient_entry_at(point: &UnityPoint, k: u32, r: u32) -> Result<Complex64> {
    if point.zero {
        return Err(Error::InvalidInput(
            "closed-form entries are defined for roots of unity, not the zero point".into(),
        ));
    }
    let n = point.n;
    if k >= n {
        return Err(Error::InvalidInput(format!(
            "coefficient index {k} out of range for degree {n}"
        )));
    }
    if r == 0 || !r.is_multiple_of(point.period) {
        return Err(Error::InvalidInput(format!(
            "level {r} is not a multiple of the point's exact period {}",
            point.period
        )));
    }
    let m = point.modulus as i128;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n_pow = 1i128; // n^(i-1) mod m
    for _ in 1..=r {
        // exponent -(n^i - n^(i-1) k) = -n^(i-1) (n - k)
        let e = -(n_pow * (n as i128 - k as i128));
        sum += point.power(e);
        n_pow = (n_pow * n as i128).rem_euclid(m);
    }
    let scale = -((n - k) as f64) * (n as f64).powi(r as i32 - 1);
    Ok(sum * scale)
}

/// Entry k at the point's own level.
pub fn gradient_entry(point: &UnityPoint, k: u32) -> Result<Complex64> {
    gradient_entry_at(point, k, point.r)
}

/// The full gradient vector at level r. For the distinguished zero point the
/// closed form does not apply and the value is delegated to the general
/// implicit-function machinery at g = x^n.
pub fn gradient_at(point: &UnityPoint, r: u32) -> Result<MonomialGradient> {
    let entries = if point.zero {
        let g = MonicPoly::pure_power(point.n as usize)?;
        multiplier_gradient_at_point(&g, Complex64::new(0.0, 0.0), r)?
    } else {
        (0..point.n)
            .map(|k| gradient_entry_at(point, k, r))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(MonomialGradient {
        entries,
        point: point.clone(),
    })
}

/// The gradient at the point's own level.
pub fn gradient(point: &UnityPoint) -> Result<MonomialGradient> {
    gradient_at(point, point.r)
}

/// The image of the coefficient basis direction x^k under the tangent map of
/// g -> g^(or) at g = x^n: sum_{i=1..r} n^(r-i) x^(n^r - n^i + n^(i-1) k),
/// of degree exactly n^r - n + k.
pub fn tangent_basis_image(n: u32, r: u32, k: u32, degree_cap: usize) -> Result<DensePoly> {
    if n < 2 || r == 0 || k >= n {
        return Err(Error::InvalidInput(format!(
            "tangent basis image needs n >= 2, r >= 1, k < n; got n={n}, r={r}, k={k}"
        )));
    }
    let mut n_r: u128 = 1;
    for _ in 0..r {
        n_r = n_r.saturating_mul(n as u128);
    }
    if n_r > degree_cap as u128 {
        return Err(Error::DegreeCapExceeded {
            requested: n_r,
            cap: degree_cap,
        });
    }
    let n_r = n_r as u64;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n_r as usize + 1];
    let mut n_im1 = 1u64; // n^(i-1)
    for i in 1..=r {
        let n_i = n_im1 * n as u64;
        let exponent = n_r - n_i + n_im1 * k as u64;
        let coefficient = (n as f64).powi((r - i) as i32);
        coeffs[exponent as usize] += Complex64::new(coefficient, 0.0);
        n_im1 = n_i;
    }
    Ok(DensePoly::from_coeffs(coeffs))
}

/// Entrywise check of the level-change identity
/// Q_r(alpha) = (r n^r) / (d n^d) * Q_d(alpha) with d the exact period.
pub fn scaling_relation_holds(point: &UnityPoint, r: u32, rel_tol: f64) -> Result<bool> {
    let d = point.period;
    if r == 0 || !r.is_multiple_of(d) {
        return Err(Error::InvalidInput(format!(
            "level {r} is not a multiple of the exact period {d}"
        )));
    }
    let high = gradient_at(point, r)?;
    let low = gradient_at(point, d)?;
    let factor = (r as f64 * (point.n as f64).powi(r as i32))
        / (d as f64 * (point.n as f64).powi(d as i32));
    for (a, b) in high.entries().iter().zip(low.entries()) {
        let expect = b * factor;
        if (a - expect).norm() > rel_tol * expect.norm().max(1e-300) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One canonical representative per orbit of z -> z^n on the points of period
/// dividing r: the flagged zero point first, then the smallest index of each
/// index orbit, sorted by (exact period, index).
pub fn unity_orbits(n: u32, r: u32) -> Result<Vec<UnityPoint>> {
    let modulus = power_modulus(n, r)?;
    if modulus > 100_000_000 {
        return Err(Error::Overflow(format!(
            "orbit enumeration over {modulus} indices is not supported"
        )));
    }
    let mut out = vec![UnityPoint::zero(n, r)?];
    let mut visited = vec![false; modulus as usize];
    for k in 0..modulus {
        if visited[k as usize] {
            continue;
        }
        let mut j = k;
        let mut len = 0u32;
        loop {
            visited[j as usize] = true;
            len += 1;
            j = mul_mod(n as u64, j, modulus);
            if j == k {
                break;
            }
        }
        out.push(UnityPoint {
            n,
            r,
            modulus,
            index: k,
            period: len,
            zero: false,
        });
    }
    out.sort_by_key(|p| (!p.zero, p.period, p.index));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn point_of_i_among_eighth_roots() {
        // n=3, r=2: modulus 8, index 2 is i, exact period 2 (orbit {2, 6}).
        let p = UnityPoint::new(3, 2, 2).unwrap();
        assert_eq!(p.exact_period(), 2);
        assert!((p.value() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(p.orbit_indices(), vec![2, 6]);
    }

    #[test]
    fn gradient_middle_entry_at_i() {
        // alpha = i: -6 [alpha^-2 + alpha^-6] = -6(-1 + -1) = 12.
        let p = UnityPoint::new(3, 2, 2).unwrap();
        let q = gradient_entry(&p, 1).unwrap();
        assert!((q - re(12.0)).norm() < 1e-12, "got {q}");
    }

    #[test]
    fn gradient_middle_entry_vanishes_at_primitive_eighth_root() {
        // alpha primitive 8th root: 1 + alpha^-4 = 0 kills the middle entry.
        let p = UnityPoint::new(3, 2, 1).unwrap();
        let q = gradient_entry(&p, 1).unwrap();
        assert!(q.norm() < 1e-12, "got {q}");
    }

    #[test]
    fn first_entry_is_n_times_last() {
        for (n, r, index) in [(3u32, 2u32, 1u64), (3, 2, 2), (4, 2, 3), (5, 3, 7), (2, 4, 5)] {
            let p = UnityPoint::new(n, r, index).unwrap();
            let g = gradient(&p).unwrap();
            let first = g.entries()[0];
            let last = g.entries()[n as usize - 1];
            assert!(
                (first - last * n as f64).norm() <= 1e-12 * first.norm().max(1.0),
                "n={n} r={r} k={index}"
            );
        }
    }

    #[test]
    fn gradient_is_orbit_invariant() {
        // Q_r(alpha) = Q_r(alpha^n): same index orbit, same exponent multiset.
        for index in [1u64, 2, 3, 5] {
            let p = UnityPoint::new(3, 2, index).unwrap();
            let q = UnityPoint::new(3, 2, (index * 3) % 8).unwrap();
            let gp = gradient(&p).unwrap();
            let gq = gradient(&q).unwrap();
            for (a, b) in gp.entries().iter().zip(gq.entries()) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_point_gradient_at_level_one() {
        let z = UnityPoint::zero(4, 1).unwrap();
        let g = gradient(&z).unwrap();
        assert_eq!(g.entries().len(), 4);
        for (i, entry) in g.entries().iter().enumerate() {
            let expect = if i == 1 { 1.0 } else { 0.0 };
            assert!((entry - re(expect)).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_point_gradient_vanishes_at_deeper_levels() {
        // At the superattracting fixed point the level-r multiplier is
        // [g'(0)]^r with g'(0) = 0, a zero of order r in the multiplier:
        // for r >= 2 every partial derivative vanishes. Cross-checked by
        // central differences on the a_1 direction.
        for n in 2..=4u32 {
            for r in 2..=3u32 {
                let z = UnityPoint::zero(n, r).unwrap();
                let g = gradient_at(&z, r).unwrap();
                for entry in g.entries() {
                    assert!(entry.norm() < 1e-12, "n={n} r={r}");
                }
            }
        }
        let h = 1e-5;
        let g_plus = MonicPoly::new(vec![re(0.0), re(h), re(0.0)]).unwrap();
        let g_minus = MonicPoly::new(vec![re(0.0), re(-h), re(0.0)]).unwrap();
        // 0 stays fixed under x^3 + a1 x; the level-2 multiplier is a1^2
        let mult = |g: &MonicPoly| {
            let d = g.derivative();
            d.eval(re(0.0)) * d.eval(g.eval(re(0.0)))
        };
        let fd = (mult(&g_plus) - mult(&g_minus)) / (2.0 * h);
        assert!(fd.norm() < 1e-9, "difference quotient {fd}");
    }

    #[test]
    fn fixed_point_gradient_closed_form() {
        // Q_1(alpha) for alpha^(n-1) = 1 equals (-n/alpha, 1-n, (2-n)alpha, ...,
        // -alpha^(n-2)); the closed-form entries must match.
        for n in 3..=6u32 {
            let modulus = n as u64 - 1;
            for j in 0..modulus {
                let p = UnityPoint::new(n, 1, j).unwrap();
                let alpha = p.value();
                let g = gradient(&p).unwrap();
                let mut prev_power = alpha.inv();
                for (i, entry) in g.entries().iter().enumerate() {
                    let expect = prev_power * (i as f64 - n as f64);
                    assert!(
                        (entry - expect).norm() <= 1e-10 * expect.norm().max(1.0),
                        "n={n} j={j} i={i}: {entry} vs {expect}"
                    );
                    prev_power *= alpha;
                }
            }
        }
    }

    #[test]
    fn tangent_basis_image_level_one_is_monomial() {
        for n in 2..=4u32 {
            for k in 0..n {
                let p = tangent_basis_image(n, 1, k, config::DEGREE_CAP).unwrap();
                assert_eq!(p, DensePoly::monomial(re(1.0), k as usize));
            }
        }
    }

    #[test]
    fn tangent_basis_image_examples() {
        // n=3, r=2: k=0 -> 3x^6 + 1; k=1 -> 3x^7 + x^3.
        let p0 = tangent_basis_image(3, 2, 0, config::DEGREE_CAP).unwrap();
        let mut expect0 = vec![re(0.0); 7];
        expect0[0] = re(1.0);
        expect0[6] = re(3.0);
        assert_eq!(p0, DensePoly::from_coeffs(expect0));

        let p1 = tangent_basis_image(3, 2, 1, config::DEGREE_CAP).unwrap();
        let mut expect1 = vec![re(0.0); 8];
        expect1[3] = re(1.0);
        expect1[7] = re(3.0);
        assert_eq!(p1, DensePoly::from_coeffs(expect1));
    }

    #[test]
    fn tangent_basis_image_degrees_are_distinct() {
        for n in 2..=5u32 {
            for r in 1..=3u32 {
                let mut degrees = Vec::new();
                for k in 0..n {
                    let p = tangent_basis_image(n, r, k, config::DEGREE_CAP).unwrap();
                    let expect = (n as usize).pow(r) - n as usize + k as usize;
                    assert_eq!(p.degree(), Some(expect));
                    degrees.push(expect);
                }
                degrees.dedup();
                assert_eq!(degrees.len(), n as usize);
            }
        }
    }

    #[test]
    fn scaling_relation_from_fixed_points() {
        // d=1 points evaluated at r=2, n=3: factor 2*9/(1*3) = 6.
        let p = UnityPoint::new(3, 1, 1).unwrap(); // alpha = -1, fixed
        assert!(scaling_relation_holds(&p, 2, 1e-9).unwrap());
        let q2 = gradient_at(&p, 2).unwrap();
        let q1 = gradient_at(&p, 1).unwrap();
        for (a, b) in q2.entries().iter().zip(q1.entries()) {
            assert!((a - b * 6.0).norm() <= 1e-9 * a.norm().max(1.0));
        }
    }

    #[test]
    fn scaling_relation_at_own_period_is_trivial() {
        let p = UnityPoint::new(3, 2, 1).unwrap();
        assert!(scaling_relation_holds(&p, 2, 1e-12).unwrap());
    }

    #[test]
    fn scaling_relation_deeper_level() {
        // n=2, r=4: a point of exact period 2 among the 15th roots.
        let p = UnityPoint::new(2, 4, 5).unwrap();
        assert_eq!(p.exact_period(), 2);
        assert!(scaling_relation_holds(&p, 4, 1e-9).unwrap());
    }

    #[test]
    fn unity_orbit_enumeration_small() {
        // n=3, r=2: zero + index 0 (alpha=1) + index 4 (alpha=-1) fixed;
        // three period-2 orbits {1,3}, {2,6}, {5,7} with reps 1, 2, 5.
        let orbits = unity_orbits(3, 2).unwrap();
        assert_eq!(orbits.len(), 6);
        assert!(orbits[0].is_zero());
        let fixed: Vec<u64> = orbits
            .iter()
            .filter(|p| !p.is_zero() && p.exact_period() == 1)
            .map(|p| p.index())
            .collect();
        assert_eq!(fixed, vec![0, 4]);
        let period2: Vec<u64> = orbits
            .iter()
            .filter(|p| p.exact_period() == 2)
            .map(|p| p.index())
            .collect();
        assert_eq!(period2, vec![1, 2, 5]);
    }

    #[test]
    fn unity_orbit_counts_match_moebius() {
        use crate::periodic::orbit_count;
        for (n, r) in [(2u32, 3u32), (3, 2), (3, 3), (2, 4), (5, 2)] {
            let orbits = unity_orbits(n, r).unwrap();
            for m in (1..=r).filter(|m| r % m == 0) {
                let found = orbits.iter().filter(|p| p.exact_period() == m).count() as i64;
                assert_eq!(found, orbit_count(n, m).unwrap(), "n={n} r={r} m={m}");
            }
        }
    }

    #[test]
    fn doubling_orbits_mod_seven() {
        let orbits = unity_orbits(2, 3).unwrap();
        let period3: Vec<u64> = orbits
            .iter()
            .filter(|p| p.exact_period() == 3)
            .map(|p| p.index())
            .collect();
        assert_eq!(period3, vec![1, 3]);
    }

    #[test]
    fn level_one_orbits_are_fixed_points() {
        for n in 2..=6u32 {
            let orbits = unity_orbits(n, 1).unwrap();
            assert_eq!(orbits.len(), n as usize);
            assert!(orbits.iter().all(|p| p.exact_period() == 1));
        }
    }

    #[test]
    fn closed_form_matches_general_gradient_machinery() {
        // At g = x^n the closed form and the implicit-function recurrences
        // must agree for every orbit representative.
        for n in 2..=3u32 {
            for r in 1..=3u32 {
                let g = MonicPoly::pure_power(n as usize).unwrap();
                for point in unity_orbits(n, r).unwrap() {
                    if point.is_zero() {
                        continue;
                    }
                    let closed = gradient_at(&point, r).unwrap();
                    let general = multiplier_gradient_at_point(&g, point.value(), r).unwrap();
                    for (a, b) in closed.entries().iter().zip(&general) {
                        assert!(
                            (a - b).norm() <= 1e-8 * b.norm().max(1.0),
                            "n={n} r={r} idx={}",
                            point.index()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn modulus_overflow_is_reported() {
        assert!(matches!(
            UnityPoint::new(10, 19, 0),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn index_orbits_match_numerical_spectrum() {
        // The integer orbit combinatorics must reproduce the numerically
        // grouped orbits of z -> z^n: same period multiset, and every orbit
        // value present among the spectrum points.
        use crate::config::RunConfig;
        use crate::periodic::periodic_spectrum;
        let cfg = RunConfig::default();
        for n in 2..=3u32 {
            for r in 1..=3u32 {
                let g = MonicPoly::pure_power(n as usize).unwrap();
                let spectrum = periodic_spectrum(&g, r, &cfg).unwrap();
                let points = unity_orbits(n, r).unwrap();
                assert_eq!(points.len(), spectrum.orbits.len(), "n={n} r={r}");
                for point in &points {
                    let value = point.value();
                    let matching = spectrum
                        .orbits
                        .iter()
                        .find(|o| o.points().iter().any(|p| (p - value).norm() < 1e-8))
                        .unwrap_or_else(|| panic!("no orbit through {value} (n={n}, r={r})"));
                    assert_eq!(
                        matching.exact_period(),
                        point.exact_period(),
                        "period mismatch at n={n} r={r} index={}",
                        point.index()
                    );
                }
            }
        }
    }

    #[test]
    fn unity_point_json_shape() {
        let p = UnityPoint::new(3, 2, 2).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(
            text,
            r#"{"n":3,"r":2,"modulus":8,"index":2,"period":2,"zero":false}"#
        );
        let back: UnityPoint = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn monomial_gradient_json_round_trips() {
        let p = UnityPoint::new(3, 2, 1).unwrap();
        let g = gradient(&p).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: MonomialGradient = serde_json::from_str(&text).unwrap();
        assert_eq!(back.point(), g.point());
        assert_eq!(back.entries(), g.entries());
    }
}
