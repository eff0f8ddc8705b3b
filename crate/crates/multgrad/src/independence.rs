//! Linear independence of multiplier gradients over orbit choices.
//!
//! A polynomial belongs to the distinguished locus for a signature
//! (r_1, ..., r_l) when every choice of pairwise-distinct orbits with those
//! exact periods yields linearly independent gradients. Membership is decided
//! by enumerating (or, past a budget, sampling) orbit tuples and SVD rank
//! tests; at g = x^n the same sweep runs on the exact closed forms.

use std::collections::HashSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{self, RunConfig};
use crate::error::{Error, Result};
use crate::gradient::{multiplier_gradient, multiplier_gradient_at_point};
use crate::json::complex_vec;
use crate::monomial::{self, UnityPoint};
use crate::periodic::{newton_periodic, periodic_spectrum, Orbit};
use crate::polynomial::MonicPoly;

/// Requested exact periods, optionally adjoining the gradient at the
/// distinguished fixed point 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSignature {
    pub periods: Vec<u32>,
    #[serde(default)]
    pub include_zero_fixed_point: bool,
}

impl OrbitSignature {
    pub fn new(periods: Vec<u32>, include_zero_fixed_point: bool) -> Result<Self> {
        if periods.is_empty() {
            return Err(Error::InvalidInput(
                "a signature needs at least one period".into(),
            ));
        }
        if periods.contains(&0) {
            return Err(Error::InvalidInput("periods must be >= 1".into()));
        }
        Ok(OrbitSignature {
            periods,
            include_zero_fixed_point,
        })
    }

    /// Distinct periods ascending with their multiplicities l(r).
    pub fn grouped(&self) -> Vec<(u32, usize)> {
        let mut sorted = self.periods.clone();
        sorted.sort_unstable();
        let mut out: Vec<(u32, usize)> = Vec::new();
        for r in sorted {
            match out.last_mut() {
                Some((period, count)) if *period == r => *count += 1,
                _ => out.push((r, 1)),
            }
        }
        out
    }

    /// Total number of gradient vectors per tuple.
    pub fn vector_count(&self) -> usize {
        self.periods.len() + usize::from(self.include_zero_fixed_point)
    }
}

/// Outcome of a membership scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NotMember,
    Inconclusive,
}

/// A confirmed dependent orbit choice: the representatives involved and the
/// smallest singular value of the stacked gradients.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DependentChoice {
    #[serde(with = "complex_vec")]
    pub representatives: Vec<Complex64>,
    pub sigma_min: f64,
}

/// Full record of a membership scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub base: MonicPoly,
    pub signature: OrbitSignature,
    pub choices_tested: usize,
    pub dependent_choices: Vec<DependentChoice>,
    pub verdict: Verdict,
    pub sampling_seed: Option<u64>,
}

/// SVD rank test on stacked row vectors: independent iff
/// sigma_min > tol * sigma_max. More vectors than the ambient dimension is
/// dependent outright. Returns (is_independent, sigma_min).
///
/// Rows are normalised to unit length before stacking: per-vector scaling
/// never changes linear independence, while gradient norms in one tuple can
/// differ by factors like n^(r-1) and would otherwise drown the relative
/// threshold. A zero vector makes the set dependent.
pub fn rank_test(vectors: &[Vec<Complex64>], tol: f64) -> (bool, f64) {
    let rows = vectors.len();
    if rows == 0 {
        return (true, f64::INFINITY);
    }
    let cols = vectors[0].len();
    debug_assert!(vectors.iter().all(|v| v.len() == cols));
    if rows > cols {
        return (false, 0.0);
    }
    let matrix = DMatrix::from_fn(rows, cols, |i, j| {
        let scale = vectors[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if scale > 0.0 {
            vectors[i][j] / scale
        } else {
            vectors[i][j]
        }
    });
    let svd = matrix.svd(false, false);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
    let sigma_min = svd
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    (sigma_min > tol * sigma_max, sigma_min)
}

/// Binomial coefficient, saturating at u128::MAX. Saturated totals always
/// exceed any practical budget and only ever select the sampling branch.
fn binomial(n: usize, l: usize) -> u128 {
    if l > n {
        return 0;
    }
    let l = l.min(n - l);
    let mut acc: u128 = 1;
    for i in 0..l {
        match acc.checked_mul((n - i) as u128) {
            Some(next) => acc = next / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Lexicographic rank -> l-subset of {0..n-1} (combinadic unranking).
fn unrank_combination(n: usize, l: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(l);
    let mut next = 0usize;
    let mut remaining = l;
    while remaining > 0 {
        let with_next = binomial(n - next - 1, remaining - 1);
        if rank < with_next {
            out.push(next);
            remaining -= 1;
        } else {
            rank -= with_next;
        }
        next += 1;
    }
    out
}

/// Per-period candidate pools and the tuple space over them: one l(r)-subset
/// of each pool, mixed-radix across the groups.
struct TupleSpace {
    /// (pool size, choose) per group, in ascending period order.
    shape: Vec<(usize, usize)>,
    total: u128,
}

impl TupleSpace {
    fn new(shape: Vec<(usize, usize)>) -> Self {
        let total = shape.iter().map(|&(n, l)| binomial(n, l)).product();
        TupleSpace { shape, total }
    }

    fn unrank(&self, mut rank: u128) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.shape.len());
        for &(n, l) in self.shape.iter().rev() {
            let radix = binomial(n, l);
            let digit = rank % radix;
            rank /= radix;
            out.push(unrank_combination(n, l, digit));
        }
        out.reverse();
        out
    }

    /// Tuple ranks to visit: everything when the space fits the budget,
    /// otherwise `budget` distinct seeded samples in ascending order.
    fn plan(&self, budget: usize, seed: u64) -> (Vec<u128>, bool) {
        if self.total <= budget as u128 {
            return ((0..self.total).collect(), true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut chosen: HashSet<u128> = HashSet::with_capacity(budget);
        let mut attempts = 0usize;
        while chosen.len() < budget && attempts < budget.saturating_mul(20) {
            chosen.insert(rng.gen_range(0..self.total));
            attempts += 1;
        }
        let mut ranks: Vec<u128> = chosen.into_iter().collect();
        ranks.sort_unstable();
        (ranks, false)
    }
}

/// Decide membership of g in the locus of the signature: enumerate or sample
/// orbit tuples, rank-test the gradients of each, and stop at the first
/// confirmed dependent choice.
///
/// Preconditions checked here: g^(or)(x)-x square-free for every requested
/// period (else `NotInZ`), and enough orbits of each exact period (else
/// `SignatureInfeasible`). With `include_zero_fixed_point`, 0 must be a fixed
/// point of g; its gradient is adjoined to every tuple and the zero orbit is
/// withheld from the ordinary period-1 pool.
pub fn z0_membership(
    g: &MonicPoly,
    signature: &OrbitSignature,
    cfg: &RunConfig,
) -> Result<IndependenceReport> {
    let groups = signature.grouped();

    if signature.include_zero_fixed_point && g.coeffs()[0].norm() > 1e-12 {
        return Err(Error::InvalidInput(
            "the distinguished fixed-point gradient requires g(0) = 0".into(),
        ));
    }

    // One spectrum per distinct period; orbit pools in canonical order.
    let mut pools: Vec<(u32, usize, Vec<Orbit>)> = Vec::new();
    for &(r, l) in &groups {
        let spectrum = periodic_spectrum(g, r, cfg)?;
        if !spectrum.in_znr {
            return Err(Error::NotInZ {
                period: r,
                separation: spectrum.min_separation,
            });
        }
        let mut orbits: Vec<Orbit> = spectrum
            .orbits_of_period(r)
            .filter(|o| {
                !(signature.include_zero_fixed_point
                    && r == 1
                    && o.representative().norm() <= 1e-9)
            })
            .cloned()
            .collect();
        if orbits.len() < l {
            return Err(Error::SignatureInfeasible {
                period: r,
                requested: l,
                available: orbits.len(),
            });
        }
        orbits.sort_by(|a, b| {
            let (ka, kb) = (a.representative(), b.representative());
            ka.re.total_cmp(&kb.re).then(ka.im.total_cmp(&kb.im))
        });
        pools.push((r, l, orbits));
    }

    let zero_gradient = if signature.include_zero_fixed_point {
        Some(multiplier_gradient_at_point(
            g,
            Complex64::new(0.0, 0.0),
            1,
        )?)
    } else {
        None
    };

    // Gradients once per orbit, reused across tuples.
    let mut gradients: Vec<Vec<Vec<Complex64>>> = Vec::new();
    for (r, _, orbits) in &pools {
        let mut per_pool = Vec::with_capacity(orbits.len());
        for orbit in orbits {
            per_pool.push(multiplier_gradient(g, orbit, *r)?.entries().to_vec());
        }
        gradients.push(per_pool);
    }

    let space = TupleSpace::new(pools.iter().map(|(_, l, orbits)| (orbits.len(), *l)).collect());
    let seed = cfg.seed.unwrap_or(0);
    let (ranks, exhaustive) = space.plan(cfg.budget, seed);

    let mut report = IndependenceReport {
        base: g.clone(),
        signature: signature.clone(),
        choices_tested: 0,
        dependent_choices: Vec::new(),
        verdict: Verdict::Member,
        sampling_seed: (!exhaustive).then_some(seed),
    };

    for rank in ranks {
        let selection = space.unrank(rank);
        let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(signature.vector_count());
        if let Some(zg) = &zero_gradient {
            rows.push(zg.clone());
        }
        for (pool_idx, chosen) in selection.iter().enumerate() {
            for &orbit_idx in chosen {
                rows.push(gradients[pool_idx][orbit_idx].clone());
            }
        }
        report.choices_tested += 1;
        let (independent, _) = rank_test(&rows, cfg.rank_tol);
        if independent {
            continue;
        }
        // Re-check the near-dependent tuple at tightened orbit points before
        // reporting, so sloppy roots cannot fabricate a dependence.
        let mut refined_rows: Vec<Vec<Complex64>> = Vec::with_capacity(rows.len());
        let mut representatives: Vec<Complex64> = Vec::new();
        if let Some(zg) = &zero_gradient {
            refined_rows.push(zg.clone());
            representatives.push(Complex64::new(0.0, 0.0));
        }
        for (pool_idx, chosen) in selection.iter().enumerate() {
            let (r, _, orbits) = &pools[pool_idx];
            for &orbit_idx in chosen {
                let rep = orbits[orbit_idx].representative();
                let refined = newton_periodic(g, *r, rep, 80)?;
                refined_rows.push(multiplier_gradient_at_point(g, refined, *r)?);
                representatives.push(refined);
            }
        }
        let (still_independent, sigma_min) = rank_test(&refined_rows, cfg.rank_tol);
        if !still_independent {
            report.dependent_choices.push(DependentChoice {
                representatives,
                sigma_min,
            });
            report.verdict = Verdict::NotMember;
            return Ok(report);
        }
    }

    report.verdict = if exhaustive {
        Verdict::Member
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

/// Candidate orbits of one exact period at g = x^n: materialised outright
/// when the index modulus is small, sampled by random index otherwise (orbit
/// counts grow like n^r / r, far past any enumeration budget).
enum MonomialPool {
    Enumerated(Vec<UnityPoint>),
    Sampled { n: u32, r: u32, modulus: u64 },
}

const ENUMERATION_LIMIT: u64 = 1_000_000;

impl MonomialPool {
    fn build(n: u32, r: u32) -> Result<(Self, u128)> {
        let modulus = UnityPoint::new(n, r, 0)?.modulus();
        if modulus <= ENUMERATION_LIMIT {
            let candidates: Vec<UnityPoint> = monomial::unity_orbits(n, r)?
                .into_iter()
                .filter(|p| !p.is_zero() && p.exact_period() == r)
                .collect();
            let size = candidates.len() as u128;
            Ok((MonomialPool::Enumerated(candidates), size))
        } else {
            let size = crate::periodic::orbit_count(n, r)? as u128;
            Ok((MonomialPool::Sampled { n, r, modulus }, size))
        }
    }

    /// Draw `l` distinct orbits uniformly.
    fn sample(&self, l: usize, rng: &mut ChaCha8Rng) -> Result<Vec<UnityPoint>> {
        match self {
            MonomialPool::Enumerated(pool) => {
                let mut picked: HashSet<usize> = HashSet::with_capacity(l);
                while picked.len() < l {
                    picked.insert(rng.gen_range(0..pool.len()));
                }
                let mut indices: Vec<usize> = picked.into_iter().collect();
                indices.sort_unstable();
                Ok(indices.into_iter().map(|i| pool[i].clone()).collect())
            }
            MonomialPool::Sampled { n, r, modulus } => {
                let mut reps: Vec<UnityPoint> = Vec::with_capacity(l);
                let mut guard = 0usize;
                while reps.len() < l {
                    guard += 1;
                    if guard > 10_000 * l {
                        return Err(Error::Overflow(
                            "orbit sampling failed to find enough distinct orbits".into(),
                        ));
                    }
                    let index = rng.gen_range(0..*modulus);
                    let point = UnityPoint::new(*n, *r, index)?;
                    if point.exact_period() != *r {
                        continue;
                    }
                    let rep = *point.orbit_indices().iter().min().expect("non-empty orbit");
                    if reps.iter().any(|p| p.index() == rep) {
                        continue;
                    }
                    reps.push(UnityPoint::new(*n, *r, rep)?);
                }
                Ok(reps)
            }
        }
    }
}

/// Sweep all (budget-capped) tuples of distinct orbits of z -> z^n with the
/// signature's exact periods, gradients taken from the exact closed forms,
/// and report whether every tested tuple was independent. The zero
/// fixed-point gradient is adjoined when the signature asks for it; the
/// ordinary pools consist of roots of unity only.
pub fn all_monomial_tuples_independent(
    n: u32,
    signature: &OrbitSignature,
    cfg: &RunConfig,
) -> Result<bool> {
    let groups = signature.grouped();
    let mut pools: Vec<MonomialPool> = Vec::new();
    let mut sizes: Vec<u128> = Vec::new();
    for &(r, l) in &groups {
        let (pool, size) = MonomialPool::build(n, r)?;
        if size < l as u128 {
            return Err(Error::SignatureInfeasible {
                period: r,
                requested: l,
                available: size as usize,
            });
        }
        pools.push(pool);
        sizes.push(size);
    }

    let zero_gradient = if signature.include_zero_fixed_point {
        let zero = UnityPoint::zero(n, 1)?;
        Some(monomial::gradient_at(&zero, 1)?.entries().to_vec())
    } else {
        None
    };

    let total: u128 = sizes
        .iter()
        .zip(&groups)
        .map(|(&size, &(_, l))| binomial(size as usize, l))
        .product();
    let exhaustive = total <= cfg.budget as u128
        && pools
            .iter()
            .all(|p| matches!(p, MonomialPool::Enumerated(_)));

    let test_tuple = |points: &[(&UnityPoint, u32)]| -> Result<bool> {
        let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(signature.vector_count());
        if let Some(zg) = &zero_gradient {
            rows.push(zg.clone());
        }
        for (point, r) in points {
            rows.push(monomial::gradient_at(point, *r)?.entries().to_vec());
        }
        Ok(rank_test(&rows, cfg.rank_tol).0)
    };

    if exhaustive {
        let space = TupleSpace::new(
            sizes
                .iter()
                .zip(&groups)
                .map(|(&size, &(_, l))| (size as usize, l))
                .collect(),
        );
        for rank in 0..space.total {
            let selection = space.unrank(rank);
            let mut points: Vec<(&UnityPoint, u32)> = Vec::new();
            for (pool_idx, chosen) in selection.iter().enumerate() {
                let MonomialPool::Enumerated(pool) = &pools[pool_idx] else {
                    unreachable!("exhaustive plan only over enumerated pools");
                };
                for &point_idx in chosen {
                    points.push((&pool[point_idx], groups[pool_idx].0));
                }
            }
            if !test_tuple(&points)? {
                return Ok(false);
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
        for _ in 0..cfg.budget {
            let mut owned: Vec<(UnityPoint, u32)> = Vec::new();
            for (pool, &(r, l)) in pools.iter().zip(&groups) {
                for point in pool.sample(l, &mut rng)? {
                    owned.push((point, r));
                }
            }
            let points: Vec<(&UnityPoint, u32)> = owned.iter().map(|(p, r)| (p, *r)).collect();
            if !test_tuple(&points)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Power sums `sum_j weights[j] / nodes[j]^u` for u = 1..d.
pub fn power_sums(nodes: &[Complex64], weights: &[Complex64]) -> Vec<Complex64> {
    let d = nodes.len();
    let mut inverse_powers: Vec<Complex64> = nodes.iter().map(|_| Complex64::new(1.0, 0.0)).collect();
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        for (p, b) in inverse_powers.iter_mut().zip(nodes) {
            *p /= b;
        }
        out.push(
            inverse_powers
                .iter()
                .zip(weights)
                .map(|(p, c)| p * c)
                .sum(),
        );
    }
    out
}

/// Vanishing power sums force zero weights: the d x d system in the inverse
/// nodes is nonsingular whenever the nodes are distinct and nonzero. Checks
/// the instance at working precision; `IllConditioned` above the condition
/// limit.
pub fn newton_vanishing_check(nodes: &[Complex64], weights: &[Complex64]) -> Result<bool> {
    let d = nodes.len();
    if d == 0 || d > 12 {
        return Err(Error::InvalidInput(format!(
            "node count must be in 1..=12, got {d}"
        )));
    }
    if weights.len() != d {
        return Err(Error::InvalidInput(format!(
            "{d} nodes but {} weights",
            weights.len()
        )));
    }
    for (i, b) in nodes.iter().enumerate() {
        if b.norm() <= 1e-6 {
            return Err(Error::InvalidInput(format!(
                "node {i} is too close to zero"
            )));
        }
        for (j, c) in nodes.iter().enumerate().skip(i + 1) {
            if (b - c).norm() <= 1e-6 {
                return Err(Error::InvalidInput(format!(
                    "nodes {i} and {j} are closer than 1e-6"
                )));
            }
        }
    }
    let matrix = DMatrix::from_fn(d, d, |u, j| nodes[j].powi(-(u as i32) - 1));
    let svd = matrix.svd(false, false);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0f64, f64::max);
    let sigma_min = svd
        .singular_values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let condition = sigma_max / sigma_min.max(f64::MIN_POSITIVE);
    if condition > config::CONDITION_LIMIT {
        return Err(Error::IllConditioned {
            condition,
            limit: config::CONDITION_LIMIT,
        });
    }
    Ok(sigma_min > 0.0)
}

/// Membership is an open condition: it must survive small coefficient
/// perturbations. Draws `trials` polynomials with every coefficient moved by
/// a uniform sample from the complex disc of radius `epsilon` and re-runs the
/// membership scan on each.
pub fn openness_proxy(
    g: &MonicPoly,
    signature: &OrbitSignature,
    epsilon: f64,
    trials: usize,
    cfg: &RunConfig,
) -> Result<bool> {
    if epsilon < 0.0 {
        return Err(Error::InvalidInput("epsilon must be >= 0".into()));
    }
    let base = z0_membership(g, signature, cfg)?;
    if base.verdict != Verdict::Member {
        return Err(Error::InvalidInput(format!(
            "openness proxy requires a member base point, got {:?}",
            base.verdict
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
    for _ in 0..trials {
        let coeffs = g
            .coeffs()
            .iter()
            .map(|a| a + disc_sample(&mut rng, epsilon))
            .collect();
        let perturbed = MonicPoly::new(coeffs)?;
        let report = z0_membership(&perturbed, signature, cfg)?;
        if report.verdict != Verdict::Member {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Uniform sample from the closed complex disc of the given radius.
pub fn disc_sample<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    if radius == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = radius * rng.gen::<f64>().sqrt();
    let theta = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
    Complex64::from_polar(r, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn rank_test_basic_geometry() {
        let e1 = vec![re(0.0), re(1.0), re(0.0)];
        let v = vec![re(3.0), re(0.0), re(1.0)];
        assert!(rank_test(&[e1.clone(), v.clone()], 1e-8).0);
        // two parallel vectors are dependent
        let w: Vec<Complex64> = v.iter().map(|z| z * Complex64::new(0.0, 2.0)).collect();
        assert!(!rank_test(&[v.clone(), w], 1e-8).0);
        // a single nonzero vector is independent
        assert!(rank_test(&[v], 1e-8).0);
    }

    #[test]
    fn rank_test_rejects_overfull_sets() {
        let rows: Vec<Vec<Complex64>> = (0..4).map(|i| vec![re(i as f64), re(1.0)]).collect();
        let (independent, sigma) = rank_test(&rows, 1e-8);
        assert!(!independent);
        assert_eq!(sigma, 0.0);
    }

    #[test]
    fn rank_verdict_is_scale_invariant() {
        let rows = vec![
            vec![re(1.0), re(2.0), re(0.5)],
            vec![re(-0.3), re(0.7), re(1.1)],
        ];
        let scaled: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|z| z * 1e8).collect())
            .collect();
        assert_eq!(rank_test(&rows, 1e-8).0, rank_test(&scaled, 1e-8).0);
    }

    #[test]
    fn unrank_combination_is_lexicographic() {
        let all: Vec<Vec<usize>> = (0..binomial(5, 2)).map(|r| unrank_combination(5, 2, r)).collect();
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[1], vec![0, 2]);
        assert_eq!(all.last().unwrap(), &vec![3, 4]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn cube_is_not_member_for_two_period_two_orbits() {
        let g = MonicPoly::pure_power(3).unwrap();
        let signature = OrbitSignature::new(vec![2, 2], false).unwrap();
        let report = z0_membership(&g, &signature, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::NotMember);
        assert_eq!(report.dependent_choices.len(), 1);
        // the dependent pair consists of primitive 8th roots
        for z in &report.dependent_choices[0].representatives {
            assert!((z.norm() - 1.0).abs() < 1e-9);
            assert!((z.powu(8) - re(1.0)).norm() < 1e-8);
            assert!((z.powu(4) + re(1.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn quintic_power_is_member_for_two_three() {
        let g = MonicPoly::pure_power(5).unwrap();
        let signature = OrbitSignature::new(vec![2, 3], false).unwrap();
        let report = z0_membership(&g, &signature, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Member);
        assert!(report.dependent_choices.is_empty());
        assert!(report.sampling_seed.is_none());
    }

    #[test]
    fn infeasible_signature_is_rejected() {
        // x^2 has 2 fixed points; asking for 3 period-1 orbits cannot work.
        let g = MonicPoly::pure_power(2).unwrap();
        let signature = OrbitSignature::new(vec![1, 1, 1], false).unwrap();
        let err = z0_membership(&g, &signature, &cfg()).unwrap_err();
        assert!(matches!(err, Error::SignatureInfeasible { .. }));
    }

    #[test]
    fn parabolic_base_point_is_not_in_locus() {
        let g = MonicPoly::new(vec![re(0.0), re(1.0)]).unwrap(); // x + x^2
        let signature = OrbitSignature::new(vec![1], false).unwrap();
        let err = z0_membership(&g, &signature, &cfg()).unwrap_err();
        assert!(matches!(err, Error::NotInZ { period: 1, .. }));
    }

    #[test]
    fn monomial_sweep_small_cases() {
        let c = cfg();
        // covered by the independence theorem
        let sig23 = OrbitSignature::new(vec![2, 3], false).unwrap();
        assert!(all_monomial_tuples_independent(5, &sig23, &c).unwrap());
        // adjoined zero vector, n = 6 >= 2 + 4
        let sig22z = OrbitSignature::new(vec![2, 2], true).unwrap();
        assert!(all_monomial_tuples_independent(6, &sig22z, &c).unwrap());
        // the known failing pair at n = 3
        let sig22 = OrbitSignature::new(vec![2, 2], false).unwrap();
        assert!(!all_monomial_tuples_independent(3, &sig22, &c).unwrap());
    }

    #[test]
    fn monomial_sweep_matches_numerical_membership() {
        let c = cfg();
        for (n, periods) in [(4u32, vec![2u32, 2]), (5, vec![2, 3]), (3, vec![2, 2])] {
            let signature = OrbitSignature::new(periods, false).unwrap();
            let sweep = all_monomial_tuples_independent(n, &signature, &c).unwrap();
            let g = MonicPoly::pure_power(n as usize).unwrap();
            let report = z0_membership(&g, &signature, &c).unwrap();
            assert_eq!(sweep, report.verdict == Verdict::Member, "n={n}");
        }
    }

    #[test]
    fn power_sums_of_unity_nodes() {
        // d-th roots of unity: sum of inverse u-th powers vanishes for
        // u = 1..d-1 and equals d at u = d.
        let d = 5;
        let nodes: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64))
            .collect();
        let weights = vec![re(1.0); d];
        let sums = power_sums(&nodes, &weights);
        for (u, s) in sums.iter().enumerate() {
            if u + 1 == d {
                assert!((s - re(d as f64)).norm() < 1e-12);
            } else {
                assert!(s.norm() < 1e-12, "u={} sum={s}", u + 1);
            }
        }
    }

    #[test]
    fn vanishing_check_accepts_unity_nodes() {
        let d = 6;
        let nodes: Vec<Complex64> = (0..d)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64))
            .collect();
        let weights = vec![re(0.5); d];
        assert!(newton_vanishing_check(&nodes, &weights).unwrap());
    }

    #[test]
    fn vanishing_check_rejects_coincident_nodes() {
        let nodes = vec![re(1.0), re(1.0)];
        let weights = vec![re(1.0), re(1.0)];
        assert!(matches!(
            newton_vanishing_check(&nodes, &weights),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn membership_report_is_deterministic_under_seed() {
        // force sampling with a tiny budget
        let g = MonicPoly::pure_power(5).unwrap();
        let signature = OrbitSignature::new(vec![2, 2], false).unwrap();
        let mut config = cfg();
        config.budget = 5;
        config.seed = Some(42);
        let a = z0_membership(&g, &signature, &config).unwrap();
        let b = z0_membership(&g, &signature, &config).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.choices_tested, b.choices_tested);
        assert_eq!(a.sampling_seed, Some(42));
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        // sampled scans that find nothing cannot certify membership
        assert_eq!(a.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn zero_vector_membership_with_adjoined_gradient() {
        // n = 6 with (2,2) plus the zero fixed-point vector: the period sum 4
        // stays within n - 2, every choice independent.
        let g = MonicPoly::pure_power(6).unwrap();
        let signature = OrbitSignature::new(vec![2, 2], true).unwrap();
        let report = z0_membership(&g, &signature, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Member);

        // Adjoining the zero vector to a single aligned period-3 orbit of x^4
        // reproduces the dependent pairing directly through the flag.
        let g = MonicPoly::pure_power(4).unwrap();
        let signature = OrbitSignature::new(vec![3], true).unwrap();
        let report = z0_membership(&g, &signature, &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::NotMember);
    }

    #[test]
    fn zero_flag_requires_zero_fixed_point() {
        let g = MonicPoly::new(vec![re(0.3), re(0.1), re(0.0)]).unwrap();
        let signature = OrbitSignature::new(vec![1], true).unwrap();
        assert!(matches!(
            z0_membership(&g, &signature, &cfg()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn monomial_sweep_rejects_oversized_requests() {
        // z -> z^2 has a single nonzero fixed point
        let signature = OrbitSignature::new(vec![1, 1], false).unwrap();
        assert!(matches!(
            all_monomial_tuples_independent(2, &signature, &cfg()),
            Err(Error::SignatureInfeasible { .. })
        ));
    }

    #[test]
    fn openness_proxy_zero_epsilon_is_trivially_true() {
        let g = MonicPoly::pure_power(4).unwrap();
        let signature = OrbitSignature::new(vec![2, 2], false).unwrap();
        assert!(openness_proxy(&g, &signature, 0.0, 3, &cfg()).unwrap());
    }

    #[test]
    fn openness_proxy_rejects_non_member_base() {
        let g = MonicPoly::pure_power(3).unwrap();
        let signature = OrbitSignature::new(vec![2, 2], false).unwrap();
        assert!(matches!(
            openness_proxy(&g, &signature, 1e-8, 2, &cfg()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn report_json_round_trips() {
        let g = MonicPoly::pure_power(5).unwrap();
        let signature = OrbitSignature::new(vec![2, 3], false).unwrap();
        let report = z0_membership(&g, &signature, &cfg()).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: IndependenceReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
