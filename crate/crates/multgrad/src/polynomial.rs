//! Dense monic complex polynomial arithmetic.
//!
//! Two representations: [`MonicPoly`] is a degree-n monic polynomial stored as
//! its n low-order coefficients (the point of coefficient space the rest of
//! the crate differentiates at), and [`DensePoly`] is a general dense
//! polynomial, lowest degree first, used for tangent vectors, derivatives and
//! iterates.
//!
//! Explicit compose/iterate are capped by degree; everything gradient-related
//! runs on value-level recurrences precisely so the degree-n^r iterates never
//! have to be materialised.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::json::complex_vec;

/// A monic polynomial x^n + a_{n-1} x^{n-1} + ... + a_0 with n >= 2,
/// identified with the coefficient vector (a_0, ..., a_{n-1}).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MonicPolyRepr", into = "MonicPolyRepr")]
pub struct MonicPoly {
    coeffs: Vec<Complex64>,
}

/// Wire form: `{"degree": n, "coeffs": [[re,im],...]}` with a_0 first.
#[derive(Serialize, Deserialize)]
struct MonicPolyRepr {
    degree: usize,
    #[serde(with = "complex_vec")]
    coeffs: Vec<Complex64>,
}

impl TryFrom<MonicPolyRepr> for MonicPoly {
    type Error = Error;
    fn try_from(repr: MonicPolyRepr) -> Result<Self> {
        if repr.coeffs.len() != repr.degree {
            return Err(Error::InvalidInput(format!(
                "declared degree {} but {} coefficients",
                repr.degree,
                repr.coeffs.len()
            )));
        }
        MonicPoly::new(repr.coeffs)
    }
}

impl From<MonicPoly> for MonicPolyRepr {
    fn from(p: MonicPoly) -> Self {
        MonicPolyRepr {
            degree: p.degree(),
            coeffs: p.coeffs,
        }
    }
}

impl MonicPoly {
    /// Build from the low-order coefficients (a_0, ..., a_{n-1}); the leading
    /// coefficient is implicitly 1. Requires n >= 2 and finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "monic polynomial must have degree >= 2, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput(
                "monic polynomial coefficients must be finite".into(),
            ));
        }
        Ok(MonicPoly { coeffs })
    }

    /// The pure power map x^n.
    pub fn pure_power(n: usize) -> Result<Self> {
        MonicPoly::new(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Low-order coefficients, a_0 first. The leading 1 is not stored.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// A copy with coefficient a_i replaced (for perturbation studies).
    pub fn with_coeff(&self, i: usize, value: Complex64) -> Result<Self> {
        if i >= self.coeffs.len() {
            return Err(Error::InvalidInput(format!(
                "coefficient index {i} out of range for degree {}",
                self.degree()
            )));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs[i] = value;
        MonicPoly::new(coeffs)
    }

    /// Horner evaluation of g(z).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Fused Horner pass returning (g(z), g'(z), g''(z)).
    pub fn eval_with_derivs(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let mut v = Complex64::new(1.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        let mut d2 = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            d2 = d2 * z + d;
            d = d * z + v;
            v = v * z + c;
        }
        (v, d, d2 * 2.0)
    }

    /// Formal derivative as a general dense polynomial.
    pub fn derivative(&self) -> DensePoly {
        self.to_dense().derivative()
    }

    /// Second formal derivative.
    pub fn second_derivative(&self) -> DensePoly {
        self.to_dense().derivative().derivative()
    }

    /// Full coefficient vector including the leading 1.
    pub fn to_dense(&self) -> DensePoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.push(Complex64::new(1.0, 0.0));
        DensePoly::from_coeffs(coeffs)
    }

    /// Coefficients of the r-fold composition g(g(...g(x)...)); the result is
    /// monic of degree exactly n^r.
    pub fn iterate(&self, r: u32, degree_cap: usize) -> Result<DensePoly> {
        if r == 0 {
            return Err(Error::InvalidInput("iteration count must be >= 1".into()));
        }
        let n = self.degree() as u128;
        let mut target: u128 = 1;
        for _ in 0..r {
            target = target.saturating_mul(n);
        }
        if target > degree_cap as u128 {
            return Err(Error::DegreeCapExceeded {
                requested: target,
                cap: degree_cap,
            });
        }
        let outer = self.to_dense();
        let mut acc = outer.clone();
        for _ in 1..r {
            acc = outer.compose(&acc, degree_cap)?;
        }
        Ok(acc)
    }

    /// The forward orbit (z, g(z), ..., g^(r-1)(z)). Errors with `Overflow`
    /// if any value escapes past `escape_bound` (the seed is not periodic).
    pub fn orbit_values(&self, z: Complex64, r: u32, escape_bound: f64) -> Result<Vec<Complex64>> {
        let mut values = Vec::with_capacity(r as usize);
        let mut u = z;
        for j in 0..r {
            if u.norm() > escape_bound {
                return Err(Error::Overflow(format!(
                    "orbit value |u_{j}| = {:.3e} exceeds escape bound {escape_bound:.1e}",
                    u.norm()
                )));
            }
            values.push(u);
            u = self.eval(u);
        }
        Ok(values)
    }
}

/// A general dense polynomial, lowest degree first. Trailing exact zeros are
/// trimmed so the top stored coefficient is nonzero unless the polynomial is
/// identically zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensePoly {
    #[serde(with = "complex_vec")]
    coeffs: Vec<Complex64>,
}

impl DensePoly {
    pub fn from_coeffs(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    /// Single term c x^k.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        DensePoly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the stored polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> DensePoly {
        if self.coeffs.len() <= 1 {
            return DensePoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        DensePoly::from_coeffs(coeffs)
    }

    pub fn second_derivative(&self) -> DensePoly {
        self.derivative().derivative()
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        DensePoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        DensePoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, s: Complex64) -> DensePoly {
        DensePoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut coeffs =
            vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(coeffs)
    }

    /// Reinterpret as a monic polynomial (dropping the leading coefficient,
    /// which must be 1 within rounding). Inverse of [`MonicPoly::to_dense`].
    pub fn to_monic(&self) -> Result<MonicPoly> {
        let Some(deg) = self.degree() else {
            return Err(Error::InvalidInput("zero polynomial is not monic".into()));
        };
        let lead = self.coeffs[deg];
        if (lead - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "leading coefficient {lead} is not 1"
            )));
        }
        MonicPoly::new(self.coeffs[..deg].to_vec())
    }

    /// Coefficients of self(inner(x)) by Horner over the outer coefficients.
    /// Errors when the product of degrees exceeds `degree_cap`.
    pub fn compose(&self, inner: &DensePoly, degree_cap: usize) -> Result<DensePoly> {
        let (Some(d_outer), Some(d_inner)) = (self.degree(), inner.degree()) else {
            // Composing with or into a zero polynomial collapses to a constant.
            return Ok(DensePoly::from_coeffs(vec![self.coeff(0)]));
        };
        let requested = d_outer as u128 * d_inner as u128;
        if requested > degree_cap as u128 {
            return Err(Error::DegreeCapExceeded {
                requested,
                cap: degree_cap,
            });
        }
        let mut acc = DensePoly::from_coeffs(vec![*self.coeffs.last().unwrap()]);
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(inner).add(&DensePoly::from_coeffs(vec![*c]));
        }
        Ok(acc)
    }
}

/// g^(or)(x) - x, the polynomial whose roots are the points of period
/// dividing r.
pub fn period_polynomial(g: &MonicPoly, r: u32, degree_cap: usize) -> Result<DensePoly> {
    let iterate = g.iterate(r, degree_cap)?;
    Ok(iterate.sub(&DensePoly::monomial(Complex64::new(1.0, 0.0), 1)))
}

/// Convenience: default-capped iterate.
pub fn iterate(g: &MonicPoly, r: u32) -> Result<DensePoly> {
    g.iterate(r, config::DEGREE_CAP)
}
