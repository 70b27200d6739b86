//! Jacobi and Gegenbauer polynomials, and a small dense univariate
//! polynomial type used for exact coefficient algebra in the radial variable
//! `s = 2‖x‖² − 1`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{check_param, Result};

/// Univariate polynomial stored as ascending-power coefficients.
///
/// Trailing zeros are trimmed on construction, so `coeffs().len() - 1` is the
/// degree. The empty sequence is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolyCoeffs {
    coeffs: Vec<f64>,
}

impl PolyCoeffs {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `a + b s`
    pub fn linear(a: f64, b: f64) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Largest coefficient difference divided by the largest coefficient of
    /// either operand.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let scale = self.max_abs().max(other.max_abs());
        if scale == 0.0 {
            return 0.0;
        }
        (self - other).max_abs() / scale
    }

    fn zip_with(&self, other: &Self, op: impl Fn(f64, f64) -> f64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        Self::new(
            (0..len)
                .map(|k| op(get(&self.coeffs, k), get(&other.coeffs, k)))
                .collect(),
        )
    }
}

impl Add for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn add(self, rhs: &PolyCoeffs) -> PolyCoeffs {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn sub(self, rhs: &PolyCoeffs) -> PolyCoeffs {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn neg(self) -> PolyCoeffs {
        self.scale(-1.0)
    }
}

impl Mul for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn mul(self, rhs: &PolyCoeffs) -> PolyCoeffs {
        if self.is_zero() || rhs.is_zero() {
            return PolyCoeffs::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (k, &b) in rhs.coeffs.iter().enumerate() {
                out[i + k] += a * b;
            }
        }
        PolyCoeffs::new(out)
    }
}

impl Mul<f64> for &PolyCoeffs {
    type Output = PolyCoeffs;
    fn mul(self, rhs: f64) -> PolyCoeffs {
        self.scale(rhs)
    }
}

/// Jacobi parameters `(α, β)` for the weight `(1−s)^α (1+s)^β` on `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_param("alpha", alpha)?;
        check_param("beta", beta)?;
        Ok(Self { alpha, beta })
    }

    /// Coefficients `(a, b, c)` of `P_{k+1} = (a s + b) P_k − c P_{k−1}`, valid for `k ≥ 1`.
    fn recurrence(&self, k: usize) -> (f64, f64, f64) {
        let (a, b) = (self.alpha, self.beta);
        let k = k as f64;
        let sum = 2.0 * k + a + b;
        let denom = 2.0 * (k + 1.0) * (k + a + b + 1.0) * sum;
        let lead = (sum + 1.0) * (sum + 2.0) * sum / denom;
        let shift = (sum + 1.0) * (a * a - b * b) / denom;
        let back = 2.0 * (k + a) * (k + b) * (sum + 2.0) / denom;
        (lead, shift, back)
    }

    /// First-degree polynomial as `(constant, slope)`.
    fn first(&self) -> (f64, f64) {
        ((self.alpha - self.beta) / 2.0, (self.alpha + self.beta + 2.0) / 2.0)
    }
}

/// `P_j^{(α,β)}(1) = (α+1)_j / j!`.
fn value_at_one(alpha: f64, j: usize) -> f64 {
    (1..=j).fold(1.0, |acc, k| acc * (alpha + k as f64) / k as f64)
}

/// Evaluates `P_j^{(α,β)}(s)` by the three-term recurrence.
///
/// The endpoint values `s = ±1` are returned from their closed forms.
pub fn jacobi_eval(p: JacobiParams, j: usize, s: f64) -> Result<f64> {
    check_param("alpha", p.alpha)?;
    check_param("beta", p.beta)?;
    Ok(jacobi_eval_unchecked(p, j, s))
}

pub(crate) fn jacobi_eval_unchecked(p: JacobiParams, j: usize, s: f64) -> f64 {
    if s == 1.0 {
        return value_at_one(p.alpha, j);
    }
    if s == -1.0 {
        let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
        return sign * value_at_one(p.beta, j);
    }
    if j == 0 {
        return 1.0;
    }
    let (c0, c1) = p.first();
    let mut prev = 1.0;
    let mut cur = c0 + c1 * s;
    for k in 1..j {
        let (a, b, c) = p.recurrence(k);
        let next = (a * s + b) * cur - c * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of `P_j^{(α,β)}`, built with the same recurrence in
/// coefficient arithmetic.
pub fn jacobi_coeffs(p: JacobiParams, j: usize) -> Result<PolyCoeffs> {
    check_param("alpha", p.alpha)?;
    check_param("beta", p.beta)?;
    let one = PolyCoeffs::constant(1.0);
    if j == 0 {
        return Ok(one);
    }
    let (c0, c1) = p.first();
    let mut prev = one;
    let mut cur = PolyCoeffs::linear(c0, c1);
    for k in 1..j {
        let (a, b, c) = p.recurrence(k);
        let next = &(&cur * &PolyCoeffs::linear(b, a)) - &prev.scale(c);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `∫₋₁¹ [P_j^{(0,β)}(s)]² (1+s)^β ds = 2^{β+1} / (2j+β+1)`.
pub fn jacobi_norm0(beta: f64, j: usize) -> Result<f64> {
    check_param("beta", beta)?;
    Ok(2f64.powf(beta + 1.0) / (2.0 * j as f64 + beta + 1.0))
}

/// Gegenbauer polynomial `C_m^λ(t)` by its three-term recurrence.
pub fn gegenbauer_eval(lambda: f64, m: usize, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * t;
    for k in 1..m {
        let k = k as f64;
        let next = (2.0 * t * (k + lambda) * cur - (k + 2.0 * lambda - 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Chebyshev polynomial of the first kind `T_m(t)`.
pub fn chebyshev_eval(m: usize, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, t);
    for _ in 1..m {
        let next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Zonal kernel `Z_m(t) = ((m+λ)/λ) C_m^λ(t)` with `λ = (d−2)/2`.
///
/// This is the sum `Σ_ν Y_ν^m(x') Y_ν^m(y')` at `t = x'·y'` for harmonics
/// normalized against the averaged surface measure. For `d = 2` the factor is
/// singular and the limit `2 T_m(t)` (`1` when `m = 0`) is returned instead.
pub fn gegenbauer_kernel_factor(d: usize, m: usize, t: f64) -> f64 {
    assert!(d >= 2, "dimension must be at least 2");
    if m == 0 {
        return 1.0;
    }
    if d == 2 {
        return 2.0 * chebyshev_eval(m, t);
    }
    let lambda = (d as f64 - 2.0) / 2.0;
    (m as f64 + lambda) / lambda * gegenbauer_eval(lambda, m, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn jp(a: f64, b: f64) -> JacobiParams {
        JacobiParams::new(a, b).unwrap()
    }

    #[test]
    fn endpoint_values() {
        assert_eq!(jacobi_eval(jp(0.0, 3.0), 5, 1.0).unwrap(), 1.0);
        assert_eq!(jacobi_eval(jp(2.0, 1.0), 3, 1.0).unwrap(), 10.0);
        // (-1)^j (β+1)_j / j!
        assert_eq!(jacobi_eval(jp(0.0, 2.0), 1, -1.0).unwrap(), -3.0);
        for s in [-0.3, 0.0, 0.9] {
            assert_eq!(jacobi_eval(jp(1.5, 0.5), 0, s).unwrap(), 1.0);
        }
    }

    #[test]
    fn recurrence_matches_endpoint_closed_form() {
        // evaluate just inside the endpoint with the recurrence
        let p = jp(2.0, 4.0);
        for j in 0..12 {
            let inner = jacobi_eval(p, j, 1.0 - 1e-14).unwrap();
            let exact = jacobi_eval(p, j, 1.0).unwrap();
            assert_relative_eq!(inner, exact, max_relative = 1e-10);
        }
    }

    #[test]
    fn parameter_domain() {
        assert!(JacobiParams::new(-1.0, 0.0).is_err());
        let bad = JacobiParams { alpha: 0.0, beta: -1.5 };
        assert!(jacobi_eval(bad, 2, 0.0).is_err());
        assert!(jacobi_coeffs(bad, 2).is_err());
        assert!(jacobi_norm0(-1.0, 0).is_err());
    }

    #[test]
    fn low_degree_coefficients() {
        assert_eq!(jacobi_coeffs(jp(0.0, 0.0), 1).unwrap().coeffs(), &[0.0, 1.0]);
        assert_eq!(jacobi_coeffs(jp(3.0, 7.0), 0).unwrap().coeffs(), &[1.0]);
        // (α+β+2)s/2 + (α−β)/2 with α=0, β=2
        let p = jacobi_coeffs(jp(0.0, 2.0), 1).unwrap();
        assert_eq!(p.coeffs(), &[-1.0, 2.0]);
        for s in [-1.0, 0.0, 1.0] {
            assert_eq!(p.eval(s), jacobi_eval(jp(0.0, 2.0), 1, s).unwrap());
        }
        // Legendre P_2 = (3s² − 1)/2
        let p2 = jacobi_coeffs(jp(0.0, 0.0), 2).unwrap();
        assert!(p2.relative_distance(&PolyCoeffs::new(vec![-0.5, 0.0, 1.5])) < 1e-15);
    }

    #[test]
    fn norm0_values() {
        assert_eq!(jacobi_norm0(0.0, 0).unwrap(), 2.0);
        assert_relative_eq!(jacobi_norm0(1.0, 2).unwrap(), 4.0 / 6.0);
    }

    #[test]
    fn norm0_against_gauss_legendre_quadrature() {
        // 40-point Gauss–Legendre integrates [P_2^{(0,1)}]² (1+s) exactly.
        let rule = crate::quadrature::GaussJacobi::new(40, 0.0, 0.0).unwrap();
        let p = jp(0.0, 1.0);
        let integral: f64 = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&s, &w)| w * jacobi_eval(p, 2, s).unwrap().powi(2) * (1.0 + s))
            .sum();
        assert_relative_eq!(integral, jacobi_norm0(1.0, 2).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn kernel_factor_examples() {
        for t in [-1.0, -0.2, 0.4, 1.0] {
            assert_eq!(gegenbauer_kernel_factor(3, 0, t), 1.0);
            assert_relative_eq!(gegenbauer_kernel_factor(3, 1, t), 3.0 * t);
        }
        assert_eq!(gegenbauer_kernel_factor(2, 4, 1.0), 2.0);
        let (th, ph) = (0.7_f64, -1.1_f64);
        let direct = 2.0 * (4.0 * th).cos() * (4.0 * ph).cos() + 2.0 * (4.0 * th).sin() * (4.0 * ph).sin();
        assert_relative_eq!(gegenbauer_kernel_factor(2, 4, (th - ph).cos()), direct, epsilon = 1e-13);
    }

    #[test]
    fn gegenbauer_reduces_to_legendre() {
        // C_m^{1/2} = P_m
        for m in 0..10 {
            for t in [-0.9, -0.1, 0.35, 0.8] {
                let legendre = jacobi_eval(jp(0.0, 0.0), m, t).unwrap();
                assert_relative_eq!(gegenbauer_eval(0.5, m, t), legendre, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn poly_algebra() {
        let a = PolyCoeffs::new(vec![1.0, -1.0]);
        let b = PolyCoeffs::new(vec![1.0, 2.0]);
        assert_eq!((&a * &b).coeffs(), &[1.0, 1.0, -2.0]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(PolyCoeffs::new(vec![1.0, 0.0, 0.0]).degree(), Some(0));
        assert_eq!(b.derivative().coeffs(), &[2.0]);
    }
}
