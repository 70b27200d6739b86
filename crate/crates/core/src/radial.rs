//! Radial reduction of the Sobolev inner product.
//!
//! For `Q(x) = q(2‖x‖²−1) Y(x)` with `Y` a solid harmonic of degree `m`,
//! `Δ[(1−‖x‖²) Q] = 4 (𝒥_β q)(2‖x‖²−1) Y` where `β = m + (d−2)/2` and
//!
//! ```text
//! 𝒥_β q = (1−s²) q'' + (β − 1 − (β+3) s) q' − (β+1) q.
//! ```
//!
//! The polynomials `p_0 = 1`, `p_j = (1−s) P_{j−1}^{(2,β)}(s)` are orthogonal
//! for `(f, g)_β = ∫₋₁¹ (𝒥_β f)(𝒥_β g)(1+s)^β ds`.

use crate::error::{check_param, Result};
use crate::polynomials::{jacobi_coeffs, JacobiParams, PolyCoeffs};
use crate::quadrature::GaussJacobi;

/// Radial family member: degree `j` for parameter `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialIndex {
    pub beta: f64,
    pub j: usize,
}

impl RadialIndex {
    pub fn new(beta: f64, j: usize) -> Result<Self> {
        check_param("beta", beta)?;
        Ok(Self { beta, j })
    }

    pub fn poly(&self) -> PolyCoeffs {
        p_beta(self.j, self.beta)
    }
}

/// `β = m + (d−2)/2` for a harmonic factor of degree `m`.
pub fn beta_for(d: usize, harmonic_degree: usize) -> f64 {
    harmonic_degree as f64 + (d as f64 - 2.0) / 2.0
}

/// Applies `𝒥_β` in coefficient arithmetic. The degree is preserved: the
/// leading coefficient of `s^k` is multiplied by `−(k+1)(k+β+1)`.
pub fn apply_j_beta(q: &PolyCoeffs, beta: f64) -> PolyCoeffs {
    let d1 = q.derivative();
    let d2 = d1.derivative();
    let one_minus_s2 = PolyCoeffs::new(vec![1.0, 0.0, -1.0]);
    let drift = PolyCoeffs::linear(beta - 1.0, -(beta + 3.0));
    let mut out = &one_minus_s2 * &d2;
    out = &out + &(&drift * &d1);
    &out - &q.scale(beta + 1.0)
}

/// `p_0^β = 1` and `p_j^β = (1−s) P_{j−1}^{(2,β)}(s)`.
///
/// # Panics
/// If `β ≤ −1`.
pub fn p_beta(j: usize, beta: f64) -> PolyCoeffs {
    if j == 0 {
        return PolyCoeffs::constant(1.0);
    }
    let params = JacobiParams::new(2.0, beta).expect("beta must exceed -1");
    let jac = jacobi_coeffs(params, j - 1).expect("validated parameters");
    &PolyCoeffs::linear(1.0, -1.0) * &jac
}

/// `(f, g)_β` by Gauss–Jacobi quadrature in the weight `(1+s)^β`, with the
/// node count chosen from the input degrees so the result is exact.
pub fn radial_inner(f: &PolyCoeffs, g: &PolyCoeffs, beta: f64) -> Result<f64> {
    check_param("beta", beta)?;
    let jf = apply_j_beta(f, beta);
    let jg = apply_j_beta(g, beta);
    let degree = jf.degree().unwrap_or(0) + jg.degree().unwrap_or(0);
    let rule = GaussJacobi::new(degree / 2 + 1, 0.0, beta)?;
    Ok(rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&s, &w)| w * jf.eval(s) * jg.eval(s))
        .sum())
}
