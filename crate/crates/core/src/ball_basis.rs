//! Orthogonal polynomials on the unit ball.
//!
//! Two families share the index `(n, j, ν)` with `0 ≤ 2j ≤ n` and
//! `1 ≤ ν ≤ σ_{n−2j}`:
//!
//! * the classical basis for the weight `W_μ(x) = (1−‖x‖²)^μ`,
//!   `P_{j,ν}^n(W_μ; x) = P_j^{(μ, β)}(2‖x‖²−1) Y_ν^{n−2j}(x)`;
//! * the Sobolev basis `Q_{j,ν}^n(x) = p_j^β(2‖x‖²−1) Y_ν^{n−2j}(x)`, mutually
//!   orthogonal for `⟨f, g⟩_Δ = (4d² vol(B^d))^{−1} ∫ Δ[(1−‖x‖²)f] Δ[(1−‖x‖²)g]`.
//!
//! Here `β = n − 2j + (d−2)/2`. Since `p_j^β(s) = (1−s) P_{j−1}^{(2,β)}(s)` and
//! `1 − s = 2(1−‖x‖²)`, the Sobolev basis satisfies
//! `Q_{j,ν}^n = 2 (1−‖x‖²) P_{j−1,ν}^{n−2}(W_2; x)` for `j ≥ 1`. The factor 2
//! belongs to the radial family and is what makes [`sobolev_norm_sq`] hold.

use serde::{Deserialize, Serialize};

use crate::error::{check_param, Error, Result};
use crate::harmonics::{harmonic_dim, solid_harmonic_eval, HarmonicIndex};
use crate::polynomials::{jacobi_eval_unchecked, JacobiParams};
use crate::radial::{apply_j_beta, beta_for, p_beta};

/// Index `(n, j, ν)` of a basis element of degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub n: usize,
    pub j: usize,
    pub nu: usize,
}

impl BasisIndex {
    /// Validates the index for dimension `d`.
    pub fn new(d: usize, n: usize, j: usize, nu: usize) -> Result<Self> {
        let idx = Self { n, j, nu };
        idx.validate(d)?;
        Ok(idx)
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if 2 * self.j > self.n {
            return Err(Error::Index(format!("j = {} exceeds n/2 for n = {}", self.j, self.n)));
        }
        HarmonicIndex::new(d, self.harmonic_degree(), self.nu).map(|_| ())
    }

    /// Degree `n − 2j` of the harmonic factor.
    pub fn harmonic_degree(&self) -> usize {
        self.n - 2 * self.j
    }

    /// `β = n − 2j + (d−2)/2`.
    pub fn beta(&self, d: usize) -> f64 {
        beta_for(d, self.harmonic_degree())
    }

    fn harmonic(&self, d: usize) -> HarmonicIndex {
        HarmonicIndex::new(d, self.harmonic_degree(), self.nu).expect("validated basis index")
    }
}

/// All indices of degree `n`, sorted by `(j, ν)`.
pub fn indices_of_degree(d: usize, n: usize) -> Vec<BasisIndex> {
    (0..=n / 2)
        .flat_map(|j| (1..=harmonic_dim(d, n - 2 * j)).map(move |nu| BasisIndex { n, j, nu }))
        .collect()
}

/// All indices with `n ≤ max_degree`, sorted by `(n, j, ν)`.
pub fn indices_up_to(d: usize, max_degree: usize) -> Vec<BasisIndex> {
    (0..=max_degree).flat_map(|n| indices_of_degree(d, n)).collect()
}

fn norm_sq(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum()
}

/// `P_j^{(μ, β)}(2‖x‖²−1) Y_ν^{n−2j}(x)`.
pub fn classical_basis_eval(mu: f64, idx: BasisIndex, x: &[f64], d: usize) -> Result<f64> {
    check_param("mu", mu)?;
    idx.validate(d)?;
    Ok(classical_unchecked(mu, idx, x, d))
}

pub(crate) fn classical_unchecked(mu: f64, idx: BasisIndex, x: &[f64], d: usize) -> f64 {
    let s = 2.0 * norm_sq(x) - 1.0;
    let params = JacobiParams { alpha: mu, beta: idx.beta(d) };
    jacobi_eval_unchecked(params, idx.j, s) * solid_harmonic_eval(idx.harmonic(d), x)
}

/// `Q_{j,ν}^n(x)`, evaluated from the factored form.
///
/// # Panics
/// If `idx` is not valid for `d` or `x.len() != d`.
pub fn sobolev_basis_eval(idx: BasisIndex, x: &[f64], d: usize) -> f64 {
    let y = solid_harmonic_eval(idx.harmonic(d), x);
    if idx.j == 0 {
        return y;
    }
    let r2 = norm_sq(x);
    let params = JacobiParams { alpha: 2.0, beta: idx.beta(d) };
    2.0 * (1.0 - r2) * jacobi_eval_unchecked(params, idx.j - 1, 2.0 * r2 - 1.0) * y
}

/// `Q_{j,ν}^n(x) / √⟨Q, Q⟩_Δ`.
pub fn sobolev_basis_normalized(idx: BasisIndex, x: &[f64], d: usize) -> f64 {
    sobolev_basis_eval(idx, x, d) / sobolev_norm_sq(idx, d).sqrt()
}

/// `⟨Q_{j,ν}^n, Q_{j,ν}^n⟩_Δ`: `(2n+d)/d` for `j = 0`, otherwise
/// `8j²(j+1)² / (d(n + d/2))`. Independent of `ν`.
pub fn sobolev_norm_sq(idx: BasisIndex, d: usize) -> f64 {
    let (n, d) = (idx.n as f64, d as f64);
    if idx.j == 0 {
        (2.0 * n + d) / d
    } else {
        let j = idx.j as f64;
        8.0 * j * j * (j + 1.0).powi(2) / (d * (n + d / 2.0))
    }
}

/// `Δ[(1−‖x‖²) Q_{j,ν}^n](x)` in closed form: `−2(d+2n) Y_ν^n(x)` for
/// `j = 0`, and `8j(j+1) P_{j,ν}^n(W_0; x)` for `j ≥ 1`.
pub fn laplacian_lift(idx: BasisIndex, x: &[f64], d: usize) -> f64 {
    if idx.j == 0 {
        -2.0 * (d + 2 * idx.n) as f64 * solid_harmonic_eval(idx.harmonic(d), x)
    } else {
        let j = idx.j as f64;
        8.0 * j * (j + 1.0) * classical_unchecked(0.0, idx, x, d)
    }
}

/// The same quantity through the radial operator: `4 (𝒥_β p_j^β)(2‖x‖²−1) Y(x)`.
pub fn laplacian_lift_radial(idx: BasisIndex, x: &[f64], d: usize) -> f64 {
    let beta = idx.beta(d);
    let lifted = apply_j_beta(&p_beta(idx.j, beta), beta);
    4.0 * lifted.eval(2.0 * norm_sq(x) - 1.0) * solid_harmonic_eval(idx.harmonic(d), x)
}
