//! Real spherical harmonics normalized against the averaged surface measure
//! `(1/ω_{d−1}) ∫_{S^{d−1}} · dω`, so every `Y_ν^n` has unit mean square.
//!
//! Enumeration of `ν` (1-based):
//!
//! * `d = 2`: `n = 0` gives the constant `1`. For `n ≥ 1`, `ν = 1` is
//!   `√2 rⁿ cos nθ` and `ν = 2` is `√2 rⁿ sin nθ`.
//! * `d = 3`: `ν = 1` is the zonal harmonic (`m = 0`). `ν = 2k` and `ν = 2k+1`
//!   are the `cos kφ` and `sin kφ` harmonics of order `k = 1..=n`. Associated
//!   Legendre functions carry no Condon–Shortley phase, so
//!   `Y_1^1 = √3 z`, `Y_2^1 = √3 x`, `Y_3^1 = √3 y`.
//!
//! Explicit bases exist for `d ∈ {2, 3}`. Dimension counts and the summed
//! addition kernel work for every `d ≥ 2`.

use crate::error::{Error, Result};
use crate::polynomials::gegenbauer_kernel_factor;

/// Index `(d, n, ν)` of a spherical harmonic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HarmonicIndex {
    dim: usize,
    n: usize,
    nu: usize,
}

impl HarmonicIndex {
    pub fn new(dim: usize, n: usize, nu: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::Dimension(dim));
        }
        let count = harmonic_dim(dim, n);
        if nu == 0 || nu > count {
            return Err(Error::Index(format!(
                "nu = {nu} outside 1..={count} for d = {dim}, n = {n}"
            )));
        }
        Ok(Self { dim, n, nu })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> usize {
        self.nu
    }
}

/// A point on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    const TOLERANCE: f64 = 1e-14;

    /// Accepts coordinates whose norm is 1 to within `1e−14`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if coords.len() < 2 || (norm - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::Config(format!("point {coords:?} is not on the unit sphere")));
        }
        Ok(Self(coords))
    }

    /// Projects a non-zero vector onto the sphere.
    pub fn normalize(coords: &[f64]) -> Result<Self> {
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Config("cannot normalize a zero vector".into()));
        }
        Self::new(coords.iter().map(|c| c / norm).collect())
    }

    /// Point at angle `theta` on the unit circle.
    pub fn from_angle(theta: f64) -> Self {
        Self(vec![theta.cos(), theta.sin()])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

fn binomial(top: usize, bottom: usize) -> u128 {
    if bottom > top {
        return 0;
    }
    let bottom = bottom.min(top - bottom);
    (0..bottom).fold(1u128, |acc, k| acc * (top - k) as u128 / (k + 1) as u128)
}

/// `σ_n = C(n+d−1, d−1) − C(n+d−3, d−1)`, the dimension of degree-`n`
/// harmonics in `d` variables. The second term vanishes for `n < 2`.
pub fn harmonic_dim(d: usize, n: usize) -> usize {
    assert!(d >= 2, "dimension must be at least 2");
    let total = binomial(n + d - 1, d - 1);
    let lower = if n >= 2 { binomial(n + d - 3, d - 1) } else { 0 };
    (total - lower) as usize
}

/// `(Re, Im)` of `(x + i y)^m`.
fn complex_power(x: f64, y: f64, m: usize) -> (f64, f64) {
    (0..m).fold((1.0, 0.0), |(re, im), _| (re * x - im * y, re * y + im * x))
}

/// Maps `ν` to `(order m, uses sine)` for `d = 3`.
fn order_of(nu: usize) -> (usize, bool) {
    if nu == 1 {
        (0, false)
    } else {
        (nu / 2, nu % 2 == 1)
    }
}

/// `√((2l+1)(2−δ_{m0}) (l−m)!/(l+m)!) · (2m−1)!!`
fn legendre_normalization(l: usize, m: usize) -> f64 {
    let base = (2 * l + 1) as f64 * if m == 0 { 1.0 } else { 2.0 };
    let ratio = (1..=m).fold(1.0, |acc, i| {
        let odd = (2 * i - 1) as f64;
        acc * odd * odd / (((l - m + 2 * i - 1) * (l - m + 2 * i)) as f64)
    });
    (base * ratio).sqrt()
}

/// `r^{l−m} P_l^{(m)}(z/r) / (2m−1)!!`, a homogeneous polynomial in `z` and `r²`.
fn legendre_solid(l: usize, m: usize, z: f64, r2: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in m + 1..=l {
        let next = if k == m + 1 {
            (2 * m + 1) as f64 * z * cur
        } else {
            ((2 * k - 1) as f64 * z * cur - (k + m - 1) as f64 * r2 * prev) / (k - m) as f64
        };
        prev = cur;
        cur = next;
    }
    cur
}

/// Value of the solid harmonic `‖x‖ⁿ Y_ν^n(x/‖x‖)` at any `x ∈ R^d`.
pub fn solid_harmonic_eval(idx: HarmonicIndex, x: &[f64]) -> f64 {
    assert_eq!(x.len(), idx.dim, "point dimension mismatch");
    let n = idx.n;
    match idx.dim {
        2 => {
            if n == 0 {
                return 1.0;
            }
            let (re, im) = complex_power(x[0], x[1], n);
            std::f64::consts::SQRT_2 * if idx.nu == 1 { re } else { im }
        }
        _ => {
            let (m, sine) = order_of(idx.nu);
            let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            let (re, im) = complex_power(x[0], x[1], m);
            let azimuthal = if sine { im } else { re };
            legendre_normalization(n, m) * legendre_solid(n, m, x[2], r2) * azimuthal
        }
    }
}

/// `Y_ν^n(x')` on the sphere.
pub fn sph_harmonic_eval(idx: HarmonicIndex, xp: &SpherePoint) -> Result<f64> {
    if xp.dim() != idx.dim {
        return Err(Error::Dimension(xp.dim()));
    }
    Ok(solid_harmonic_eval(idx, xp.coords()))
}

/// All `σ_n` solid harmonics of degree `n` at `x`, in `ν` order.
pub fn solid_harmonics(d: usize, n: usize, x: &[f64]) -> Result<Vec<f64>> {
    (1..=harmonic_dim(d, n))
        .map(|nu| HarmonicIndex::new(d, n, nu).map(|idx| solid_harmonic_eval(idx, x)))
        .collect()
}

/// `Σ_ν Y_ν^n(x') Y_ν^n(y')` in closed form, valid for every `d ≥ 2`.
pub fn addition_kernel(d: usize, n: usize, xp: &SpherePoint, yp: &SpherePoint) -> f64 {
    let t = xp.dot(yp).clamp(-1.0, 1.0);
    gegenbauer_kernel_factor(d, n, t)
}
