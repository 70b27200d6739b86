//! Polynomial-exact integration on the unit ball `B^d` and sphere `S^{d−1}`
//! for `d ∈ {2, 3}`.
//!
//! Ball rules are products of a radial Gauss–Jacobi rule in `s = 2r² − 1`
//! and an angular rule. Under that substitution `r^{d−1} dr` becomes a
//! multiple of `(1+s)^{(d−2)/2} ds`, so every even radial moment is a
//! polynomial in `s` and integrates exactly. Odd homogeneous parts vanish by
//! the antipodal symmetry of the angular rules.

use std::f64::consts::PI;
use std::io::Write;

use nalgebra::{DMatrix, SymmetricEigen};
use statrs::function::gamma::ln_gamma;

use crate::error::{check_param, Error, Result};
use crate::expansion::FunctionInput;

/// `Γ(d/2)` for a positive integer `d`.
fn gamma_half(d: usize) -> f64 {
    if d.is_multiple_of(2) {
        (1..d / 2).fold(1.0, |acc, k| acc * k as f64)
    } else {
        // Γ(1/2) = √π, Γ(x+1) = xΓ(x)
        (0..(d - 1) / 2).fold(PI.sqrt(), |acc, k| acc * (k as f64 + 0.5))
    }
}

/// Returns `(vol(B^d), ω_{d−1})`.
pub fn geometry_constants(d: usize) -> (f64, f64) {
    assert!(d >= 1, "dimension must be positive");
    let omega = 2.0 * PI.powf(d as f64 / 2.0) / gamma_half(d);
    (omega / d as f64, omega)
}

/// Gauss–Jacobi rule on `[−1, 1]` for the weight `(1−s)^α (1+s)^β`.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussJacobi {
    /// `n`-point rule, exact for polynomials of degree `2n − 1`.
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        check_param("alpha", alpha)?;
        check_param("beta", beta)?;
        let (diag, off) = jacobi_matrix(n, alpha, beta);
        let mu0 = ((alpha + beta + 1.0) * 2f64.ln() + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
            - ln_gamma(alpha + beta + 2.0))
        .exp();
        if n == 0 {
            return Ok(Self { nodes: vec![], weights: vec![] });
        }

        let mut matrix = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            matrix[(i, i)] = diag[i];
            if i + 1 < n {
                matrix[(i, i + 1)] = off[i + 1];
                matrix[(i + 1, i)] = off[i + 1];
            }
        }
        let mut nodes: Vec<f64> = SymmetricEigen::new(matrix).eigenvalues.iter().copied().collect();
        nodes.sort_by(f64::total_cmp);

        let mut weights = Vec::with_capacity(n);
        for x in nodes.iter_mut() {
            // Newton polish on the orthonormal recurrence
            for _ in 0..3 {
                let (value, slope, _) = orthonormal_eval(&diag, &off, n, *x);
                if slope != 0.0 {
                    *x -= value / slope;
                }
            }
            let (_, _, christoffel) = orthonormal_eval(&diag, &off, n, *x);
            weights.push(mu0 / christoffel);
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Diagonal `a_k` and off-diagonal `b_k` (`b_0` unused) of the Jacobi matrix.
fn jacobi_matrix(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let diag = (0..n)
        .map(|k| {
            if k == 0 {
                (beta - alpha) / (ab + 2.0)
            } else {
                let t = 2.0 * k as f64 + ab;
                (beta * beta - alpha * alpha) / (t * (t + 2.0))
            }
        })
        .collect();
    let off = (0..=n)
        .map(|k| match k {
            0 => 0.0,
            1 => (4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab))).sqrt(),
            _ => {
                let kf = k as f64;
                let t = 2.0 * kf + ab;
                (4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0)))
                    .sqrt()
            }
        })
        .collect();
    (diag, off)
}

/// Returns `(p̂_n(x), p̂_n'(x), Σ_{k<n} p̂_k(x)²)` for the orthonormal family of
/// the normalized weight.
fn orthonormal_eval(diag: &[f64], off: &[f64], n: usize, x: f64) -> (f64, f64, f64) {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut dp) = (0.0, 0.0);
    let mut sum_sq = 0.0;
    for k in 0..n {
        sum_sq += p * p;
        let next = ((x - diag[k]) * p - off[k] * p_prev) / off[k + 1];
        let dnext = (p + (x - diag[k]) * dp - off[k] * d_prev) / off[k + 1];
        p_prev = p;
        p = next;
        d_prev = dp;
        dp = dnext;
    }
    (p, dp, sum_sq)
}

/// Domain a rule integrates over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Ball,
    Sphere,
}

/// Nodes and positive weights for exact polynomial integration.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    dim: usize,
    domain: Domain,
    points: Vec<f64>,
    weights: Vec<f64>,
    exact_degree: usize,
}

impl QuadratureRule {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn exact_degree(&self) -> usize {
        self.exact_degree
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.dim)
    }

    /// `(point, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.points().zip(self.weights.iter().copied())
    }

    /// `Σ w_i f(x_i)` for an infallible integrand.
    pub fn sum(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.iter().map(|(x, w)| w * f(x)).sum()
    }

    /// Writes one row per node: coordinates followed by the weight.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        writeln!(out, "{},weight", header.join(","))?;
        for (x, w) in self.iter() {
            let coords: Vec<String> = x.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{},{}", coords.join(","), w)?;
        }
        Ok(())
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(Error::Dimension(d))
    }
}

/// Smallest even count `≥ degree + 1`; even counts keep the rule antipodally symmetric.
fn trapezoid_count(degree: usize) -> usize {
    let m = degree + 1;
    m + m % 2
}

/// Unit directions with weights summing to `ω_{d−1}`.
fn angular_nodes(d: usize, degree: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_dim(d)?;
    let m = trapezoid_count(degree);
    let dphi = 2.0 * PI / m as f64;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    if d == 2 {
        for k in 0..m {
            let phi = k as f64 * dphi;
            points.extend([phi.cos(), phi.sin()]);
            weights.push(dphi);
        }
    } else {
        let polar = GaussJacobi::new(degree / 2 + 1, 0.0, 0.0)?;
        for (&t, &wt) in polar.nodes().iter().zip(polar.weights()) {
            let rho = (1.0 - t * t).sqrt();
            for k in 0..m {
                let phi = k as f64 * dphi;
                points.extend([rho * phi.cos(), rho * phi.sin(), t]);
                weights.push(wt * dphi);
            }
        }
    }
    Ok((points, weights))
}

/// Rule on `S^{d−1}` exact for polynomials of total degree `≤ exact_degree`.
pub fn sphere_rule(d: usize, exact_degree: usize) -> Result<QuadratureRule> {
    let (points, weights) = angular_nodes(d, exact_degree)?;
    Ok(QuadratureRule { dim: d, domain: Domain::Sphere, points, weights, exact_degree })
}

/// Rule on `B^d` exact for polynomials of total degree `≤ exact_degree`.
pub fn ball_rule(d: usize, exact_degree: usize) -> Result<QuadratureRule> {
    weighted_ball_rule(d, exact_degree, 0.0)
}

/// Rule for `∫_{B^d} g(x) (1−‖x‖²)^μ dx`, exact when `g` is a polynomial of
/// total degree `≤ exact_degree`. The weight is folded into the rule weights.
pub fn weighted_ball_rule(d: usize, exact_degree: usize, mu: f64) -> Result<QuadratureRule> {
    check_dim(d)?;
    check_param("mu", mu)?;
    let beta = (d as f64 - 2.0) / 2.0;
    let radial = GaussJacobi::new(exact_degree / 4 + 1, mu, beta)?;
    // r^{d−1}(1−r²)^μ dr = 2^{−β−μ}/4 · (1−s)^μ (1+s)^β ds
    let scale = 2f64.powf(-beta - mu) / 4.0;
    let (dirs, dir_weights) = angular_nodes(d, exact_degree)?;

    let mut points = Vec::with_capacity(radial.len() * dirs.len());
    let mut weights = Vec::with_capacity(radial.len() * dir_weights.len());
    for (&s, &ws) in radial.nodes().iter().zip(radial.weights()) {
        let r = ((1.0 + s) / 2.0).sqrt();
        for (dir, &wd) in dirs.chunks_exact(d).zip(&dir_weights) {
            points.extend(dir.iter().map(|c| r * c));
            weights.push(scale * ws * wd);
        }
    }
    Ok(QuadratureRule { dim: d, domain: Domain::Ball, points, weights, exact_degree })
}

/// `Σ w_i f(x_i)`; fails on the first non-finite function value.
pub fn integrate(f: &FunctionInput, rule: &QuadratureRule) -> Result<f64> {
    let mut total = 0.0;
    for (x, w) in rule.iter() {
        let value = f.value(x);
        if !value.is_finite() {
            return Err(Error::NonFinite { point: x.to_vec(), value });
        }
        total += w * value;
    }
    Ok(total)
}
