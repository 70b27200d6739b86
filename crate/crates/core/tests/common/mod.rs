//! Oracles and sampling helpers shared by the integration tests. Nothing here
//! calls into the library's numerics.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sobolev_ball::PolyCoeffs;
use statrs::function::gamma::gamma;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn norm_sq(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum()
}

/// Uniform point in the ball of radius `radius`.
pub fn ball_point<R: Rng>(rng: &mut R, d: usize, radius: f64) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..d).map(|_| rng.random_range(-radius..radius)).collect();
        if norm_sq(&x) < radius * radius {
            return x;
        }
    }
}

pub fn sphere_point<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    loop {
        let x = ball_point(rng, d, 1.0);
        let r = norm_sq(&x).sqrt();
        if r > 0.1 {
            return x.iter().map(|c| c / r).collect();
        }
    }
}

fn binomial(top: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (top - i as f64) / (i + 1) as f64)
}

/// `P_n^{(α,β)}` from the explicit sum
/// `Σ_k C(n+α, n−k) C(n+β, k) ((s−1)/2)^k ((s+1)/2)^{n−k}`.
pub fn jacobi_explicit(alpha: f64, beta: f64, n: usize) -> PolyCoeffs {
    let minus = PolyCoeffs::linear(-0.5, 0.5);
    let plus = PolyCoeffs::linear(0.5, 0.5);
    let pow = |p: &PolyCoeffs, k: usize| (0..k).fold(PolyCoeffs::constant(1.0), |acc, _| &acc * p);
    (0..=n).fold(PolyCoeffs::zero(), |acc, k| {
        let c = binomial(n as f64 + alpha, n - k) * binomial(n as f64 + beta, k);
        &acc + &(&pow(&minus, k) * &pow(&plus, n - k)).scale(c)
    })
}

/// `∮_{S^{d−1}} x^a dω = 2 Π Γ(b_i) / Γ(Σ b_i)` with `b_i = (a_i+1)/2`, zero if any `a_i` is odd.
pub fn sphere_monomial(a: &[u32]) -> f64 {
    if a.iter().any(|k| k % 2 == 1) {
        return 0.0;
    }
    let b: Vec<f64> = a.iter().map(|&k| (k as f64 + 1.0) / 2.0).collect();
    2.0 * b.iter().map(|&x| gamma(x)).product::<f64>() / gamma(b.iter().sum())
}

/// `∫_{B^d} x^a dx = ∮ x^a dω / (|a| + d)`.
pub fn ball_monomial(a: &[u32]) -> f64 {
    sphere_monomial(a) / (a.iter().sum::<u32>() as f64 + a.len() as f64)
}

pub fn ball_volume(d: usize) -> f64 {
    std::f64::consts::PI.powf(d as f64 / 2.0) / gamma(d as f64 / 2.0 + 1.0)
}

pub fn sphere_area(d: usize) -> f64 {
    d as f64 * ball_volume(d)
}

/// Central-difference Laplacian with step `h`.
pub fn fd_laplacian(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> f64 {
    let center = f(x);
    let mut total = 0.0;
    let mut y = x.to_vec();
    for i in 0..x.len() {
        y[i] = x[i] + h;
        let up = f(&y);
        y[i] = x[i] - h;
        let down = f(&y);
        y[i] = x[i];
        total += (up - 2.0 * center + down) / (h * h);
    }
    total
}

/// Laplacian on the sphere by finite differences of the 0-homogeneous extension:
/// `Δ₀ g = Δ[g(x/‖x‖)]` at a unit vector.
pub fn fd_sphere_laplacian(g: impl Fn(&[f64]) -> f64, xp: &[f64], h: f64) -> f64 {
    fd_laplacian(
        |y| {
            let r = norm_sq(y).sqrt();
            let u: Vec<f64> = y.iter().map(|c| c / r).collect();
            g(&u)
        },
        xp,
        h,
    )
}

pub fn random_poly<R: Rng>(rng: &mut R, degree: usize) -> PolyCoeffs {
    PolyCoeffs::new((0..=degree).map(|_| rng.random_range(-1.0..1.0)).collect())
}
