//! Least-squares spectral solver for `−Δu = g` on `B^d` with `u = 0` on the
//! boundary.
//!
//! The trial functions are `(1−‖x‖²) Q_idx`. Their Laplacians are the lifts
//! `L_idx = Δ[(1−‖x‖²) Q_idx]`, which are mutually orthogonal in `L²(B^d)`,
//! so minimizing `∫ (Δu_N + g)²` decouples into one division per index:
//! `c_idx = −∫ g L_idx / ∫ L_idx²`.

use std::f64::consts::PI;
use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::ball_basis::{indices_up_to, laplacian_lift, sobolev_norm_sq, BasisIndex};
use crate::error::{Error, Result};
use crate::expansion::{default_quad_degree, CoefficientVector, FunctionInput, ScalarField};
use crate::quadrature::{ball_rule, QuadratureRule};

/// Linear Poisson problem with homogeneous Dirichlet data.
#[derive(Clone)]
pub struct PoissonProblem {
    pub dim: usize,
    pub rhs: FunctionInput,
    pub degree: usize,
    pub quad_degree: usize,
    /// Exact solution, when known, for error reporting.
    pub exact: Option<ScalarField>,
}

impl PoissonProblem {
    /// Problem with the default quadrature degree `2N + 8`.
    pub fn new(dim: usize, rhs: FunctionInput, degree: usize) -> Self {
        Self { dim, rhs, degree, quad_degree: default_quad_degree(degree), exact: None }
    }

    pub fn with_exact(mut self, exact: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.exact = Some(std::sync::Arc::new(exact));
        self
    }

    pub fn with_quad_degree(mut self, quad_degree: usize) -> Self {
        self.quad_degree = quad_degree;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dim != 2 && self.dim != 3 {
            return Err(Error::Dimension(self.dim));
        }
        if self.quad_degree < default_quad_degree(self.degree) {
            return Err(Error::Config(format!(
                "quadrature degree {} is below 2N+8 = {}",
                self.quad_degree,
                default_quad_degree(self.degree)
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for PoissonProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PoissonProblem")
            .field("dim", &self.dim)
            .field("degree", &self.degree)
            .field("quad_degree", &self.quad_degree)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

/// `u_N = (1−‖x‖²) v` with `v` stored as raw Sobolev coefficients.
#[derive(Debug, Clone)]
pub struct PoissonSolution {
    pub coeffs: CoefficientVector,
    /// `‖Δu_N + g‖_{L²(B^d)}` by quadrature.
    pub residual_l2: f64,
}

impl PoissonSolution {
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().map(|c| c * c).sum();
        (1.0 - r2) * self.coeffs.evaluate(x)
    }

    /// Trial-space coefficient `c_idx` of `(1−‖x‖²) Q_idx`.
    pub fn trial_coefficient(&self, idx: &BasisIndex) -> f64 {
        self.coeffs.get(idx) / sobolev_norm_sq(*idx, self.coeffs.dim)
    }
}

fn sample_rhs(rhs: &FunctionInput, rule: &QuadratureRule) -> Result<Vec<f64>> {
    rule.points()
        .map(|x| {
            let v = rhs.value(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { point: x.to_vec(), value: v })
            }
        })
        .collect()
}

fn solve_with_rule(p: &PoissonProblem, rule: &QuadratureRule, g: &[f64]) -> PoissonSolution {
    let d = p.dim;
    let indices = indices_up_to(d, p.degree);
    let columns: Vec<(f64, Vec<f64>)> = indices
        .par_iter()
        .map(|&idx| {
            let lift: Vec<f64> = rule.points().map(|x| laplacian_lift(idx, x, d)).collect();
            let num: f64 = rule.weights().iter().zip(g).zip(&lift).map(|((w, g), l)| w * g * l).sum();
            let den: f64 = rule.weights().iter().zip(&lift).map(|(w, l)| w * l * l).sum();
            (-num / den, lift)
        })
        .collect();

    let mut residual = g.to_vec();
    for (c, lift) in &columns {
        for (r, l) in residual.iter_mut().zip(lift) {
            *r += c * l;
        }
    }
    let residual_l2 = rule.weights().iter().zip(&residual).map(|(w, r)| w * r * r).sum::<f64>().sqrt();

    let mut coeffs = CoefficientVector::new(d, p.degree);
    coeffs.quad_degree = Some(rule.exact_degree());
    coeffs.entries = indices
        .into_iter()
        .zip(&columns)
        .map(|(idx, (c, _))| (idx, c * sobolev_norm_sq(idx, d)))
        .collect();
    PoissonSolution { coeffs, residual_l2 }
}

/// Solves the least-squares problem; the normal equations are diagonal.
pub fn solve_poisson(p: &PoissonProblem) -> Result<PoissonSolution> {
    p.validate()?;
    let rule = ball_rule(p.dim, p.quad_degree)?;
    let g = sample_rhs(&p.rhs, &rule)?;
    Ok(solve_with_rule(p, &rule, &g))
}

/// Full normal equations `M c = b` with `M_ik = ∫ L_i L_k` and `b_i = −∫ g L_i`,
/// for cross-checking the diagonal solve.
pub fn normal_equations(p: &PoissonProblem) -> Result<(Vec<BasisIndex>, DMatrix<f64>, DVector<f64>)> {
    p.validate()?;
    let d = p.dim;
    let rule = ball_rule(d, p.quad_degree)?;
    let g = sample_rhs(&p.rhs, &rule)?;
    let indices = indices_up_to(d, p.degree);
    let lifts: Vec<Vec<f64>> = indices
        .iter()
        .map(|&idx| rule.points().map(|x| laplacian_lift(idx, x, d)).collect())
        .collect();
    let w = rule.weights();
    let inner = |a: &[f64], b: &[f64]| a.iter().zip(b).zip(w).map(|((a, b), w)| a * b * w).sum::<f64>();
    let size = indices.len();
    let matrix = DMatrix::from_fn(size, size, |i, k| inner(&lifts[i], &lifts[k]));
    let rhs = DVector::from_fn(size, |i, _| -inner(&lifts[i], &g));
    Ok((indices, matrix, rhs))
}

/// Polar (d = 2) or spherical (d = 3) sampling grid including the centre and boundary.
///
/// Each entry is `(polar coordinates, Cartesian point)`.
pub fn sample_grid(d: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut out = Vec::new();
    if d == 2 {
        for i in 0..50 {
            let r = i as f64 / 49.0;
            for k in 0..50 {
                let th = 2.0 * PI * k as f64 / 50.0;
                out.push((vec![r, th], vec![r * th.cos(), r * th.sin()]));
            }
        }
    } else {
        for i in 0..20 {
            let r = i as f64 / 19.0;
            for a in 0..20 {
                let th = PI * (a as f64 + 0.5) / 20.0;
                for b in 0..40 {
                    let ph = 2.0 * PI * b as f64 / 40.0;
                    out.push((
                        vec![r, th, ph],
                        vec![r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos()],
                    ));
                }
            }
        }
    }
    out
}

/// Largest `|u_N − u*|` over [`sample_grid`].
pub fn sup_error(solution: &PoissonSolution, exact: &(dyn Fn(&[f64]) -> f64 + Sync)) -> f64 {
    sample_grid(solution.coeffs.dim)
        .par_iter()
        .map(|(_, x)| (solution.evaluate(x) - exact(x)).abs())
        .reduce(|| 0.0, f64::max)
}

/// Writes `r,theta[,phi],u` over [`sample_grid`].
pub fn write_grid_csv<W: Write>(solution: &PoissonSolution, mut out: W) -> Result<()> {
    let d = solution.coeffs.dim;
    writeln!(out, "{}", if d == 2 { "r,theta,u" } else { "r,theta,phi,u" })?;
    for (polar, x) in sample_grid(d) {
        let coords: Vec<String> = polar.iter().map(|c| c.to_string()).collect();
        writeln!(out, "{},{}", coords.join(","), solution.evaluate(&x))?;
    }
    Ok(())
}

/// One row of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ConvergenceRow {
    pub degree: usize,
    pub sup_error: Option<f64>,
    pub residual_l2: f64,
}

/// Solves at each truncation degree with one shared quadrature rule of degree
/// `max(quad_degree, 2·max N + 8)`, so residuals are comparable across rows.
pub fn convergence_report(p: &PoissonProblem, degrees: &[usize]) -> Result<Vec<ConvergenceRow>> {
    let Some(&top) = degrees.iter().max() else {
        return Ok(Vec::new());
    };
    let quad = p.quad_degree.max(default_quad_degree(top));
    let rule = ball_rule(p.dim, quad)?;
    let g = sample_rhs(&p.rhs, &rule)?;
    degrees
        .iter()
        .map(|&n| {
            let sub = PoissonProblem { degree: n, quad_degree: quad, ..p.clone() };
            sub.validate()?;
            let sol = solve_with_rule(&sub, &rule, &g);
            let sup_error = p.exact.as_ref().map(|u| sup_error(&sol, u.as_ref()));
            Ok(ConvergenceRow { degree: n, sup_error, residual_l2: sol.residual_l2 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rhs_gives_zero_solution() {
        let p = PoissonProblem::new(2, FunctionInput::new(|_| 0.0), 6);
        let sol = solve_poisson(&p).unwrap();
        assert!(sol.coeffs.entries.values().all(|&c| c == 0.0));
        assert_eq!(sol.residual_l2, 0.0);
        assert_eq!(sol.evaluate(&[0.3, 0.1]), 0.0);
    }

    #[test]
    fn constant_rhs_is_exact() {
        for d in [2usize, 3] {
            let p = PoissonProblem::new(d, FunctionInput::new(|_| 4.0), 2);
            let sol = solve_poisson(&p).unwrap();
            let scale = 2.0 / d as f64;
            for x in [vec![0.0; d], vec![0.3; d], vec![-0.5; d]] {
                let r2: f64 = x.iter().map(|c| c * c).sum();
                assert!((sol.evaluate(&x) - scale * (1.0 - r2)).abs() < 1e-13);
            }
            assert!(sol.residual_l2 < 1e-12);
        }
    }

    #[test]
    fn configuration_errors() {
        let p = PoissonProblem::new(4, FunctionInput::new(|_| 1.0), 2);
        assert_eq!(solve_poisson(&p).unwrap_err(), Error::Dimension(4));
        let p = PoissonProblem::new(2, FunctionInput::new(|_| 1.0), 6).with_quad_degree(10);
        assert!(matches!(solve_poisson(&p), Err(Error::Config(_))));
        let p = PoissonProblem::new(2, FunctionInput::new(|x| 1.0 / (x[0] - x[0])), 2);
        assert!(matches!(solve_poisson(&p), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn empty_convergence_report() {
        let p = PoissonProblem::new(2, FunctionInput::new(|_| 4.0), 2);
        assert!(convergence_report(&p, &[]).unwrap().is_empty());
    }
}
