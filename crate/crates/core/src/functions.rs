//! Built-in test functions with analytic lifted Laplacians, and a sparse
//! multivariate polynomial type for exact derivatives.

use rand::Rng;

use crate::ball_basis::BasisIndex;
use crate::expansion::FunctionInput;
use crate::harmonics::{solid_harmonic_eval, HarmonicIndex};
use crate::poisson::PoissonProblem;

/// Sparse polynomial in `d` variables: a list of `(exponents, coefficient)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    dim: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl MultiPoly {
    pub fn new(dim: usize, terms: Vec<(Vec<u32>, f64)>) -> Self {
        assert!(terms.iter().all(|(e, _)| e.len() == dim), "exponent length must equal dim");
        Self { dim, terms }
    }

    /// Every monomial of total degree `≤ degree` with a coefficient uniform in `[−1, 1]`.
    pub fn random<R: Rng>(dim: usize, degree: usize, rng: &mut R) -> Self {
        let terms = monomial_exponents(dim, degree)
            .into_iter()
            .map(|e| (e, rng.random_range(-1.0..=1.0)))
            .collect();
        Self { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// `x·∇p`, which scales each monomial by its total degree.
    pub fn radial_derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c * e.iter().sum::<u32>() as f64))
            .collect();
        Self { dim: self.dim, terms }
    }

    pub fn laplacian(&self) -> Self {
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            for i in 0..self.dim {
                if e[i] >= 2 {
                    let mut lowered = e.clone();
                    lowered[i] -= 2;
                    terms.push((lowered, c * (e[i] * (e[i] - 1)) as f64));
                }
            }
        }
        Self { dim: self.dim, terms }
    }

    pub fn to_function_input(&self) -> FunctionInput {
        let (p, rp, lp) = (self.clone(), self.radial_derivative(), self.laplacian());
        FunctionInput::with_derivatives(move |x| p.eval(x), move |x| rp.eval(x), move |x| lp.eval(x))
    }
}

/// Exponent vectors of all monomials in `dim` variables of total degree `≤ degree`.
pub fn monomial_exponents(dim: usize, degree: usize) -> Vec<Vec<u32>> {
    fn rec(dim: usize, budget: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == dim {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=budget {
            prefix.push(k);
            rec(dim, budget - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, degree as u32, &mut Vec::new(), &mut out);
    out
}

fn dot(a: &[f64], x: &[f64]) -> f64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

/// Names accepted by [`registry_function`].
pub const FUNCTION_NAMES: &[&str] = &[
    "one",
    "one_minus_r2",
    "harmonic_31",
    "exp_x1",
    "gaussian",
    "sin_plane",
    "exp_plane",
    "rational",
    "cubic",
    "quartic",
];

/// Built-in function by name for dimension `d ∈ {2, 3}`. Every entry carries
/// its analytic lifted Laplacian.
pub fn registry_function(name: &str, d: usize) -> Option<FunctionInput> {
    if d != 2 && d != 3 {
        return None;
    }
    let plane_a: Vec<f64> = [1.0, 2.0, -0.5][..d].to_vec();
    let plane_b: Vec<f64> = [0.3, -0.5, 0.4][..d].to_vec();
    let center: Vec<f64> = [0.2, -0.1, 0.1][..d].to_vec();
    let f = match name {
        "one" => MultiPoly::new(d, vec![(vec![0; d], 1.0)]).to_function_input(),
        "one_minus_r2" => {
            let mut terms = vec![(vec![0; d], 1.0)];
            for i in 0..d {
                let mut e = vec![0; d];
                e[i] = 2;
                terms.push((e, -1.0));
            }
            MultiPoly::new(d, terms).to_function_input()
        }
        "harmonic_31" => {
            let idx = HarmonicIndex::new(d, 3, 1).ok()?;
            FunctionInput::with_derivatives(
                move |x| solid_harmonic_eval(idx, x),
                move |x| 3.0 * solid_harmonic_eval(idx, x),
                |_| 0.0,
            )
        }
        "exp_x1" => FunctionInput::with_derivatives(|x| x[0].exp(), |x| x[0] * x[0].exp(), |x| x[0].exp()),
        "gaussian" => {
            let (c1, c2, c3) = (center.clone(), center.clone(), center);
            let dimf = d as f64;
            let sq = |x: &[f64], c: &[f64]| x.iter().zip(c).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
            FunctionInput::with_derivatives(
                move |x| (-sq(x, &c1)).exp(),
                move |x| {
                    let g = (-sq(x, &c2)).exp();
                    -2.0 * x.iter().zip(&c2).map(|(a, b)| a * (a - b)).sum::<f64>() * g
                },
                move |x| {
                    let q = sq(x, &c3);
                    (4.0 * q - 2.0 * dimf) * (-q).exp()
                },
            )
        }
        "sin_plane" => {
            let (a1, a2, a3) = (plane_a.clone(), plane_a.clone(), plane_a);
            let norm2 = dot(&a3, &a3);
            FunctionInput::with_derivatives(
                move |x| dot(&a1, x).sin(),
                move |x| dot(&a2, x) * dot(&a2, x).cos(),
                move |x| -norm2 * dot(&a3, x).sin(),
            )
        }
        "exp_plane" => {
            let (b1, b2, b3) = (plane_b.clone(), plane_b.clone(), plane_b);
            let norm2 = dot(&b3, &b3);
            FunctionInput::with_derivatives(
                move |x| dot(&b1, x).exp(),
                move |x| dot(&b2, x) * dot(&b2, x).exp(),
                move |x| norm2 * dot(&b3, x).exp(),
            )
        }
        "rational" => FunctionInput::with_derivatives(
            |x| 1.0 / (2.0 + x[0]),
            |x| -x[0] / (2.0 + x[0]).powi(2),
            |x| 2.0 / (2.0 + x[0]).powi(3),
        ),
        "cubic" => {
            let mut terms = vec![
                (vec![3, 0], 1.0),
                (vec![1, 1], -2.0),
                (vec![0, 2], 0.5),
                (vec![0, 0], 1.0),
            ];
            if d == 3 {
                terms = terms.into_iter().map(|(mut e, c)| {
                    e.push(0);
                    (e, c)
                }).collect();
                terms.push((vec![0, 1, 2], 0.75));
            }
            MultiPoly::new(d, terms).to_function_input()
        }
        "quartic" => {
            let mut terms = vec![(vec![2, 2], 1.0), (vec![0, 4], -1.0), (vec![1, 0], 0.3), (vec![3, 1], 0.2)];
            if d == 3 {
                terms = terms.into_iter().map(|(mut e, c)| {
                    e.push(0);
                    (e, c)
                }).collect();
                terms.push((vec![1, 0, 3], -0.6));
                terms.push((vec![0, 0, 4], 0.25));
            }
            MultiPoly::new(d, terms).to_function_input()
        }
        _ => return None,
    };
    Some(f)
}

/// Index of the basis element matching `harmonic_31` (`Y_1^3` as a `j = 0` element).
pub fn harmonic_31_index() -> BasisIndex {
    BasisIndex { n: 3, j: 0, nu: 1 }
}

/// Names accepted by [`poisson_problem`].
pub const POISSON_PROBLEMS: &[&str] = &["manufactured_exp", "constant_rhs_4", "zero_rhs", "gaussian_rhs"];

/// Built-in Poisson problem `−Δu = g` truncated at `degree`.
///
/// * `manufactured_exp`: `u = (1−‖x‖²) e^{x₁}` with `g = −Δu` in closed form.
/// * `constant_rhs_4`: `g = 4`, `u = (2/d)(1−‖x‖²)`.
/// * `zero_rhs`: `g = 0`, `u = 0`.
/// * `gaussian_rhs`: `g = exp(−‖x−c‖²)`, no registered solution.
pub fn poisson_problem(name: &str, d: usize, degree: usize) -> Option<PoissonProblem> {
    if d != 2 && d != 3 {
        return None;
    }
    let problem = match name {
        "manufactured_exp" => {
            let lifted = registry_function("exp_x1", d)?;
            PoissonProblem::new(d, FunctionInput::new(move |x| -lifted.lifted_laplacian(x).unwrap_or(f64::NAN)), degree)
                .with_exact(|x| (1.0 - x.iter().map(|c| c * c).sum::<f64>()) * x[0].exp())
        }
        "constant_rhs_4" => {
            let scale = 2.0 / d as f64;
            PoissonProblem::new(d, FunctionInput::new(|_| 4.0), degree)
                .with_exact(move |x| scale * (1.0 - x.iter().map(|c| c * c).sum::<f64>()))
        }
        "zero_rhs" => PoissonProblem::new(d, FunctionInput::new(|_| 0.0), degree).with_exact(|_| 0.0),
        "gaussian_rhs" => {
            let center: Vec<f64> = [0.2, -0.1, 0.1][..d].to_vec();
            PoissonProblem::new(
                d,
                FunctionInput::new(move |x| (-x.iter().zip(&center).map(|(a, b)| (a - b).powi(2)).sum::<f64>()).exp()),
                degree,
            )
        }
        _ => return None,
    };
    Some(problem)
}
