//! Sobolev orthogonal polynomials on the unit ball `B^d`.
//!
//! The inner product
//!
//! ```text
//! ⟨f, g⟩_Δ = (4d² vol(B^d))^{−1} ∫_{B^d} Δ[(1−‖x‖²) f] Δ[(1−‖x‖²) g] dx
//! ```
//!
//! admits an explicit orthogonal basis `Q_{j,ν}^n` built from Jacobi
//! polynomials in `2‖x‖²−1` and spherical harmonics. This crate evaluates that
//! basis, verifies it numerically, expands functions in it from point values
//! alone, and uses it to solve `−Δu = g` with zero boundary values by a
//! least-squares method whose normal equations are diagonal.
//!
//! ```
//! use sobolev_ball::{expand, registry_function, BasisIndex};
//!
//! let f = registry_function("one_minus_r2", 2).unwrap();
//! let coeffs = expand(&f, 2, 4, 16).unwrap();
//! let c = coeffs.get(&BasisIndex { n: 2, j: 1, nu: 1 });
//! assert!((c - 8.0 / 3.0).abs() < 1e-12);
//! ```

pub mod app;
pub mod ball_basis;
pub mod error;
pub mod expansion;
pub mod functions;
pub mod harmonics;
pub mod poisson;
pub mod polynomials;
pub mod quadrature;
pub mod radial;

pub use ball_basis::{
    classical_basis_eval, indices_of_degree, indices_up_to, laplacian_lift, laplacian_lift_radial, sobolev_basis_eval,
    sobolev_basis_normalized, sobolev_norm_sq, BasisIndex,
};
pub use error::{Error, Result};
pub use expansion::{
    classical_kernel, coeff_derivative_free, default_quad_degree, expand, harmonic_coefficients, kernel_sobolev,
    normalized_gram, proj_corollary, project_n, sobolev_inner_direct, CoefficientVector, FunctionInput, LiftRoute,
};
pub use functions::{registry_function, poisson_problem, MultiPoly, FUNCTION_NAMES, POISSON_PROBLEMS};
pub use harmonics::{addition_kernel, harmonic_dim, sph_harmonic_eval, solid_harmonic_eval, HarmonicIndex, SpherePoint};
pub use poisson::{convergence_report, solve_poisson, ConvergenceRow, PoissonProblem, PoissonSolution};
pub use polynomials::{jacobi_coeffs, jacobi_eval, jacobi_norm0, JacobiParams, PolyCoeffs};
pub use quadrature::{ball_rule, integrate, sphere_rule, weighted_ball_rule, GaussJacobi, QuadratureRule};
pub use radial::{apply_j_beta, p_beta, radial_inner, RadialIndex};
