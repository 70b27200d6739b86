//! Expansions in the Sobolev basis.
//!
//! The coefficient `f̂_{j,ν}^n = ⟨f, Q_{j,ν}^n⟩_Δ` can be computed without any
//! derivative of `f`. Green's identity moves the Laplacian onto the basis
//! element and leaves one ball integral and one surface integral (raw surface
//! measure `dω`):
//!
//! ```text
//! j = 0:  f̂ = (d+2n)/d · (1/ω_{d−1}) ∮ f Y_ν^n dω
//! j ≥ 1:  f̂ = 4j(j+1)/(d² vol(B^d)) · [ (β+j)(β+j+1) ∫ f Q dx − ∮ f Y_ν^{n−2j} dω ]
//! ```
//!
//! with `β = n − 2j + (d−2)/2` and `Q` as in [`crate::ball_basis`]. These
//! constants reproduce `⟨Q, Q⟩_Δ` exactly and are cross-checked against the
//! direct definition in the test suite.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ball_basis::{
    classical_unchecked, indices_of_degree, indices_up_to, laplacian_lift, laplacian_lift_radial, sobolev_basis_eval,
    sobolev_norm_sq, BasisIndex,
};
use crate::error::{check_param, Error, Result};
use crate::harmonics::{harmonic_dim, solid_harmonic_eval, HarmonicIndex};
use crate::polynomials::{gegenbauer_kernel_factor, jacobi_eval_unchecked, JacobiParams};
use crate::quadrature::{ball_rule, geometry_constants, sphere_rule, weighted_ball_rule, QuadratureRule};

/// Shared scalar field on `R^d`.
pub type ScalarField = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Caller-supplied function: values, and optionally the lifted Laplacian
/// `Δ[(1−‖x‖²) f](x)`.
#[derive(Clone)]
pub struct FunctionInput {
    value: ScalarField,
    lifted_laplacian: Option<ScalarField>,
}

impl std::fmt::Debug for FunctionInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionInput")
            .field("lifted_laplacian", &self.lifted_laplacian.is_some())
            .finish()
    }
}

impl FunctionInput {
    pub fn new(value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self { value: Arc::new(value), lifted_laplacian: None }
    }

    pub fn with_lifted_laplacian(mut self, lift: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.lifted_laplacian = Some(Arc::new(lift));
        self
    }

    /// Builds the lifted Laplacian from `x·∇f` and `Δf` through
    /// `Δ[(1−‖x‖²)f] = (1−‖x‖²)Δf − 4 x·∇f − 2d f`.
    pub fn with_derivatives(
        value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        radial_derivative: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        laplacian: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let value: ScalarField = Arc::new(value);
        let f = value.clone();
        let lift = move |x: &[f64]| {
            let r2: f64 = x.iter().map(|c| c * c).sum();
            (1.0 - r2) * laplacian(x) - 4.0 * radial_derivative(x) - 2.0 * x.len() as f64 * f(x)
        };
        Self { value, lifted_laplacian: Some(Arc::new(lift)) }
    }

    /// The Sobolev basis element `Q_idx`, with its closed-form lift.
    pub fn basis(idx: BasisIndex, d: usize) -> Self {
        Self::new(move |x| sobolev_basis_eval(idx, x, d))
            .with_lifted_laplacian(move |x| laplacian_lift(idx, x, d))
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }

    pub fn has_lifted_laplacian(&self) -> bool {
        self.lifted_laplacian.is_some()
    }

    pub fn lifted_laplacian(&self, x: &[f64]) -> Option<f64> {
        self.lifted_laplacian.as_ref().map(|g| g(x))
    }
}

/// Quadrature degree used when the caller does not choose one.
pub fn default_quad_degree(max_degree: usize) -> usize {
    2 * max_degree + 8
}

/// Raw Sobolev coefficients `⟨f, Q_idx⟩_Δ` for all `n ≤ max_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub dim: usize,
    pub max_degree: usize,
    pub entries: BTreeMap<BasisIndex, f64>,
    /// Quadrature degree the values came from, when computed numerically.
    pub quad_degree: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    n: usize,
    j: usize,
    nu: usize,
    value: f64,
}

#[derive(Serialize, Deserialize)]
struct CoefficientFile {
    dim: usize,
    max_degree: usize,
    entries: Vec<EntryRecord>,
}

impl CoefficientVector {
    pub fn new(dim: usize, max_degree: usize) -> Self {
        Self { dim, max_degree, entries: BTreeMap::new(), quad_degree: None }
    }

    /// Inserts a coefficient after validating its index.
    pub fn insert(&mut self, idx: BasisIndex, value: f64) -> Result<()> {
        idx.validate(self.dim)?;
        if idx.n > self.max_degree {
            return Err(Error::Index(format!("degree {} exceeds max_degree {}", idx.n, self.max_degree)));
        }
        self.entries.insert(idx, value);
        Ok(())
    }

    pub fn get(&self, idx: &BasisIndex) -> f64 {
        self.entries.get(idx).copied().unwrap_or(0.0)
    }

    /// Coordinate against the orthonormal basis, `f̂ / √H`.
    pub fn normalized(&self, idx: &BasisIndex) -> f64 {
        self.get(idx) / sobolev_norm_sq(*idx, self.dim).sqrt()
    }

    /// `proj_n f(x) = Σ_{j,ν} H^{−1} f̂_{j,ν}^n Q_{j,ν}^n(x)`.
    pub fn project_n(&self, n: usize, x: &[f64]) -> Result<f64> {
        if n > self.max_degree {
            return Err(Error::Index(format!("degree {n} exceeds max_degree {}", self.max_degree)));
        }
        Ok(indices_of_degree(self.dim, n)
            .into_iter()
            .map(|idx| self.get(&idx) / sobolev_norm_sq(idx, self.dim) * sobolev_basis_eval(idx, x, self.dim))
            .sum())
    }

    /// Truncated series `Σ_{n ≤ max_degree} proj_n f(x)`.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.entries
            .iter()
            .map(|(&idx, &c)| c / sobolev_norm_sq(idx, self.dim) * sobolev_basis_eval(idx, x, self.dim))
            .sum()
    }

    /// `Σ H^{−1} f̂²`, the squared Sobolev norm of the truncated series.
    pub fn energy(&self) -> f64 {
        self.entries.iter().map(|(&idx, &c)| c * c / sobolev_norm_sq(idx, self.dim)).sum()
    }

    /// JSON `{dim, max_degree, entries: [{n, j, nu, value}]}` sorted by `(n, j, ν)`.
    pub fn to_json(&self) -> Result<String> {
        let file = CoefficientFile {
            dim: self.dim,
            max_degree: self.max_degree,
            entries: self
                .entries
                .iter()
                .map(|(idx, &value)| EntryRecord { n: idx.n, j: idx.j, nu: idx.nu, value })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CoefficientFile = serde_json::from_str(text)?;
        let mut out = Self::new(file.dim, file.max_degree);
        for e in file.entries {
            out.insert(BasisIndex { n: e.n, j: e.j, nu: e.nu }, e.value)?;
        }
        Ok(out)
    }

    /// CSV with header `n,j,nu,value`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n,j,nu,value")?;
        for (idx, value) in &self.entries {
            writeln!(out, "{},{},{},{}", idx.n, idx.j, idx.nu, value)?;
        }
        Ok(())
    }
}

fn lift_of(f: &FunctionInput, x: &[f64]) -> Result<f64> {
    f.lifted_laplacian(x).ok_or(Error::Capability("lifted Laplacian"))
}

/// `⟨f, g⟩_Δ` from its definition, by ball quadrature of the lifted Laplacians.
pub fn sobolev_inner_direct(f: &FunctionInput, g: &FunctionInput, d: usize, quad_degree: usize) -> Result<f64> {
    if !f.has_lifted_laplacian() || !g.has_lifted_laplacian() {
        return Err(Error::Capability("lifted Laplacian"));
    }
    let rule = ball_rule(d, quad_degree)?;
    sobolev_inner_with_rule(f, g, &rule)
}

pub(crate) fn sobolev_inner_with_rule(f: &FunctionInput, g: &FunctionInput, rule: &QuadratureRule) -> Result<f64> {
    let d = rule.dim();
    let (vol, _) = geometry_constants(d);
    let mut total = 0.0;
    for (x, w) in rule.iter() {
        total += w * lift_of(f, x)? * lift_of(g, x)?;
    }
    Ok(total / (4.0 * (d * d) as f64 * vol))
}

/// Function values cached at ball and sphere nodes, reused across indices.
pub(crate) struct SampledFunction {
    d: usize,
    ball: QuadratureRule,
    sphere: QuadratureRule,
    ball_values: Vec<f64>,
    sphere_values: Vec<f64>,
}

impl SampledFunction {
    pub(crate) fn new(f: &FunctionInput, d: usize, quad_degree: usize) -> Result<Self> {
        let ball = ball_rule(d, quad_degree)?;
        let sphere = sphere_rule(d, quad_degree)?;
        let sample = |rule: &QuadratureRule| -> Result<Vec<f64>> {
            rule.points()
                .map(|x| {
                    let v = f.value(x);
                    if v.is_finite() {
                        Ok(v)
                    } else {
                        Err(Error::NonFinite { point: x.to_vec(), value: v })
                    }
                })
                .collect()
        };
        let ball_values = sample(&ball)?;
        let sphere_values = sample(&sphere)?;
        Ok(Self { d, ball, sphere, ball_values, sphere_values })
    }

    /// `∫_{B^d} f g dx`.
    pub(crate) fn ball_moment(&self, g: impl Fn(&[f64]) -> f64) -> f64 {
        self.ball.iter().zip(&self.ball_values).map(|((x, w), fv)| w * fv * g(x)).sum()
    }

    /// `∮_{S^{d−1}} f g dω` (raw measure).
    pub(crate) fn sphere_moment(&self, g: impl Fn(&[f64]) -> f64) -> f64 {
        self.sphere.iter().zip(&self.sphere_values).map(|((x, w), fv)| w * fv * g(x)).sum()
    }

    fn coefficient(&self, idx: BasisIndex) -> f64 {
        let d = self.d;
        let (vol, omega) = geometry_constants(d);
        let harmonic = HarmonicIndex::new(d, idx.harmonic_degree(), idx.nu).expect("validated index");
        let surface = self.sphere_moment(|x| solid_harmonic_eval(harmonic, x));
        if idx.j == 0 {
            return (d + 2 * idx.n) as f64 / d as f64 * surface / omega;
        }
        let j = idx.j as f64;
        let beta = idx.beta(d);
        let ball = self.ball_moment(|x| sobolev_basis_eval(idx, x, d));
        4.0 * j * (j + 1.0) / ((d * d) as f64 * vol) * ((beta + j) * (beta + j + 1.0) * ball - surface)
    }
}

/// `⟨f, Q_idx⟩_Δ` from values of `f` only.
pub fn coeff_derivative_free(f: &FunctionInput, idx: BasisIndex, d: usize, quad_degree: usize) -> Result<f64> {
    idx.validate(d)?;
    Ok(SampledFunction::new(f, d, quad_degree)?.coefficient(idx))
}

/// All coefficients with `n ≤ max_degree` by the derivative-free formula.
///
/// Indices are processed in parallel; each coefficient is a serial sum, so
/// results do not depend on the thread count.
pub fn expand(f: &FunctionInput, d: usize, max_degree: usize, quad_degree: usize) -> Result<CoefficientVector> {
    let sampled = SampledFunction::new(f, d, quad_degree)?;
    let indices = indices_up_to(d, max_degree);
    let values: Vec<f64> = indices.par_iter().map(|&idx| sampled.coefficient(idx)).collect();
    let mut out = CoefficientVector::new(d, max_degree);
    out.quad_degree = Some(quad_degree);
    out.entries = indices.into_iter().zip(values).collect();
    Ok(out)
}

/// `proj_n f(x)` for an already expanded function.
pub fn project_n(coeffs: &CoefficientVector, n: usize, x: &[f64]) -> Result<f64> {
    coeffs.project_n(n, x)
}

/// Reproducing kernel of the degree-`n` Sobolev space,
/// `Σ_{j,ν} H_j^{−1} Q_{j,ν}^n(x) Q_{j,ν}^n(y)`.
pub fn kernel_sobolev(n: usize, x: &[f64], y: &[f64], d: usize) -> f64 {
    indices_of_degree(d, n)
        .into_iter()
        .map(|idx| sobolev_basis_eval(idx, x, d) * sobolev_basis_eval(idx, y, d) / sobolev_norm_sq(idx, d))
        .sum()
}

/// `‖x‖^m Z_m(x'·y')`, extended continuously to `x = 0`.
pub fn zonal_solid(d: usize, m: usize, x: &[f64], yp: &[f64]) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
    if r == 0.0 {
        return 0.0;
    }
    let t = (x.iter().zip(yp).map(|(a, b)| a * b).sum::<f64>() / r).clamp(-1.0, 1.0);
    r.powi(m as i32) * gegenbauer_kernel_factor(d, m, t)
}

/// Orthonormal-weight basis of `𝒱_n(W_μ)` with `A_α = c_μ ∫ P_α² W_μ` from quadrature.
struct ClassicalSpace {
    mu: f64,
    d: usize,
    indices: Vec<BasisIndex>,
    norms: Vec<f64>,
}

impl ClassicalSpace {
    fn new(mu: f64, n: usize, d: usize, quad_degree: usize) -> Result<Self> {
        check_param("mu", mu)?;
        let rule = weighted_ball_rule(d, quad_degree.max(2 * n), mu)?;
        let c_mu = 1.0 / rule.weights().iter().sum::<f64>();
        let indices = indices_of_degree(d, n);
        let norms = indices
            .iter()
            .map(|&idx| c_mu * rule.sum(|y| classical_unchecked(mu, idx, y, d).powi(2)))
            .collect();
        Ok(Self { mu, d, indices, norms })
    }

    fn kernel(&self, x: &[f64], y: &[f64]) -> f64 {
        self.indices
            .iter()
            .zip(&self.norms)
            .map(|(&idx, a)| classical_unchecked(self.mu, idx, x, self.d) * classical_unchecked(self.mu, idx, y, self.d) / a)
            .sum()
    }
}

/// Reproducing kernel `P_n(W_μ; x, y)` of the classical space for `(1−‖x‖²)^μ`,
/// normalized so that `c_μ ∫ W_μ = 1`.
pub fn classical_kernel(mu: f64, n: usize, x: &[f64], y: &[f64], d: usize, quad_degree: usize) -> Result<f64> {
    Ok(ClassicalSpace::new(mu, n, d, quad_degree)?.kernel(x, y))
}

/// `c_2 = 1 / ∫_{B^d} (1−‖x‖²)² dx = (d+2)(d+4) / (8 vol(B^d))`.
pub fn w2_normalization(d: usize) -> f64 {
    let (vol, _) = geometry_constants(d);
    ((d + 2) * (d + 4)) as f64 / (8.0 * vol)
}

/// Spherical-harmonic projection `Y_m f(x) = ‖x‖^m (1/ω_{d−1}) ∮ f(y') Z_m(x'·y') dω(y')`.
fn harmonic_projection(sampled: &SampledFunction, m: usize, x: &[f64]) -> f64 {
    let (_, omega) = geometry_constants(sampled.d);
    sampled.sphere_moment(|yp| zonal_solid(sampled.d, m, x, yp)) / omega
}

/// `proj_n f(x)` through the kernel form, without computing individual coefficients:
///
/// ```text
/// proj_n f(x) = Y_n f(x)
///   + c_2 (1−‖x‖²) ∫ f(y) P_{n−2}(W_2; x, y) (1−‖y‖²) dy
///   − (n + d/2)/2 · (1−‖x‖²) Σ_{j ≥ 1} [P_{j−1}^{(2,β_j)}(2‖x‖²−1) / P_{j−1}^{(2,β_j)}(1)] Y_{n−2j} f(x)
/// ```
///
/// where `Y_m f` uses the averaged surface measure and `c_2` is
/// [`w2_normalization`].
pub fn proj_corollary(f: &FunctionInput, n: usize, x: &[f64], d: usize, quad_degree: usize) -> Result<f64> {
    let sampled = SampledFunction::new(f, d, quad_degree)?;
    proj_corollary_sampled(&sampled, n, x, quad_degree)
}

pub(crate) fn proj_corollary_sampled(sampled: &SampledFunction, n: usize, x: &[f64], quad_degree: usize) -> Result<f64> {
    let d = sampled.d;
    let r2: f64 = x.iter().map(|c| c * c).sum();
    let mut total = harmonic_projection(sampled, n, x);
    if n < 2 {
        return Ok(total);
    }

    let space = ClassicalSpace::new(2.0, n - 2, d, quad_degree)?;
    let ball_term: f64 = space
        .indices
        .iter()
        .zip(&space.norms)
        .map(|(&idx, a)| {
            let moment = sampled.ball_moment(|y| {
                let y2: f64 = y.iter().map(|c| c * c).sum();
                (1.0 - y2) * classical_unchecked(2.0, idx, y, d)
            });
            classical_unchecked(2.0, idx, x, d) * moment / a
        })
        .sum();
    total += w2_normalization(d) * (1.0 - r2) * ball_term;

    let boundary: f64 = (1..=n / 2)
        .map(|j| {
            let params = JacobiParams { alpha: 2.0, beta: (n - 2 * j) as f64 + (d as f64 - 2.0) / 2.0 };
            let ratio = jacobi_eval_unchecked(params, j - 1, 2.0 * r2 - 1.0) / jacobi_eval_unchecked(params, j - 1, 1.0);
            ratio * harmonic_projection(sampled, n - 2 * j, x)
        })
        .sum();
    total -= (n as f64 + d as f64 / 2.0) / 2.0 * (1.0 - r2) * boundary;
    Ok(total)
}

/// Which formula supplies `Δ[(1−‖x‖²) Q]` when assembling Gram matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftRoute {
    /// [`laplacian_lift`]: `8j(j+1) P(W_0)` or `−2(d+2n) Y`.
    ClosedForm,
    /// [`crate::ball_basis::laplacian_lift_radial`]: `4 (𝒥_β p_j)(2r²−1) Y`.
    RadialOperator,
}

/// Gram matrix of the normalized basis `Q/√H` for all `n ≤ max_degree`,
/// with `⟨·,·⟩_Δ` computed by ball quadrature of the lifts.
pub fn normalized_gram(d: usize, max_degree: usize, quad_degree: usize, route: LiftRoute) -> Result<(Vec<BasisIndex>, DMatrix<f64>)> {
    let rule = ball_rule(d, quad_degree)?;
    let (vol, _) = geometry_constants(d);
    let indices = indices_up_to(d, max_degree);
    let scale = 1.0 / (4.0 * (d * d) as f64 * vol);
    let rows: Vec<Vec<f64>> = indices
        .par_iter()
        .map(|&idx| {
            let norm = (scale / sobolev_norm_sq(idx, d)).sqrt();
            rule.iter()
                .map(|(x, w)| {
                    let lift = match route {
                        LiftRoute::ClosedForm => laplacian_lift(idx, x, d),
                        LiftRoute::RadialOperator => laplacian_lift_radial(idx, x, d),
                    };
                    lift * w.sqrt() * norm
                })
                .collect()
        })
        .collect();
    let a = DMatrix::from_fn(indices.len(), rule.len(), |i, k| rows[i][k]);
    Ok((indices, &a * a.transpose()))
}

/// Largest `|⟨Q_idx, P_n^Δ(x, ·)⟩_Δ − Q_idx(x)|` over the indices of degree `n`,
/// and largest `|⟨Q_idx, P_n^Δ(x, ·)⟩_Δ|` over indices of other degrees `≤ n + 1`.
pub fn kernel_reproduction_error(n: usize, x: &[f64], d: usize, quad_degree: usize) -> Result<f64> {
    let rule = ball_rule(d, quad_degree.max(2 * n + 2))?;
    let own = indices_of_degree(d, n);
    let weights: Vec<(BasisIndex, f64)> = own
        .iter()
        .map(|&i| (i, sobolev_basis_eval(i, x, d) / sobolev_norm_sq(i, d)))
        .collect();
    let kernel_lift = FunctionInput::new(|_| 0.0).with_lifted_laplacian(move |y| {
        weights.iter().map(|&(i, c)| c * laplacian_lift(i, y, d)).sum()
    });
    let mut worst: f64 = 0.0;
    for idx in indices_up_to(d, n + 1) {
        let got = sobolev_inner_with_rule(&FunctionInput::basis(idx, d), &kernel_lift, &rule)?;
        let want = if idx.n == n { sobolev_basis_eval(idx, x, d) } else { 0.0 };
        worst = worst.max((got - want).abs());
    }
    Ok(worst)
}

/// Averaged spherical-harmonic coefficients `(1/ω_{d−1}) ∮ f Y_ν^m dω` for `m ≤ max_degree`,
/// keyed by `(m, ν)`.
pub fn harmonic_coefficients(
    f: impl Fn(&[f64]) -> f64,
    d: usize,
    max_degree: usize,
    quad_degree: usize,
) -> Result<BTreeMap<(usize, usize), f64>> {
    let rule = sphere_rule(d, quad_degree)?;
    let (_, omega) = geometry_constants(d);
    let values: Vec<f64> = rule.points().map(&f).collect();
    let mut out = BTreeMap::new();
    for m in 0..=max_degree {
        for nu in 1..=harmonic_dim(d, m) {
            let idx = HarmonicIndex::new(d, m, nu)?;
            let c: f64 = rule
                .iter()
                .zip(&values)
                .map(|((x, w), v)| w * v * solid_harmonic_eval(idx, x))
                .sum();
            out.insert((m, nu), c / omega);
        }
    }
    Ok(out)
}
