mod common;

use common::{rng, sphere_point};
use nalgebra::DVector;
use sobolev_ball::poisson::{normal_equations, sample_grid, sup_error, write_grid_csv};
use sobolev_ball::{
    convergence_report, poisson_problem, solve_poisson, FunctionInput, MultiPoly, PoissonProblem,
};

#[test]
fn manufactured_solution_in_the_disk() {
    let p = poisson_problem("manufactured_exp", 2, 20).unwrap();
    let sol = solve_poisson(&p).unwrap();
    let exact = |x: &[f64]| (1.0 - x[0] * x[0] - x[1] * x[1]) * x[0].exp();
    assert!(sup_error(&sol, &exact) < 1e-8);
    assert_eq!(sample_grid(2).len(), 2500);
}

#[test]
fn manufactured_solution_in_the_ball() {
    let p = poisson_problem("manufactured_exp", 3, 14).unwrap();
    let sol = solve_poisson(&p).unwrap();
    assert!(sup_error(&sol, p.exact.as_ref().unwrap().as_ref()) < 1e-8);
}

#[test]
fn constant_rhs_is_exact_at_degree_two() {
    for d in [2usize, 3] {
        let p = poisson_problem("constant_rhs_4", d, 2).unwrap();
        let sol = solve_poisson(&p).unwrap();
        assert!(sup_error(&sol, p.exact.as_ref().unwrap().as_ref()) < 1e-13);
        let nonzero: Vec<_> = sol.coeffs.entries.iter().filter(|(_, c)| c.abs() > 1e-13).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!((nonzero[0].0.n, nonzero[0].0.j), (0, 0));
    }
    let rows = convergence_report(&poisson_problem("constant_rhs_4", 2, 2).unwrap(), &[2]).unwrap();
    assert!(rows[0].sup_error.unwrap() < 1e-13);
}

#[test]
fn normal_equations_are_diagonal() {
    for d in [2usize, 3] {
        let p = poisson_problem("gaussian_rhs", d, 6).unwrap();
        let (_, m, _) = normal_equations(&p).unwrap();
        for i in 0..m.nrows() {
            for k in 0..m.ncols() {
                if i != k {
                    let scale = (m[(i, i)] * m[(k, k)]).sqrt();
                    assert!(m[(i, k)].abs() < 1e-10 * scale, "d={d} ({i},{k})");
                }
            }
        }
    }
}

#[test]
fn diagonal_solve_matches_dense_least_squares() {
    let mut r = rng(41);
    for d in [2usize, 3] {
        let g = MultiPoly::random(d, 4, &mut r);
        let rhs = FunctionInput::new(move |x| g.eval(x));
        let p = PoissonProblem::new(d, rhs, 6);
        let sol = solve_poisson(&p).unwrap();
        let (indices, m, b) = normal_equations(&p).unwrap();
        let dense: DVector<f64> = m.lu().solve(&b).unwrap();
        for (k, idx) in indices.iter().enumerate() {
            let c = sol.trial_coefficient(idx);
            assert!((c - dense[k]).abs() < 1e-10 * dense.amax().max(1.0), "d={d} {idx:?}: {c} vs {}", dense[k]);
        }
    }
}

#[test]
fn solution_vanishes_on_the_boundary() {
    let mut r = rng(42);
    for d in [2usize, 3] {
        let sol = solve_poisson(&poisson_problem("gaussian_rhs", d, 8).unwrap()).unwrap();
        for _ in 0..100 {
            let xp = sphere_point(&mut r, d);
            assert!(sol.evaluate(&xp).abs() < 1e-14);
        }
    }
}

#[test]
fn residuals_are_monotone_and_errors_decay_spectrally() {
    let p = poisson_problem("manufactured_exp", 2, 20).unwrap();
    let degrees: Vec<usize> = (0..=20).step_by(2).collect();
    let rows = convergence_report(&p, &degrees).unwrap();
    assert_eq!(rows.len(), degrees.len());
    for w in rows.windows(2) {
        assert!(w[1].residual_l2 <= w[0].residual_l2 + 1e-12);
    }
    // ratio test while above round-off: successive error ratios shrink
    let errs: Vec<f64> = rows.iter().map(|r| r.sup_error.unwrap()).take_while(|&e| e > 1e-12).collect();
    assert!(errs.len() >= 5);
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[1] / w[0]).collect();
    for w in ratios.windows(2).skip(1) {
        assert!(w[1] < w[0], "{ratios:?}");
    }

    let gaussian = poisson_problem("gaussian_rhs", 3, 8).unwrap();
    let rows = convergence_report(&gaussian, &[0, 2, 4, 6, 8]).unwrap();
    assert!(rows.iter().all(|r| r.sup_error.is_none()));
    for w in rows.windows(2) {
        assert!(w[1].residual_l2 <= w[0].residual_l2 + 1e-12);
    }
}

#[test]
fn zero_degree_leaves_a_residual() {
    let sol = solve_poisson(&poisson_problem("gaussian_rhs", 2, 0).unwrap()).unwrap();
    assert!(sol.residual_l2 > 1e-3);
    assert_eq!(sol.coeffs.entries.len(), 1);
}

#[test]
fn grid_csv_layout() {
    let sol = solve_poisson(&poisson_problem("constant_rhs_4", 3, 2).unwrap()).unwrap();
    let mut buf = Vec::new();
    write_grid_csv(&sol, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,theta,phi,u"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 20 * 20 * 40);
    for row in &rows {
        let want = 2.0 / 3.0 * (1.0 - row[0] * row[0]);
        assert!((row[3] - want).abs() < 1e-13);
    }
}

#[test]
fn unknown_problem() {
    assert!(poisson_problem("nonlinear", 2, 4).is_none());
    assert!(poisson_problem("zero_rhs", 4, 4).is_none());
}
