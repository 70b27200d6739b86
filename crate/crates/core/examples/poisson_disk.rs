//! Solves −Δu = g on the disk for u = (1−r²)e^x and prints the convergence
//! of the least-squares solver with the truncation degree.

use sobolev_ball::poisson::sup_error;
use sobolev_ball::{convergence_report, poisson_problem, solve_poisson};

fn main() {
    let problem = poisson_problem("manufactured_exp", 2, 20).unwrap();
    let degrees: Vec<usize> = (0..=20).step_by(2).collect();
    for row in convergence_report(&problem, &degrees).unwrap() {
        println!("N={:2}  sup error {:.3e}  residual {:.3e}", row.degree, row.sup_error.unwrap(), row.residual_l2);
    }
    let sol = solve_poisson(&problem).unwrap();
    let exact = problem.exact.as_ref().unwrap();
    println!("N=20 sup error {:.2e}, u(0,0) = {:.15}", sup_error(&sol, exact.as_ref()), sol.evaluate(&[0.0, 0.0]));
}
