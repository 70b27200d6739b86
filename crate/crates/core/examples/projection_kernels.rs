//! The degree-n projection three ways: from coefficients, from the
//! kernel form with ball and boundary terms, and through the reproducing
//! kernel of the Sobolev basis.

use sobolev_ball::expansion::kernel_reproduction_error;
use sobolev_ball::{expand, proj_corollary, project_n, registry_function};

fn main() {
    let d = 3;
    let f = registry_function("gaussian", d).unwrap();
    let coeffs = expand(&f, d, 6, 30).unwrap();
    let x = [0.2, -0.3, 0.4];
    for n in 0..=6 {
        let a = project_n(&coeffs, n, &x).unwrap();
        let b = proj_corollary(&f, n, &x, d, 30).unwrap();
        println!("n={n}: coefficients {a:+.14}  kernel form {b:+.14}");
    }

    for n in 0..=4 {
        let err = kernel_reproduction_error(n, &x, d, 2 * n + 8).unwrap();
        println!("n={n}: kernel reproduction error over degrees <= n+1 = {err:.2e}");
    }
}
