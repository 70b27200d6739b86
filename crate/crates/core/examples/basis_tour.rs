//! Evaluates a few Sobolev basis functions on the disk and prints their norms.

use sobolev_ball::{indices_of_degree, sobolev_basis_eval, sobolev_basis_normalized, sobolev_norm_sq};

fn main() {
    let d = 2;
    let x = [0.3, -0.4];
    for n in 0..=4 {
        for idx in indices_of_degree(d, n) {
            println!(
                "n={} j={} nu={}  Q(x)={:+.6}  Q/||Q||={:+.6}  <Q,Q>={:.6}",
                idx.n,
                idx.j,
                idx.nu,
                sobolev_basis_eval(idx, &x, d),
                sobolev_basis_normalized(idx, &x, d),
                sobolev_norm_sq(idx, d)
            );
        }
    }
}
