//! The radial operator maps the family p_j^β onto Jacobi polynomials
//! P_j^{(0,β)}, scaled by 2j(j+1), which makes the family orthogonal.

use sobolev_ball::{apply_j_beta, jacobi_coeffs, p_beta, radial_inner, JacobiParams};

fn main() {
    let beta = 1.5;
    for j in 1..=6 {
        let image = apply_j_beta(&p_beta(j, beta), beta);
        let target = jacobi_coeffs(JacobiParams::new(0.0, beta).unwrap(), j).unwrap().scale(2.0 * (j * (j + 1)) as f64);
        println!("j={j}: |J p_j - 2j(j+1) P_j| = {:.1e}", image.relative_distance(&target));
    }
    println!("Gram matrix of p_0..p_5 in (.,.)_beta:");
    for j in 0..=5 {
        let row: Vec<String> = (0..=5)
            .map(|k| format!("{:10.3e}", radial_inner(&p_beta(j, beta), &p_beta(k, beta), beta).unwrap()))
            .collect();
        println!("  {}", row.join(" "));
    }
}
