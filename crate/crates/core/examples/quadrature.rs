//! Gauss–Jacobi nodes and a ball rule, checked on a monomial moment and
//! written to CSV.

use sobolev_ball::{ball_rule, GaussJacobi};

fn main() {
    let gj = GaussJacobi::new(5, 0.0, 2.0).unwrap();
    for (s, w) in gj.nodes().iter().zip(gj.weights()) {
        println!("node {s:+.15}  weight {w:.15}");
    }

    // ∫_{B^2} x² y² dx = π/24
    let rule = ball_rule(2, 8).unwrap();
    let approx = rule.sum(|x| x[0] * x[0] * x[1] * x[1]);
    println!("{} points, integral {approx:.15}, exact {:.15}", rule.len(), std::f64::consts::PI / 24.0);

    let mut buf = Vec::new();
    rule.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    for line in text.lines().take(3) {
        println!("{line}");
    }
}
