//! Real spherical harmonics on S^1 and S^2 and their addition formula.

use sobolev_ball::harmonics::solid_harmonics;
use sobolev_ball::{addition_kernel, harmonic_dim, SpherePoint};

fn main() {
    let pairs = [
        (SpherePoint::from_angle(0.3), SpherePoint::from_angle(2.1)),
        (
            SpherePoint::normalize(&[1.0, 2.0, -0.5]).unwrap(),
            SpherePoint::normalize(&[-0.3, 0.4, 1.0]).unwrap(),
        ),
    ];
    for (a, b) in &pairs {
        let d = a.dim();
        for n in 0..=5 {
            let ya = solid_harmonics(d, n, a.coords()).unwrap();
            let yb = solid_harmonics(d, n, b.coords()).unwrap();
            let sum: f64 = ya.iter().zip(&yb).map(|(u, v)| u * v).sum();
            let kernel = addition_kernel(d, n, a, b);
            println!("d={d} n={n} dim={:2}  sum={sum:+.12}  kernel={kernel:+.12}", harmonic_dim(d, n));
        }
    }
}
