mod common;

use common::{fd_laplacian, fd_sphere_laplacian, norm_sq, rng, sphere_point};
use sobolev_ball::harmonics::solid_harmonics;
use sobolev_ball::polynomials::chebyshev_eval;
use sobolev_ball::{
    addition_kernel, harmonic_dim, solid_harmonic_eval, sph_harmonic_eval, sphere_rule, HarmonicIndex, SpherePoint,
};

fn all_up_to(d: usize, max: usize) -> Vec<HarmonicIndex> {
    (0..=max)
        .flat_map(|n| (1..=harmonic_dim(d, n)).map(move |nu| HarmonicIndex::new(d, n, nu).unwrap()))
        .collect()
}

#[test]
fn averaged_gram_is_identity() {
    for d in [2usize, 3] {
        let rule = sphere_rule(d, 16).unwrap();
        let omega: f64 = rule.weights().iter().sum();
        assert!((omega - common::sphere_area(d)).abs() < 1e-13);
        let basis = all_up_to(d, 8);
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i..] {
                let g = rule.sum(|x| solid_harmonic_eval(*a, x) * solid_harmonic_eval(*b, x)) / omega;
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10, "d={d} {a:?} {b:?}: {g}");
            }
        }
    }
}

#[test]
fn planar_gram_by_brute_force_angles() {
    // independent oracle: 4000-point midpoint rule in θ
    let m = 4000;
    let basis = all_up_to(2, 8);
    for a in &basis {
        for b in &basis {
            let g: f64 = (0..m)
                .map(|k| {
                    let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / m as f64;
                    let p = [th.cos(), th.sin()];
                    solid_harmonic_eval(*a, &p) * solid_harmonic_eval(*b, &p)
                })
                .sum::<f64>()
                / m as f64;
            assert!((g - if a == b { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
    }
}

#[test]
fn solid_harmonics_are_harmonic() {
    let mut r = rng(11);
    for d in [2usize, 3] {
        for idx in all_up_to(d, 8) {
            for _ in 0..50 {
                let x = common::ball_point(&mut r, d, 0.9);
                let lap = fd_laplacian(|y| solid_harmonic_eval(idx, y), &x, 1e-4);
                assert!(lap.abs() < 1e-5, "{idx:?} at {x:?}: {lap}");
            }
        }
    }
}

#[test]
fn sphere_eigenvalues() {
    let mut r = rng(12);
    for d in [2usize, 3] {
        for idx in all_up_to(d, 6) {
            let n = idx.degree() as f64;
            for _ in 0..10 {
                let xp = sphere_point(&mut r, d);
                let got = fd_sphere_laplacian(|u| solid_harmonic_eval(idx, u), &xp, 1e-4);
                let want = -n * (n + d as f64 - 2.0) * solid_harmonic_eval(idx, &xp);
                assert!((got - want).abs() < 1e-5 * want.abs().max(1.0), "{idx:?}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn addition_formula() {
    let mut r = rng(13);
    for d in [2usize, 3] {
        for n in 0..=8 {
            for _ in 0..100 {
                let (a, b) = (sphere_point(&mut r, d), sphere_point(&mut r, d));
                let (xp, yp) = (SpherePoint::new(a.clone()).unwrap(), SpherePoint::new(b.clone()).unwrap());
                let sum: f64 = solid_harmonics(d, n, &a)
                    .unwrap()
                    .iter()
                    .zip(solid_harmonics(d, n, &b).unwrap())
                    .map(|(u, v)| u * v)
                    .sum();
                assert!((sum - addition_kernel(d, n, &xp, &yp)).abs() < 1e-12, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn kernel_examples() {
    let p = SpherePoint::new(vec![0.0, 0.6, 0.8]).unwrap();
    assert!((addition_kernel(3, 1, &p, &p) - 3.0).abs() < 1e-14);
    let (th, ph) = (0.4, 1.9);
    let (a, b) = (SpherePoint::from_angle(th), SpherePoint::from_angle(ph));
    assert!((addition_kernel(2, 4, &a, &b) - 2.0 * (4.0 * (th - ph)).cos()).abs() < 1e-13);
    assert!((addition_kernel(2, 4, &a, &b) - 2.0 * chebyshev_eval(4, (th - ph).cos())).abs() < 1e-13);
    for d in [2, 3] {
        let q = SpherePoint::normalize(&vec![1.0; d]).unwrap();
        assert_eq!(addition_kernel(d, 0, &q, &q), 1.0);
        // coincident points give the space dimension
        for n in 0..6 {
            assert!((addition_kernel(d, n, &q, &q) - harmonic_dim(d, n) as f64).abs() < 1e-12);
        }
    }
}

#[test]
fn evaluation_examples_and_homogeneity() {
    let s3 = 3f64.sqrt();
    let x = [0.36, 0.48, 0.8];
    let vals: Vec<f64> = (1..=3).map(|nu| solid_harmonic_eval(HarmonicIndex::new(3, 1, nu).unwrap(), &x)).collect();
    let mut sorted = vals.clone();
    sorted.sort_by(f64::total_cmp);
    assert!((sorted[0] - s3 * 0.36).abs() < 1e-15 && (sorted[2] - s3 * 0.8).abs() < 1e-15);
    for nu in 1..=5 {
        let idx = HarmonicIndex::new(3, 2, nu).unwrap();
        let doubled: Vec<f64> = x.iter().map(|c| 2.0 * c).collect();
        assert!((solid_harmonic_eval(idx, &doubled) - 4.0 * solid_harmonic_eval(idx, &x)).abs() < 1e-14);
        assert_eq!(solid_harmonic_eval(idx, &[0.0; 3]), 0.0);
    }
    assert!(SpherePoint::new(vec![0.5, 0.5]).is_err());
    assert!(sph_harmonic_eval(HarmonicIndex::new(2, 1, 1).unwrap(), &SpherePoint::new(vec![0.0, 0.0, 1.0]).unwrap()).is_err());
    assert!(norm_sq(SpherePoint::normalize(&[3.0, 4.0]).unwrap().coords()) - 1.0 < 1e-15);
}
