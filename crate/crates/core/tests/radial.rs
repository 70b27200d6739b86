mod common;

use proptest::prelude::*;
use sobolev_ball::radial::beta_for;
use sobolev_ball::{apply_j_beta, GaussJacobi, jacobi_coeffs, p_beta, radial_inner, JacobiParams, PolyCoeffs};

/// `sqrt(∫ (Σ|c_k||s|^k)² (1+s)^β ds)` for `𝒥_β p`: the scale of rounding
/// error when the image is evaluated from monomial coefficients.
fn evaluation_scale(p: &PolyCoeffs, beta: f64) -> f64 {
    let image = apply_j_beta(p, beta);
    let rule = GaussJacobi::new(image.coeffs().len() + 1, 0.0, beta).unwrap();
    let cond = |s: f64| image.coeffs().iter().rev().fold(0.0, |acc, c| acc * s.abs() + c.abs());
    rule.nodes().iter().zip(rule.weights()).map(|(&s, &w)| w * cond(s).powi(2)).sum::<f64>().sqrt()
}

#[test]
fn family_is_orthogonal() {
    let mut worst: f64 = 0.0;
    for k in 0..=20 {
        let beta = k as f64 * 0.5;
        let family: Vec<PolyCoeffs> = (0..=15).map(|j| p_beta(j, beta)).collect();
        let scales: Vec<f64> = family.iter().map(|p| evaluation_scale(p, beta)).collect();
        for (j, p) in family.iter().enumerate() {
            assert!(radial_inner(p, p, beta).unwrap() > 0.0);
            for (k2, q) in family.iter().enumerate().skip(j + 1) {
                let v = radial_inner(p, q, beta).unwrap() / (scales[j] * scales[k2]);
                assert!(v.abs() < 1e-12, "β={beta} j={j} j'={k2}: {v}");
                worst = worst.max(v.abs());
            }
        }
    }
    println!("worst scaled inner product {worst:.2e}");
}

#[test]
fn orthogonality_check_detects_wrong_weight() {
    // the family built for β+1 is not orthogonal in (·,·)_β
    let mut smallest = f64::INFINITY;
    for k in 0..=20 {
        let beta = k as f64 * 0.5;
        let family: Vec<PolyCoeffs> = (0..=15).map(|j| p_beta(j, beta + 1.0)).collect();
        let scales: Vec<f64> = family.iter().map(|p| evaluation_scale(p, beta)).collect();
        let worst = (1..family.len())
            .map(|j| (radial_inner(&family[j - 1], &family[j], beta).unwrap() / (scales[j - 1] * scales[j])).abs())
            .fold(0.0, f64::max);
        smallest = smallest.min(worst);
    }
    println!("smallest detected defect {smallest:.2e}");
    assert!(smallest > 1e-6);
}

#[test]
fn operator_is_linear() {
    let mut rng = common::rng(3);
    for _ in 0..50 {
        let f = common::random_poly(&mut rng, 7);
        let g = common::random_poly(&mut rng, 5);
        let beta = 2.5;
        let combo = &f.scale(1.5) + &g.scale(-0.25);
        let lhs = apply_j_beta(&combo, beta);
        let rhs = &apply_j_beta(&f, beta).scale(1.5) + &apply_j_beta(&g, beta).scale(-0.25);
        assert!(lhs.relative_distance(&rhs) < 1e-15);
    }
}

#[test]
fn image_of_family_is_jacobi_zero_beta() {
    for b in 0..=12 {
        let beta = b as f64;
        for j in 1..=15 {
            let lhs = apply_j_beta(&p_beta(j, beta), beta);
            let jf = j as f64;
            let rhs = jacobi_coeffs(JacobiParams::new(0.0, beta).unwrap(), j).unwrap().scale(2.0 * jf * (jf + 1.0));
            assert!(lhs.relative_distance(&rhs) < 1e-12, "β={beta} j={j}");
        }
    }
}

#[test]
fn beta_from_dimension() {
    assert_eq!(beta_for(2, 3), 3.0);
    assert_eq!(beta_for(3, 3), 3.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inner_product_is_positive(coeffs in prop::collection::vec(-1.0f64..1.0, 1..=11), beta in 0.0f64..10.0) {
        let f = PolyCoeffs::new(coeffs);
        prop_assume!(f.max_abs() > 1e-3);
        prop_assert!(radial_inner(&f, &f, beta).unwrap() > 0.0);
    }

    #[test]
    fn inner_product_is_symmetric(a in prop::collection::vec(-1.0f64..1.0, 1..8),
                                  b in prop::collection::vec(-1.0f64..1.0, 1..8),
                                  beta in 0.0f64..10.0) {
        let (f, g) = (PolyCoeffs::new(a), PolyCoeffs::new(b));
        let fg = radial_inner(&f, &g, beta).unwrap();
        let gf = radial_inner(&g, &f, beta).unwrap();
        prop_assert!((fg - gf).abs() <= 1e-13 * fg.abs().max(1.0));
    }
}
