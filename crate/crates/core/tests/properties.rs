use std::f64::consts::PI;

use farfield::expansion::{build_coeff_table, coeff_closed, coeff_recurrence, eval_series_squared, modulus_series};
use farfield::ndim::{green_nd_closed, green_nd_multipole, multipole_degree_for, DimParams};
use farfield::packets::{moment_chain_holds, negative_upsilon_region, upsilon1_xi};
use farfield::sphere::{forward_transform, AngularGrid};
use farfield::{Direction, MultipoleRep};
use num_complex::Complex64;
use proptest::prelude::*;

fn direction() -> impl Strategy<Value = Direction> {
    (-1.0f64..1.0, 0.0..2.0 * PI).prop_map(|(c, phi)| Direction::new(c.acos(), phi).unwrap())
}

fn band_limited(l_max: usize) -> impl Strategy<Value = MultipoleRep> {
    let len = (l_max + 1) * (l_max + 1);
    (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len), 0.2f64..4.0).prop_map(move |(c, k)| {
        let coeffs = c.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        MultipoleRep::new(l_max, k, coeffs).unwrap()
    })
}

/// Real on the sphere: `B_l^{−m} = (−1)^m conj(B_l^m)`.
fn real_band_limited(l_max: usize) -> impl Strategy<Value = MultipoleRep> {
    band_limited(l_max).prop_map(|rep| {
        let mut out = rep.clone();
        for l in 0..=rep.l_max() {
            out.set(l, 0, Complex64::new(rep.coeff(l, 0).re, 0.0)).unwrap();
            for m in 1..=l as i64 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                out.set(l, -m, rep.coeff(l, m).conj() * sign).unwrap();
            }
        }
        out
    })
}

fn rel_diff(a: &MultipoleRep, b: &MultipoleRep) -> f64 {
    a.add_scaled(b, Complex64::new(-1.0, 0.0)).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn psd() -> impl Strategy<Value = [[f64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-1.0f64..1.0)).prop_map(|a| {
        std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|m| a[i][m] * a[j][m]).sum()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closed_form_equals_recurrence(rep in band_limited(12)) {
        let a = coeff_closed(&rep, 12);
        let b = coeff_recurrence(&rep, 12);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(rel_diff(x, y) < 1e-12);
        }
    }

    #[test]
    fn series_terminates_above_degree(rep in band_limited(5), n in direction()) {
        let t = build_coeff_table(&rep, &n, 9, 1).unwrap();
        let phi = rep.norm();
        for s in 6..=9 {
            prop_assert!(t.phi_c()[s].norm() < 1e-12 * phi);
        }
    }

    #[test]
    fn coefficients_ignore_common_factor(
        rep in real_band_limited(6),
        n in direction(),
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
    ) {
        let c = Complex64::new(re, im);
        prop_assume!(c.norm() > 0.1);
        let a = build_coeff_table(&rep, &n, 6, 3).unwrap();
        let b = build_coeff_table(&rep.scaled(c), &n, 6, 3).unwrap();
        prop_assume!(a.phi_value().norm() > 1e-3 * rep.norm());
        for s in 1..=6 {
            let (x, y) = (a.c(s).unwrap(), b.c(s).unwrap());
            prop_assert!((x - y).norm() <= 1e-10 * x.norm().max(1.0));
        }
        // Υ_n is defined for real Φ only, so rescale by a real factor
        let real = build_coeff_table(&rep.scaled(Complex64::new(re.abs() + 0.5, 0.0)), &n, 6, 3).unwrap();
        for m in 1..=3 {
            let (x, y) = (a.upsilon(m).unwrap(), real.upsilon(m).unwrap());
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0));
        }
    }

    #[test]
    fn squared_series_matches_modulus_series(rep in real_band_limited(4), n in direction(), r in 2.0f64..50.0) {
        let t = build_coeff_table(&rep, &n, 8, 4).unwrap();
        prop_assume!(t.phi_value().norm() > 1e-3 * rep.norm());
        let a = eval_series_squared(&t, r, 4).unwrap();
        let b = modulus_series(&t, r, 8).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()));
    }

    #[test]
    fn laplacian_commutes_with_reflection(rep in band_limited(8)) {
        let a = rep.apply_angular_laplacian().reflect();
        let b = rep.reflect().apply_angular_laplacian();
        prop_assert_eq!(a.coeffs(), b.coeffs());
        let twice = rep.reflect().reflect();
        prop_assert_eq!(twice.coeffs(), rep.coeffs());
    }

    #[test]
    fn laplacian_is_self_adjoint(f in band_limited(6), g in band_limited(6)) {
        let a = f.inner(&g.apply_angular_laplacian());
        let b = f.apply_angular_laplacian().inner(&g);
        prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0));
    }

    #[test]
    fn reflection_preserves_upsilon(rep in real_band_limited(5), n in direction()) {
        let a = build_coeff_table(&rep, &n, 4, 2).unwrap();
        let b = build_coeff_table(&rep.reflect(), &n.antipode(), 4, 2).unwrap();
        prop_assume!(a.phi_value().norm() > 1e-3 * rep.norm());
        for m in 1..=2 {
            let (x, y) = (a.upsilon(m).unwrap(), b.upsilon(m).unwrap());
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0));
        }
    }

    #[test]
    fn sign_of_upsilon_matches_region(lambda in prop_oneof![-50.0f64..-0.05, 0.05f64..50.0], theta in 0.0f64..PI) {
        let region = negative_upsilon_region(lambda).unwrap();
        let u = upsilon1_xi(lambda, theta.cos()).unwrap();
        // allow for the bisection tolerance at the endpoints
        let near_edge = region.intervals.iter().any(|[lo, hi]| (theta - lo).abs() < 1e-9 || (theta - hi).abs() < 1e-9);
        prop_assume!(!near_edge);
        prop_assert_eq!(u < 0.0, region.contains(theta), "Υ₁ = {} at Θ = {}", u, theta);
    }

    #[test]
    fn moment_chain_for_positive_semidefinite(b in psd(), n in direction()) {
        prop_assert!(moment_chain_holds(&b, &n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gegenbauer_series_matches_closed_form(
        n in 2u32..=6,
        k in 0.2f64..4.0,
        r in 0.05f64..2.0,
        ratio in 2.0f64..8.0,
        c in -1.0f64..1.0,
    ) {
        let dim = DimParams::new(n).unwrap();
        let big_r = ratio * r;
        let sep = (big_r * big_r + r * r - 2.0 * big_r * r * c).sqrt();
        let closed = green_nd_closed(dim, k, sep).unwrap();
        let series = green_nd_multipole(dim, k, big_r, r, c, multipole_degree_for(k, big_r, r, 1e-12)).unwrap();
        prop_assert!((series - closed).norm() <= 1e-8 * closed.norm());
    }

    #[test]
    fn grid_transform_inverts_evaluation(rep in band_limited(6)) {
        let grid = AngularGrid::for_degree(6);
        let back = forward_transform(|n| rep.evaluate(n), 6, rep.k(), &grid).unwrap();
        prop_assert!(rel_diff(&back, &rep) < 1e-12);
    }
}
