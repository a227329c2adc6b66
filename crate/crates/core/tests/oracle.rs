use std::f64::consts::PI;

use farfield::expansion::{build_coeff_table, eval_series, reflected_table};
use farfield::oracle::{eval_j_direct, FourierPair, GaussianTerm, PairFactor, QuadratureSpec};
use farfield::specfun::SphericalHarmonicIndex;
use farfield::vec3;
use farfield::{Direction, PhiModel};
use num_complex::Complex64;

fn gaussian(center: [f64; 3], sigma: f64) -> FourierPair {
    FourierPair::new(vec![GaussianTerm { amplitude: Complex64::new(1.0, 0.0), center, sigma, factor: PairFactor::Plain }])
}

#[test]
fn gaussian_pair_matches_fourth_order_series() {
    let (k, sigma) = (1.0, 0.5);
    let pair = gaussian([0.0, 0.0, k], sigma);
    let rep = pair.shell_rep(k).unwrap();
    let table = build_coeff_table(&rep, &Direction::z_axis(), 4, 1).unwrap();
    let direct = eval_j_direct(&pair, k, &[0.0, 0.0, 50.0], &QuadratureSpec::default()).unwrap();
    let series = eval_series(&table, 50.0, 4).unwrap().value;
    assert!((direct.value - series).norm() < 1e-5 * direct.value.norm());
}

#[test]
fn leading_order_approaches_shell_value() {
    let k = 1.0;
    let pair = gaussian([0.3, -0.2, -0.9], 1.0);
    let n = Direction::new(0.4, 2.0).unwrap();
    let want = pair.shell_value(k, &n);
    let mut previous = f64::INFINITY;
    for r in [20.0, 80.0, 320.0] {
        let j = eval_j_direct(&pair, k, &vec3::scale(&n.to_vector(), r), &QuadratureSpec::default()).unwrap();
        let lead = j.value * Complex64::from_polar(4.0 * PI * r, -k * r);
        let err = (lead - want).norm();
        assert!(err < previous);
        previous = err;
    }
    assert!(previous < 1e-2 * want.norm());
}

#[test]
fn reflected_table_predicts_opposite_direction() {
    let k = 1.0;
    let model = PhiModel::from_json(r#"{"type":"gaussian_packet","center":[0.4,0.2,0.8],"sigma":1.0}"#).unwrap();
    let pair = model.fourier_pair().unwrap();
    let rep = model.rep(k).unwrap();
    let n = Direction::new(0.3, 0.5).unwrap();
    let r = 60.0;
    let table = reflected_table(&rep, &n, 4, 1).unwrap();
    let series = eval_series(&table, r, 4).unwrap().value;
    let minus_r = vec3::scale(&n.to_vector(), -r);
    let direct = eval_j_direct(&pair, k, &minus_r, &QuadratureSpec::default()).unwrap();
    assert!((direct.value - series).norm() < 1e-6 * direct.value.norm());
}

#[test]
fn registry_pairs_verify() {
    let idx = SphericalHarmonicIndex::new(2, 1).unwrap();
    let pairs = [
        gaussian([0.0, 0.0, 1.0], 0.5),
        FourierPair::new(vec![GaussianTerm {
            amplitude: Complex64::new(0.5, -1.0),
            center: [0.2, 0.1, -0.4],
            sigma: 0.8,
            factor: PairFactor::Harmonic(idx),
        }]),
        FourierPair::new(vec![GaussianTerm {
            amplitude: Complex64::new(1.0, 0.0),
            center: [0.0; 3],
            sigma: 1.2,
            factor: PairFactor::ShiftedSquare,
        }]),
    ];
    for pair in &pairs {
        assert!(pair.verify().unwrap() < 1e-8);
    }
}

#[test]
fn oracle_is_deterministic_across_pools() {
    let pair = gaussian([0.1, 0.0, -0.9], 1.0);
    let spec = QuadratureSpec::default();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| eval_j_direct(&pair, 1.0, &[3.0, 4.0, 12.0], &spec).unwrap().value)
    };
    assert_eq!(run(1), run(4));
}
