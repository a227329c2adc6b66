//! Shared fixtures for the kernel benchmarks in `benches/`.

use farfield::oracle::FourierPair;
use farfield::{Direction, MultipoleRep, PhiModel};

/// Gaussian packet centred off the backward shell, the oracle's standard test pair.
pub fn gaussian_model() -> PhiModel {
    PhiModel::from_json(r#"{"type":"gaussian_packet","center":[-0.4794,0.0,-0.8776],"sigma":1.0}"#)
        .expect("valid fixture")
}

pub fn gaussian_pair() -> FourierPair {
    gaussian_model().fourier_pair().expect("gaussian models have a pair")
}

/// Dense rep of `exp(λ r̂·n)` about a tilted axis; every `(l, m)` is populated.
pub fn dense_rep(lambda: f64) -> MultipoleRep {
    PhiModel::from_json(&format!(r#"{{"type":"exp_xi","lambda":{lambda},"axis":[0.3,-0.5,0.8]}}"#))
        .and_then(|m| m.rep(1.0))
        .expect("valid fixture")
}

pub fn tilted_direction() -> Direction {
    Direction::new(0.7, 1.9).expect("valid angles")
}
