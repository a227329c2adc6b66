use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec3::{self, Vec3};

/// `(E, p_x, p_y, p_z)` in eV, metric `(+, −, −, −)`.
pub type FourVector = [f64; 4];

pub fn minkowski(a: &FourVector, b: &FourVector) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

pub fn on_shell(mass: f64, p: &Vec3) -> FourVector {
    [(vec3::dot(p, p) + mass * mass).sqrt(), p[0], p[1], p[2]]
}

/// `ln ℵ(τ)` on its large-`τ` branch, `ℵ(τ) = 2(2π)^{3/2} τ^{3/2} e^τ`.
pub fn aleph_large_tau_ln(tau: f64) -> f64 {
    aleph_prefactor_ln(tau) + tau
}

/// `ln ℵ(τ) − τ`.
fn aleph_prefactor_ln(tau: f64) -> f64 {
    2f64.ln() + 1.5 * (2.0 * PI).ln() + 1.5 * tau.ln()
}

/// Scalar packet `φ(q) = N_σ e^{−(qζ)}` with `ζ = g₁ p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavePacketParams {
    mass: f64,
    sigma: f64,
    p: FourVector,
    g1: f64,
}

impl WavePacketParams {
    /// On-shell peak momentum from its 3-vector, `g₁ = 1/σ²`.
    pub fn new(mass: f64, sigma: f64, p: Vec3) -> Result<Self> {
        for (what, v) in [("mass", mass), ("sigma", sigma)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!("{what} must be positive, got {v}")));
            }
        }
        if p.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("momentum must be finite".into()));
        }
        Ok(Self { mass, sigma, p: on_shell(mass, &p), g1: 1.0 / (sigma * sigma) })
    }

    pub fn with_g1(mut self, g1: f64) -> Result<Self> {
        if !(g1 > 0.0) || !g1.is_finite() {
            return Err(Error::Domain(format!("g1 must be positive, got {g1}")));
        }
        self.g1 = g1;
        Ok(self)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn momentum(&self) -> FourVector {
        self.p
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn zeta(&self) -> FourVector {
        self.p.map(|c| c * self.g1)
    }

    /// `τ = m √(ζ²) = g₁ m²`.
    pub fn tau(&self) -> f64 {
        self.g1 * self.mass * self.mass
    }

    /// `ln N_σ = ln ℵ(τ) − 2 ln m`.
    pub fn ln_normalization(&self) -> f64 {
        aleph_large_tau_ln(self.tau()) - 2.0 * self.mass.ln()
    }

    /// `g₁(m² − (qp)) = g₁ (q−p)²/2`, evaluated without cancellation.
    fn shifted_exponent(&self, q: &FourVector) -> f64 {
        let p = &self.p;
        let d3 = [q[1] - p[1], q[2] - p[2], q[3] - p[3]];
        let q2 = q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
        let p2 = p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
        let de = (q2 - p2) / (q[0] + p[0]);
        0.5 * self.g1 * (de * de - vec3::dot(&d3, &d3))
    }
}

/// `ln φ(q)` for on-shell `q` built from its 3-vector.
pub fn packet_log_momentum(params: &WavePacketParams, q: &Vec3) -> Result<f64> {
    let q4 = on_shell(params.mass, q);
    let q_zeta = minkowski(&q4, &params.zeta());
    if !(q_zeta > 0.0) {
        return Err(Error::Domain(format!("(qζ) = {q_zeta} must be positive")));
    }
    // e^τ of ℵ cancels against g₁m² in (qζ) = g₁m² − g₁(q−p)²/2
    let ln_n = aleph_prefactor_ln(params.tau()) - 2.0 * params.mass.ln();
    Ok(ln_n + params.shifted_exponent(&q4))
}

/// `φ(q) = N_σ e^{−(qζ)}`; underflows to zero far from the peak.
pub fn packet_momentum(params: &WavePacketParams, q: &Vec3) -> Result<f64> {
    Ok(packet_log_momentum(params, q)?.exp())
}

/// Relative deviation of the exponent `−g₁[(qp) − m²]` from the Gaussian
/// `−g₁ |q − p|²/2`. Zero at the peak.
pub fn nonrel_gaussian_check(params: &WavePacketParams, q: &Vec3) -> f64 {
    let q4 = on_shell(params.mass, q);
    let exact = params.shifted_exponent(&q4);
    let p = params.p;
    let d3 = [q[0] - p[1], q[1] - p[2], q[2] - p[3]];
    let gauss = -0.5 * params.g1 * vec3::dot(&d3, &d3);
    if gauss == 0.0 {
        return exact.abs();
    }
    ((exact - gauss) / gauss).abs()
}
