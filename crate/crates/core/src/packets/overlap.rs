use serde::{Deserialize, Serialize};

use super::angular::moment_chain_holds;
use super::wavepacket::FourVector;
use crate::error::{Error, Result};
use crate::model::PhiModel;
use crate::sphere::Direction;
use crate::vec3::{self, Mat3, Vec3};

/// Physical inputs of the one-packet overlap, all in eV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapInputs {
    #[serde(rename = "delta_m_eV")]
    pub delta_m: f64,
    #[serde(rename = "m_e_eV")]
    pub m_e: f64,
    #[serde(rename = "m_j_eV")]
    pub m_j: f64,
    #[serde(rename = "sigma_e_eV")]
    pub sigma_e: f64,
    /// Most probable 4-momentum of the incoming electron.
    #[serde(rename = "W")]
    pub w: FourVector,
    /// Total outgoing 4-momentum at the detection vertex.
    #[serde(rename = "K")]
    pub k: FourVector,
    /// Energy of the electron created at the source vertex. No default.
    #[serde(rename = "U0_eV")]
    pub u0: f64,
}

impl OverlapInputs {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))
    }
}

/// `Φ(−kn) ∝ exp(λ r̂·n + λ_B n·B·n)` with `B = ω⊗ω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapParams {
    pub lambda: f64,
    pub r_hat: Direction,
    pub lambda_b: f64,
    pub b: Mat3,
    /// On-shell antineutrino momentum `√(Q⁰² − m_j²)`.
    pub k: f64,
    pub q0: f64,
    pub q_d: Vec3,
    pub velocity: Vec3,
    pub g1: f64,
    /// `Q⁰_D − Q⁰_C`; zero when the two vertices conserve energy.
    pub energy_mismatch: f64,
}

impl OverlapParams {
    pub fn is_nonrelativistic(&self) -> bool {
        self.lambda_b == 0.0
    }

    /// `ln Φ(−kn)` up to a direction-independent constant.
    pub fn shell_exponent(&self, n: &Direction) -> f64 {
        self.lambda * self.r_hat.dot(n) + self.lambda_b * vec3::quadratic_form(&self.b, &n.to_vector())
    }

    /// The `e^{λξ}` factor alone.
    pub fn exp_xi_model(&self) -> PhiModel {
        PhiModel::ExpXi { lambda: self.lambda, axis: self.r_hat }
    }

    /// The `e^{λ_B ζ}` factor alone.
    pub fn exp_zeta_model(&self) -> PhiModel {
        PhiModel::ExpZeta { lambda: self.lambda_b, tensor: self.b }
    }

    /// `Tr B₀ = 0` for the traceless part `B − (Tr B/3) I`.
    pub fn traceless_b(&self) -> Mat3 {
        let t = vec3::trace(&self.b) / 3.0;
        let mut b0 = self.b;
        for (i, row) in b0.iter_mut().enumerate() {
            row[i] -= t;
        }
        b0
    }
}

fn positive(what: &str, v: f64) -> Result<f64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain(format!("{what} must be positive, got {v}")));
    }
    Ok(v)
}

/// Sharply peaked overlap of a fixed-nucleus source with a packet electron
/// at the detector. The linear vector is `Q_D − V(Q_D·V)`, which reduces to
/// `Q_D` for `V → 0`.
pub fn build_overlap(inputs: &OverlapInputs) -> Result<OverlapParams> {
    let m_e = positive("m_e", inputs.m_e)?;
    let sigma = positive("sigma_e", inputs.sigma_e)?;
    if !(inputs.m_j >= 0.0) {
        return Err(Error::Domain(format!("m_j must be non-negative, got {}", inputs.m_j)));
    }
    if sigma >= m_e {
        return Err(Error::Domain(format!("sigma_e = {sigma} must be far below m_e = {m_e}")));
    }
    for v in inputs.w.iter().chain(&inputs.k).chain([&inputs.delta_m, &inputs.u0]) {
        if !v.is_finite() {
            return Err(Error::Domain("non-finite kinematic input".into()));
        }
    }
    let q0 = inputs.delta_m - inputs.u0;
    if q0 <= inputs.m_j {
        return Err(Error::Kinematics(format!(
            "Q⁰ = ΔM − U⁰ = {q0} eV does not exceed m_j = {} eV",
            inputs.m_j
        )));
    }
    let k = (q0 * q0 - inputs.m_j * inputs.m_j).sqrt();
    let w0 = inputs.w[0];
    let w3 = [inputs.w[1], inputs.w[2], inputs.w[3]];
    if !(w0 > 0.0) || vec3::norm(&w3) >= w0 {
        return Err(Error::Kinematics(format!("electron velocity |W|/W⁰ must be below 1 (W⁰ = {w0})")));
    }
    let velocity = vec3::scale(&w3, 1.0 / w0);
    let q_d = [inputs.k[1] - w3[0], inputs.k[2] - w3[1], inputs.k[3] - w3[2]];
    let g1 = 1.0 / (sigma * sigma);

    let linear = vec3::sub(&q_d, &vec3::scale(&velocity, vec3::dot(&q_d, &velocity)));
    let linear_norm = vec3::norm(&linear);
    let (lambda, r_hat) = if linear_norm > 0.0 {
        (g1 * k * linear_norm, Direction::from_vector(linear)?)
    } else {
        (0.0, Direction::z_axis())
    };
    let speed = vec3::norm(&velocity);
    let (lambda_b, b) = if speed > 0.0 {
        let omega = vec3::scale(&velocity, 1.0 / speed);
        (g1 * k * k * speed * speed / 2.0, vec3::outer(&omega, &omega))
    } else {
        (0.0, [[0.0; 3]; 3])
    };

    let params = OverlapParams {
        lambda,
        r_hat,
        lambda_b,
        b,
        k,
        q0,
        q_d,
        velocity,
        g1,
        energy_mismatch: inputs.k[0] - w0 - q0,
    };
    let probes = [params.r_hat, Direction::new(1.1, 0.3)?, Direction::new(2.3, 4.0)?];
    if !probes.iter().all(|n| moment_chain_holds(&params.b, n)) {
        return Err(Error::Inconsistency("moment inequalities violated by B".into()));
    }
    Ok(params)
}
