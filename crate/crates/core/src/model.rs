//! Models for the momentum profile `Φ(q)` and their restriction to the
//! on-shell sphere `q = −kn`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{FourierPair, GaussianTerm, PairFactor};
use crate::specfun::{modified_spherical_bessel_i_sequence, spherical_harmonics_all};
use crate::sphere::{
    escalate, forward_transform, AngularGrid, CoeffJson, Direction, MultipoleRep, DEFAULT_L_MAX,
};
use crate::vec3::{self, Mat3, Vec3};

/// `i_l(λ)` overflows past this; larger peaking strengths are rejected.
const MAX_EXP_LAMBDA: f64 = 600.0;

/// JSON model specification, tagged by `"type"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    /// Band-limited `Σ B_l^m Y_l^m(n)`.
    Multipole { coeffs: Vec<CoeffJson> },
    /// `exp(λ r̂·n)`.
    ExpXi {
        lambda: f64,
        #[serde(default = "default_axis")]
        axis: Vec3,
    },
    /// `exp(λ n·B·n)` with `B` symmetric positive semidefinite.
    ExpZeta { lambda: f64, tensor: Mat3 },
    /// `Φ(q) = exp(−|q − Q|² / 2σ²)`.
    GaussianPacket { center: Vec3, sigma: f64 },
    /// `Φ(q) = ψ (q²)^p exp(−q²/2σ²)`, or the constant `ψ (q²)^p` without `sigma`.
    SphericallySymmetric {
        psi: f64,
        #[serde(default)]
        sigma: Option<f64>,
        #[serde(default)]
        q2_power: u32,
    },
}

fn default_axis() -> Vec3 {
    [0.0, 0.0, 1.0]
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))
    }
}

/// A validated momentum profile.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiModel {
    Multipole(MultipoleRep),
    ExpXi { lambda: f64, axis: Direction },
    ExpZeta { lambda: f64, tensor: Mat3 },
    GaussianPacket { center: Vec3, sigma: f64 },
    SphericallySymmetric { psi: f64, sigma: Option<f64>, q2_power: u32 },
}

impl TryFrom<ModelSpec> for PhiModel {
    type Error = Error;

    fn try_from(spec: ModelSpec) -> Result<Self> {
        let finite = |v: f64, what: &str| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::InvalidModel(format!("{what} must be finite")))
            }
        };
        match spec {
            ModelSpec::Multipole { coeffs } => {
                let l_max = coeffs.iter().map(|c| c.l).max().unwrap_or(0);
                let mut rep = MultipoleRep::zeros(l_max, 1.0);
                for c in coeffs {
                    finite(c.re, "coefficient")?;
                    finite(c.im, "coefficient")?;
                    rep.set(c.l, c.m, Complex64::new(c.re, c.im))
                        .map_err(|e| Error::InvalidModel(e.to_string()))?;
                }
                Ok(PhiModel::Multipole(rep))
            }
            ModelSpec::ExpXi { lambda, axis } => {
                check_lambda(finite(lambda, "lambda")?)?;
                let axis = Direction::from_vector(axis)
                    .map_err(|_| Error::InvalidModel("axis must be a non-zero vector".into()))?;
                Ok(PhiModel::ExpXi { lambda, axis })
            }
            ModelSpec::ExpZeta { lambda, tensor } => {
                finite(lambda, "lambda")?;
                for v in tensor.iter().flatten() {
                    finite(*v, "tensor entry")?;
                }
                if !vec3::is_symmetric(&tensor, 1e-12) {
                    return Err(Error::InvalidModel("tensor must be symmetric".into()));
                }
                if !vec3::is_positive_semidefinite(&tensor, 1e-12) {
                    return Err(Error::InvalidModel("tensor must be positive semidefinite".into()));
                }
                Ok(PhiModel::ExpZeta { lambda, tensor })
            }
            ModelSpec::GaussianPacket { center, sigma } => {
                for v in center {
                    finite(v, "center")?;
                }
                if !(sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::InvalidModel("sigma must be positive".into()));
                }
                Ok(PhiModel::GaussianPacket { center, sigma })
            }
            ModelSpec::SphericallySymmetric { psi, sigma, q2_power } => {
                finite(psi, "psi")?;
                if let Some(s) = sigma {
                    if !(s > 0.0) || !s.is_finite() {
                        return Err(Error::InvalidModel("sigma must be positive".into()));
                    }
                }
                if q2_power > 1 {
                    return Err(Error::InvalidModel("q2_power must be 0 or 1".into()));
                }
                Ok(PhiModel::SphericallySymmetric { psi, sigma, q2_power })
            }
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.abs() > MAX_EXP_LAMBDA {
        return Err(Error::InvalidModel(format!(
            "|lambda| = {} exceeds supported {MAX_EXP_LAMBDA}",
            lambda.abs()
        )));
    }
    Ok(())
}

impl PhiModel {
    pub fn from_json(text: &str) -> Result<Self> {
        ModelSpec::from_json(text)?.try_into()
    }

    /// `Φ(−kn)` from the closed form.
    pub fn shell_value(&self, k: f64, n: &Direction) -> Complex64 {
        let nv = n.to_vector();
        match self {
            PhiModel::Multipole(rep) => rep.evaluate(n),
            PhiModel::ExpXi { lambda, axis } => Complex64::new((lambda * axis.dot(n)).exp(), 0.0),
            PhiModel::ExpZeta { lambda, tensor } => {
                Complex64::new((lambda * vec3::quadratic_form(tensor, &nv)).exp(), 0.0)
            }
            PhiModel::GaussianPacket { center, sigma } => {
                let d = vec3::add(&vec3::scale(&nv, k), center);
                Complex64::new((-vec3::dot(&d, &d) / (2.0 * sigma * sigma)).exp(), 0.0)
            }
            PhiModel::SphericallySymmetric { .. } => Complex64::new(self.radial_value(k), 0.0),
        }
    }

    /// `Ψ(k²)` for the spherically symmetric model.
    fn radial_value(&self, k: f64) -> f64 {
        match self {
            PhiModel::SphericallySymmetric { psi, sigma, q2_power } => {
                let env = sigma.map_or(1.0, |s| (-k * k / (2.0 * s * s)).exp());
                psi * (k * k).powi(*q2_power as i32) * env
            }
            _ => f64::NAN,
        }
    }

    pub fn is_spherically_symmetric(&self) -> bool {
        matches!(self, PhiModel::SphericallySymmetric { .. })
    }

    /// Multipole representation of `n ↦ Φ(−kn)`, escalating `l_max` for
    /// non-band-limited models.
    pub fn rep(&self, k: f64) -> Result<MultipoleRep> {
        self.rep_from(k, DEFAULT_L_MAX)
    }

    pub fn rep_from(&self, k: f64, l_start: usize) -> Result<MultipoleRep> {
        match self {
            PhiModel::Multipole(rep) => MultipoleRep::new(rep.l_max(), k, rep.coeffs().to_vec()),
            PhiModel::SphericallySymmetric { .. } => {
                Ok(MultipoleRep::constant(Complex64::new(self.radial_value(k), 0.0), k))
            }
            PhiModel::ExpXi { lambda, axis } => {
                check_lambda(*lambda)?;
                escalate(l_start, |l_max| exp_xi_rep(*lambda, 1.0, axis, l_max, k))
            }
            PhiModel::GaussianPacket { center, sigma } => {
                let qn = vec3::norm(center);
                if qn == 0.0 {
                    let c = (-k * k / (2.0 * sigma * sigma)).exp();
                    return Ok(MultipoleRep::constant(Complex64::new(c, 0.0), k));
                }
                // Φ(−kn) = e^{−(k−|Q|)²/2σ²} · e^{−λ} e^{λ r̂·n}, λ = k|Q|/σ², r̂ = −Q̂
                let lambda = k * qn / (sigma * sigma);
                check_lambda(lambda)?;
                let axis = Direction::from_vector(vec3::scale(center, -1.0))?;
                let amp = (-(k - qn).powi(2) / (2.0 * sigma * sigma) - lambda).exp();
                escalate(l_start, |l_max| exp_xi_rep(lambda, amp, &axis, l_max, k))
            }
            PhiModel::ExpZeta { lambda, .. } => {
                check_lambda(*lambda)?;
                escalate(l_start, |l_max| {
                let grid = AngularGrid::for_degree(2 * l_max);
                    forward_transform(|n| self.shell_value(k, n), l_max, k, &grid)
                })
            }
        }
    }

    /// Closed-form coordinate/momentum pair for the quadrature oracle, where
    /// one exists.
    pub fn fourier_pair(&self) -> Option<FourierPair> {
        match *self {
            PhiModel::GaussianPacket { center, sigma } => Some(FourierPair::new(vec![GaussianTerm {
                amplitude: Complex64::new(1.0, 0.0),
                center,
                sigma,
                factor: PairFactor::Plain,
            }])),
            PhiModel::SphericallySymmetric { psi, sigma: Some(sigma), q2_power } => {
                let factor = if q2_power == 1 { PairFactor::ShiftedSquare } else { PairFactor::Plain };
                Some(FourierPair::new(vec![GaussianTerm {
                    amplitude: Complex64::new(psi, 0.0),
                    center: [0.0; 3],
                    sigma,
                    factor,
                }]))
            }
            _ => None,
        }
    }
}

/// `amp · e^{λ r̂·n} = amp · 4π Σ i_l(λ) Y_l^m(n) conj(Y_l^m(r̂))`.
fn exp_xi_rep(lambda: f64, amp: f64, axis: &Direction, l_max: usize, k: f64) -> Result<MultipoleRep> {
    let il = modified_spherical_bessel_i_sequence(l_max, lambda)?;
    let y = spherical_harmonics_all(l_max, axis);
    let mut coeffs = Vec::with_capacity(y.len());
    for l in 0..=l_max {
        let w = 4.0 * PI * amp * il[l];
        for m in -(l as i64)..=(l as i64) {
            coeffs.push(y[((l * l + l) as i64 + m) as usize].conj() * w);
        }
    }
    MultipoleRep::new(l_max, k, coeffs)
}
