use serde::Serialize;

use super::angular::upsilon1_xi;
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_on;

/// `ħc` in eV·m (CODATA).
pub const HBAR_C_EV_M: f64 = 1.973_269_804e-7;

/// Ratio below which `σ_e ≪ m_e` is taken to hold.
const NARROW_RATIO: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuppressionPoint {
    pub r_m: f64,
    /// `1 − ϱ₀²/R²`, the factor multiplying the inverse-square law.
    pub suppression: f64,
    /// `(1/R²)(1 − ϱ₀²/R²)` in m⁻².
    pub rate: f64,
    /// The two-term expansion is meaningful only for `R > ϱ₀`.
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deficit {
    pub rho0_m: f64,
    pub lambda: f64,
    pub upsilon_bar: f64,
    pub curve: Vec<SuppressionPoint>,
}

/// `ϱ₀ = √(−Ῡ₁)/(2k)` converted to metres; needs `Ῡ₁ < 0`.
pub fn rho0_from_upsilon(upsilon_bar: f64, k_ev: f64) -> Result<f64> {
    if !(k_ev > 0.0) {
        return Err(Error::Domain(format!("k must be positive, got {k_ev}")));
    }
    if !(upsilon_bar < 0.0) {
        return Err(Error::Domain(format!("no suppression for Ῡ₁ = {upsilon_bar} ≥ 0")));
    }
    Ok((-upsilon_bar).sqrt() / (2.0 * k_ev) * HBAR_C_EV_M)
}

/// `m_j ≤ σ_e ≪ m_e`.
pub fn in_validity_window(sigma_ev: f64, m_j_ev: f64, m_e_ev: f64) -> bool {
    m_j_ev <= sigma_ev && sigma_ev <= NARROW_RATIO * m_e_ev
}

/// Deficit length with `Ῡ₁` taken at `r̂ = n`, `λ = k²/σ²`, so `ϱ₀ = k/σ²`,
/// and the suppression on `r_grid_m`.
pub fn deficit_rho0(k_ev: f64, sigma_ev: f64, r_grid_m: &[f64]) -> Result<Deficit> {
    for (what, v) in [("k", k_ev), ("sigma", sigma_ev)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::Domain(format!("{what} must be positive, got {v}")));
        }
    }
    let lambda = k_ev * k_ev / (sigma_ev * sigma_ev);
    let upsilon_bar = upsilon1_xi(lambda, 1.0)?;
    let rho0_m = rho0_from_upsilon(upsilon_bar, k_ev)?;
    let curve = r_grid_m
        .iter()
        .map(|&r| {
            let suppression = 1.0 - (rho0_m / r).powi(2);
            SuppressionPoint { r_m: r, suppression, rate: suppression / (r * r), valid: r > rho0_m }
        })
        .collect();
    Ok(Deficit { rho0_m, lambda, upsilon_bar, curve })
}

/// Alternative to the `ξ = 1` point estimate: `Υ₁` averaged over `r̂` with
/// weight `∝ e^{(ξ−1)/w²}`, a Gaussian of angular width `w` near the pole.
pub fn gaussian_averaged_upsilon1(lambda: f64, width: f64) -> Result<f64> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::Domain(format!("width must be positive, got {width}")));
    }
    let kappa = 1.0 / (width * width);
    // t = κ(1 − ξ) has density e^{−t} on [0, 2κ]
    let t_max = (2.0 * kappa).min(80.0);
    let (t, w) = gauss_legendre_on(96, 0.0, t_max);
    let mut num = 0.0;
    let mut den = 0.0;
    for (ti, wi) in t.iter().zip(&w) {
        let weight = wi * (-ti).exp();
        num += weight * upsilon1_xi(lambda, 1.0 - ti / kappa)?;
        den += weight;
    }
    Ok(num / den)
}
