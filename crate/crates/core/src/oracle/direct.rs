use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FourierPair;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, pairwise_sum};
use crate::vec3::{self, Vec3};

/// Resolution and acceptance tolerance for the direct quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Equal radial panels on `[0, r_cut]`.
    pub panels: usize,
    pub panel_order: usize,
    /// Gauss order in the distance `|R − x|`.
    pub distance_order: usize,
    /// Trapezoid points in the azimuth about `R̂`.
    pub azimuths: usize,
    pub target_tol: f64,
    /// Times all resolutions may double before giving up.
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            panels: 6,
            panel_order: 16,
            distance_order: 24,
            azimuths: 24,
            target_tol: 1e-10,
            max_refinements: 4,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(target_tol: f64) -> Self {
        Self { target_tol, ..Self::default() }
    }

    fn doubled(&self) -> Self {
        Self {
            panels: 2 * self.panels,
            distance_order: 2 * self.distance_order,
            azimuths: 2 * self.azimuths,
            ..*self
        }
    }
}

/// Oracle result with its doubling-based error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleValue {
    pub value: Complex64,
    /// Largest change seen when doubling any single resolution parameter.
    pub error_estimate: f64,
    /// Outer radius of the coordinate-space integration.
    pub r_cut: f64,
    /// Resolution at which the estimate met the tolerance.
    pub accepted: QuadratureSpec,
}

/// `𝒥(R) = ∫ d³x e^{ik|R−x|} φ(x) / (4π|R−x|)` by direct quadrature.
///
/// With `ρ = |x|`, `y = |R − x|` and azimuth `β` about `R̂` the volume element
/// is `ρ dρ y dy dβ / R`, which cancels the Coulomb singularity:
/// `𝒥 = (1/4πR) ∫ρ dρ ∫_{|R−ρ|}^{R+ρ} dy e^{iky} ∫ dβ φ(x)`.
pub fn eval_j_direct(pair: &FourierPair, k: f64, r_vec: &Vec3, spec: &QuadratureSpec) -> Result<OracleValue> {
    let r = vec3::norm(r_vec);
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("oracle needs |R| > 0, got {r}")));
    }
    if !(k > 0.0) || !(spec.target_tol > 0.0) {
        return Err(Error::Domain("oracle needs k > 0 and a positive tolerance".into()));
    }
    let r_cut = pair.cutoff_radius(1e-3 * spec.target_tol);
    let geom = Geometry::new(r_vec, r, k, r_cut);
    let mut level = *spec;
    for _ in 0..=spec.max_refinements {
        let base = geom.integrate(pair, &level);
        let variants = [
            QuadratureSpec { panels: 2 * level.panels, ..level },
            QuadratureSpec { distance_order: 2 * level.distance_order, ..level },
            QuadratureSpec { azimuths: 2 * level.azimuths, ..level },
        ];
        let error_estimate = variants
            .iter()
            .map(|v| (geom.integrate(pair, v) - base).norm())
            .fold(0.0, f64::max);
        if error_estimate <= spec.target_tol * base.norm() {
            return Ok(OracleValue { value: base, error_estimate, r_cut, accepted: level });
        }
        level = level.doubled();
    }
    Err(Error::NonConvergence(format!(
        "doubling test above tolerance {} after {} refinements at |R| = {r}",
        spec.target_tol, spec.max_refinements
    )))
}

struct Geometry {
    r: f64,
    k: f64,
    r_cut: f64,
    axis: Vec3,
    e1: Vec3,
    e2: Vec3,
}

impl Geometry {
    fn new(r_vec: &Vec3, r: f64, k: f64, r_cut: f64) -> Self {
        let axis = vec3::scale(r_vec, 1.0 / r);
        let (e1, e2) = vec3::orthonormal_frame(&axis);
        Self { r, k, r_cut, axis, e1, e2 }
    }

    fn radial_nodes(&self, spec: &QuadratureSpec) -> Vec<(f64, f64)> {
        let mut breaks: Vec<f64> = (0..=spec.panels)
            .map(|i| self.r_cut * i as f64 / spec.panels as f64)
            .collect();
        // the lower distance limit |R − ρ| has a kink at ρ = R
        if self.r < self.r_cut && !breaks.iter().any(|b| (b - self.r).abs() < 1e-12 * self.r_cut) {
            breaks.push(self.r);
            breaks.sort_by(f64::total_cmp);
        }
        let (x, w) = gauss_legendre(spec.panel_order);
        breaks
            .windows(2)
            .flat_map(|ab| {
                let (half, mid) = (0.5 * (ab[1] - ab[0]), 0.5 * (ab[1] + ab[0]));
                x.iter().zip(&w).map(move |(t, wt)| (mid + half * t, wt * half)).collect::<Vec<_>>()
            })
            .collect()
    }

    fn integrate(&self, pair: &FourierPair, spec: &QuadratureSpec) -> Complex64 {
        let (yx, yw) = gauss_legendre(spec.distance_order);
        let trig: Vec<(f64, f64)> = (0..spec.azimuths)
            .map(|b| (2.0 * PI * b as f64 / spec.azimuths as f64).sin_cos())
            .collect();
        let dbeta = 2.0 * PI / spec.azimuths as f64;
        let contributions: Vec<Complex64> = self
            .radial_nodes(spec)
            .par_iter()
            .map(|&(rho, w_rho)| {
                let lo = (self.r - rho).abs();
                let hi = self.r + rho;
                let (half, mid) = (0.5 * (hi - lo), 0.5 * (hi + lo));
                let mut shell = Vec::with_capacity(yx.len());
                for (t, wt) in yx.iter().zip(&yw) {
                    let y = mid + half * t;
                    let c = ((self.r * self.r + rho * rho - y * y) / (2.0 * self.r * rho)).clamp(-1.0, 1.0);
                    let s = (1.0 - c * c).sqrt();
                    let along = vec3::scale(&self.axis, rho * c);
                    let ring: Vec<Complex64> = trig
                        .iter()
                        .map(|&(sb, cb)| {
                            let perp = vec3::add(&vec3::scale(&self.e1, rho * s * cb), &vec3::scale(&self.e2, rho * s * sb));
                            pair.phi_x(&vec3::add(&along, &perp))
                        })
                        .collect();
                    shell.push(pairwise_sum(&ring) * dbeta * Complex64::from_polar(wt * half, self.k * y));
                }
                pairwise_sum(&shell) * (rho * w_rho)
            })
            .collect();
        pairwise_sum(&contributions) / (4.0 * PI * self.r)
    }
}

/// Part of `𝒥` from `|x| > r_min` for a radial profile `g(|x|)`:
/// `sin(kR)/(kR) ∫_{r_min}^∞ ρ g(ρ) e^{ikρ} dρ`, valid for `r_min ≥ R`.
pub fn radial_tail_j(g: impl Fn(f64) -> f64, k: f64, r: f64, r_min: f64, r_max: f64) -> Result<Complex64> {
    if r_min < r || r_max <= r_min || !(k > 0.0) {
        return Err(Error::Domain("radial tail needs R ≤ r_min < r_max and k > 0".into()));
    }
    let panels = 64;
    let (x, w) = gauss_legendre(20);
    let h = (r_max - r_min) / panels as f64;
    let parts: Vec<Complex64> = (0..panels)
        .flat_map(|p| {
            let a = r_min + p as f64 * h;
            x.iter()
                .zip(&w)
                .map(|(t, wt)| {
                    let rho = a + 0.5 * h * (t + 1.0);
                    Complex64::from_polar(rho * g(rho) * wt * 0.5 * h, k * rho)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(pairwise_sum(&parts) * ((k * r).sin() / (k * r)))
}
