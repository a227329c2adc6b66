use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{eval_j_direct, FourierPair, QuadratureSpec};
use crate::error::{Error, Result};
use crate::expansion::{eval_series, CoeffTable};
use crate::vec3::{self, Vec3};

/// Differences closer than this multiple of the oracle's error estimate count as noise.
const NOISE_MARGIN: f64 = 4.0;

fn outgoing_green(k: f64, x: &Vec3) -> Complex64 {
    let r = vec3::norm(x);
    Complex64::from_polar(1.0 / (4.0 * PI * r), k * r)
}

/// Seven-point `(−∇² − k²) e^{ikR}/(4πR)` at `r_vec`.
pub fn greens_residual(k: f64, r_vec: &Vec3, h: f64) -> Result<Complex64> {
    if !(vec3::norm(r_vec) > 10.0 * h) || !(h > 0.0) {
        return Err(Error::Domain("finite-difference point must satisfy R > 10h".into()));
    }
    let centre = outgoing_green(k, r_vec);
    let mut lap = -6.0 * centre;
    for axis in 0..3 {
        for sgn in [-1.0, 1.0] {
            let mut p = *r_vec;
            p[axis] += sgn * h;
            lap += outgoing_green(k, &p);
        }
    }
    Ok(-lap / (h * h) - k * k * centre)
}

/// Radial form `−R^{−1} ∂²_R (R G) − k² G` of the same residual.
pub fn greens_residual_radial(k: f64, r: f64, h: f64) -> Result<Complex64> {
    if !(r > 10.0 * h) || !(h > 0.0) {
        return Err(Error::Domain("finite-difference point must satisfy R > 10h".into()));
    }
    let u = |t: f64| outgoing_green(k, &[0.0, 0.0, t]) * t;
    let d2 = (u(r + h) - 2.0 * u(r) + u(r - h)) / (h * h);
    Ok(-d2 / r - k * k * outgoing_green(k, &[0.0, 0.0, r]))
}

/// Least-squares fit of `ln|𝒥_direct − 𝒥_series|` against `ln R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(R, |difference|, oracle error estimate)`.
    pub points: Vec<(f64, f64, f64)>,
}

/// Convergence exponent of the series truncated after `terms` orders.
pub fn convergence_slope(
    pair: &FourierPair,
    table: &CoeffTable,
    terms: usize,
    r_list: &[f64],
    spec: &QuadratureSpec,
) -> Result<SlopeFit> {
    if r_list.len() < 2 {
        return Err(Error::IllConditioned("slope needs at least two distances".into()));
    }
    let n = table.direction().to_vector();
    let mut points = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let direct = eval_j_direct(pair, table.k(), &vec3::scale(&n, r), spec)?;
        let series = eval_series(table, r, terms)?.value;
        let diff = (direct.value - series).norm();
        if diff <= NOISE_MARGIN * direct.error_estimate {
            return Err(Error::IllConditioned(format!(
                "difference {diff:.3e} at R = {r} is within the oracle noise {:.3e}",
                direct.error_estimate
            )));
        }
        points.push((r, diff, direct.error_estimate));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::IllConditioned("distances must not all coincide".into()));
    }
    let slope = sxy / sxx;
    Ok(SlopeFit { slope, intercept: my - slope * mx, points })
}

/// Bounds `(C_M/((M−2)R^{M−2}), C_M/((M−3)R^{M−2}))` on the two corrections
/// from the part of `φ` outside radius `R`, given `|φ(x)| < C_M/|x|^M` there.
pub fn tail_bounds(c_m: f64, m: f64, r: f64) -> Result<(f64, f64)> {
    if !(m > 3.0) || !(r > 0.0) {
        return Err(Error::Domain(format!("tail bounds need M > 3 and R > 0, got M = {m}, R = {r}")));
    }
    let p = r.powf(m - 2.0);
    Ok((c_m / ((m - 2.0) * p), c_m / ((m - 3.0) * p)))
}

/// Smallest `C` with `|g(ρ)| ≤ C/ρ^M` on `[r_from, r_to]`, sampled densely.
pub fn envelope_constant(g: impl Fn(f64) -> f64, m: f64, r_from: f64, r_to: f64) -> f64 {
    let samples = 4000;
    (0..=samples)
        .map(|i| {
            let rho = r_from + (r_to - r_from) * i as f64 / samples as f64;
            rho.powf(m) * g(rho).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::radial_tail_j;

    #[test]
    fn residual_vanishes_away_from_source() {
        let r = greens_residual(1.0, &[0.0, 3.0, 4.0], 1e-3).unwrap();
        assert!(r.norm() < 1e-4);
    }

    #[test]
    fn residual_is_second_order() {
        let p = [1.0, -2.0, 2.0];
        let a = greens_residual(1.0, &p, 0.02).unwrap().norm();
        let b = greens_residual(1.0, &p, 0.01).unwrap().norm();
        let ratio = a / b;
        assert!((ratio - 4.0).abs() < 0.2, "{ratio}");
    }

    #[test]
    fn radial_form_agrees_with_cartesian() {
        let h = 1e-3;
        let a = greens_residual(1.0, &[0.0, 0.0, 5.0], h).unwrap();
        let b = greens_residual_radial(1.0, 5.0, h).unwrap();
        assert!((a - b).norm() < 1e-6);
    }

    #[test]
    fn tail_bound_values() {
        let (a, b) = tail_bounds(1.0, 5.0, 10.0).unwrap();
        assert!((a - 1.0 / 3000.0).abs() < 1e-18);
        assert!((b - 1.0 / 2000.0).abs() < 1e-18);
        assert!(tail_bounds(1.0, 3.0, 1.0).is_err());
        assert!(tail_bounds(1.0, 5.0, 1e6).unwrap().0 < 1e-18);
    }

    #[test]
    fn gaussian_tail_respects_fitted_bound() {
        let sigma: f64 = 1.0;
        let g = |r: f64| (sigma * sigma / (2.0 * PI)).powf(1.5) * (-sigma * sigma * r * r / 2.0).exp();
        for r in [2.0, 3.0, 4.0] {
            let tail = radial_tail_j(g, 1.0, r, r, r + 12.0).unwrap().norm();
            for m in [5.0, 8.0] {
                let c_m = envelope_constant(g, m, r, r + 12.0);
                let (bound, _) = tail_bounds(c_m, m, r).unwrap();
                assert!(tail < bound, "R={r} M={m}: {tail} vs {bound}");
            }
        }
    }
}
