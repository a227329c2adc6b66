use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::CoeffTable;
use crate::error::{Error, Result};
use crate::specfun::{chi_sequence, spherical_harmonics_all};
use crate::sphere::{Direction, MultipoleRep};

/// Truncated far-field series at one distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesEval {
    pub r: f64,
    pub terms_used: usize,
    pub value: Complex64,
    /// `e^{ikR}/(4πR) · Φ C_s / (−2ikR)^s`, summed in order into `value`.
    pub per_term: Vec<Complex64>,
}

fn check_distance(table: &CoeffTable, r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() || !(table.k() * r > 0.0) {
        return Err(Error::Domain(format!("series needs kR > 0, got k = {}, R = {r}", table.k())));
    }
    Ok(())
}

fn terms(table: &CoeffTable, r: f64, count: usize) -> Vec<Complex64> {
    let k = table.k();
    let prefactor = Complex64::from_polar(1.0 / (4.0 * PI * r), k * r);
    // 1/(−2ikR) = i/(2kR)
    let step = Complex64::new(0.0, 1.0 / (2.0 * k * r));
    let mut w = prefactor;
    table.phi_c()[..count]
        .iter()
        .map(|p| {
            let t = p * w;
            w *= step;
            t
        })
        .collect()
}

/// `𝒥(R n)` truncated after order `terms_used`.
pub fn eval_series(table: &CoeffTable, r: f64, terms_used: usize) -> Result<SeriesEval> {
    check_distance(table, r)?;
    if terms_used > table.s_max() {
        return Err(Error::Domain(format!(
            "{terms_used} terms requested, table holds s ≤ {}",
            table.s_max()
        )));
    }
    let per_term = terms(table, r, terms_used + 1);
    let value = per_term.iter().fold(Complex64::new(0.0, 0.0), |acc, t| acc + t);
    Ok(SeriesEval { r, terms_used, value, per_term })
}

/// Last order before the first increase in term magnitude, capped at `s_max`.
pub fn optimal_truncation(table: &CoeffTable, r: f64) -> Result<usize> {
    check_distance(table, r)?;
    let t = terms(table, r, table.s_max() + 1);
    Ok(t.windows(2).position(|w| w[1].norm() > w[0].norm()).unwrap_or(table.s_max()))
}

/// `|𝒥(R n)|² ≈ Φ²{1 + Σ_{n ≤ n_max} Υ_n/(2kR)^{2n}}/(4πR)²` for real `Φ`.
pub fn eval_series_squared(table: &CoeffTable, r: f64, n_max: usize) -> Result<f64> {
    check_distance(table, r)?;
    if !table.is_real_valued() {
        return Err(Error::ComplexPhi(
            "Υ_n is defined for real Φ only; use the general modulus series".into(),
        ));
    }
    if n_max > table.n_max() {
        return Err(Error::Domain(format!("n_max {n_max} exceeds table's {}", table.n_max())));
    }
    let x = 1.0 / (2.0 * table.k() * r).powi(2);
    let mut sum = table.phi_value().re.powi(2);
    let mut w = 1.0;
    for n in 1..=n_max {
        w *= x;
        sum += table.phi2_upsilon(n).expect("n ≤ n_max") * w;
    }
    Ok(sum / (4.0 * PI * r).powi(2))
}

/// `|𝒥(R n)|² ≈ Σ_{ζ ≤ zeta_max} |Φ|² D_ζ / (2kR)^ζ / (4πR)²`, any `Φ`.
pub fn modulus_series(table: &CoeffTable, r: f64, zeta_max: usize) -> Result<f64> {
    check_distance(table, r)?;
    if zeta_max > table.s_max() {
        return Err(Error::Domain(format!("ζ_max {zeta_max} exceeds s_max {}", table.s_max())));
    }
    let x = 1.0 / (2.0 * table.k() * r);
    let mut w = 1.0;
    let mut sum = 0.0;
    for d in &table.modulus_coeffs()[..=zeta_max] {
        sum += d * w;
        w *= x;
    }
    Ok(sum / (4.0 * PI * r).powi(2))
}

/// `(1/4πR) Σ_l χ_l(−ikR) Σ_m B_l^m Y_l^m(n)`: the series summed mode by mode.
pub fn resummed_multipole(rep: &MultipoleRep, n: &Direction, r: f64) -> Result<Complex64> {
    let kr = rep.k() * r;
    if !(kr > 0.0) || !kr.is_finite() {
        return Err(Error::Domain(format!("resummation needs kR > 0, got {kr}")));
    }
    let chi = chi_sequence(rep.l_max(), Complex64::new(0.0, -kr))?;
    let y = spherical_harmonics_all(rep.l_max(), n);
    let mut total = Complex64::new(0.0, 0.0);
    for l in (0..=rep.l_max()).rev() {
        let band: Complex64 = (l * l..(l + 1) * (l + 1)).map(|i| rep.coeffs()[i] * y[i]).sum();
        total += chi[l] * band;
    }
    Ok(total / (4.0 * PI * r))
}
