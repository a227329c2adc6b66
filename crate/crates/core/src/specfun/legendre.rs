use std::f64::consts::PI;

use num_complex::Complex64;

use super::SphericalHarmonicIndex;
use crate::error::{Error, Result};
use crate::sphere::Direction;

const DOMAIN_SLACK: f64 = 1e-12;

fn check_unit_interval(xi: f64) -> Result<f64> {
    if !xi.is_finite() || xi.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::Domain(format!("argument {xi} outside [-1, 1]")));
    }
    Ok(xi.clamp(-1.0, 1.0))
}

/// Legendre polynomial `P_l(ξ)` by upward three-term recurrence.
pub fn legendre_p(l: usize, xi: f64) -> Result<f64> {
    let x = check_unit_interval(xi)?;
    let (mut p0, mut p1) = (1.0, x);
    if l == 0 {
        return Ok(p0);
    }
    for n in 2..=l {
        let nf = n as f64;
        let p2 = ((2.0 * nf - 1.0) * x * p1 - (nf - 1.0) * p0) / nf;
        p0 = p1;
        p1 = p2;
    }
    Ok(p1)
}

/// `P_0(ξ) … P_{l_max}(ξ)`.
pub fn legendre_sequence(l_max: usize, xi: f64) -> Result<Vec<f64>> {
    let x = check_unit_interval(xi)?;
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(1.0);
    if l_max >= 1 {
        out.push(x);
    }
    for n in 2..=l_max {
        let nf = n as f64;
        let p = ((2.0 * nf - 1.0) * x * out[n - 1] - (nf - 1.0) * out[n - 2]) / nf;
        out.push(p);
    }
    Ok(out)
}

/// Orthonormal associated Legendre functions `P̄_l^m(cos θ)` for `m ≥ 0`,
/// including the Condon–Shortley phase, packed as `l(l+1)/2 + m`.
///
/// `Y_l^m(θ, φ) = P̄_l^m(cos θ) e^{imφ}`.
pub(crate) fn normalized_assoc_legendre(l_max: usize, cos_theta: f64, sin_theta: f64) -> Vec<f64> {
    let tri = |l: usize, m: usize| l * (l + 1) / 2 + m;
    let mut p = vec![0.0; (l_max + 1) * (l_max + 2) / 2];
    let x = cos_theta;
    let mut pmm = 1.0 / (4.0 * PI).sqrt();
    for m in 0..=l_max {
        if m > 0 {
            let mf = m as f64;
            pmm *= -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * sin_theta;
        }
        p[tri(m, m)] = pmm;
        if m < l_max {
            p[tri(m + 1, m)] = (2.0 * m as f64 + 3.0).sqrt() * x * pmm;
        }
        let mf = m as f64;
        for l in (m + 2)..=l_max {
            let lf = l as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let lm1 = lf - 1.0;
            let b = ((lm1 * lm1 - mf * mf) / (4.0 * lm1 * lm1 - 1.0)).sqrt();
            p[tri(l, m)] = a * (x * p[tri(l - 1, m)] - b * p[tri(l - 2, m)]);
        }
    }
    p
}

/// Orthonormal spherical harmonic `Y_l^m(n)` (Condon–Shortley phase).
pub fn spherical_harmonic(idx: SphericalHarmonicIndex, n: &Direction) -> Complex64 {
    let all = spherical_harmonics_all(idx.l(), n);
    all[idx.packed()]
}

/// All `Y_l^m(n)` with `l ≤ l_max`, packed at `l² + l + m`.
pub fn spherical_harmonics_all(l_max: usize, n: &Direction) -> Vec<Complex64> {
    let (sin_t, cos_t) = n.theta().sin_cos();
    let plm = normalized_assoc_legendre(l_max, cos_t, sin_t);
    let mut out = vec![Complex64::new(0.0, 0.0); (l_max + 1) * (l_max + 1)];
    let phase_step = Complex64::from_polar(1.0, n.phi());
    for l in 0..=l_max {
        let mut phase = Complex64::new(1.0, 0.0);
        for m in 0..=l {
            let y = phase * plm[l * (l + 1) / 2 + m];
            out[l * l + l + m] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                out[l * l + l - m] = y.conj() * sign;
            }
            phase *= phase_step;
        }
    }
    out
}

/// Gegenbauer polynomial `C_l^{(ν)}(ξ)` by upward recurrence, `ν > 0`.
pub fn gegenbauer_c(l: usize, nu: f64, xi: f64) -> Result<f64> {
    Ok(*gegenbauer_sequence(l, nu, xi)?.last().expect("non-empty"))
}

/// `C_0^{(ν)}(ξ) … C_{l_max}^{(ν)}(ξ)`.
pub fn gegenbauer_sequence(l_max: usize, nu: f64, xi: f64) -> Result<Vec<f64>> {
    if !(nu > 0.0) {
        return Err(Error::Domain(format!("Gegenbauer parameter ν = {nu} must be positive")));
    }
    let x = check_unit_interval(xi)?;
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(1.0);
    if l_max >= 1 {
        out.push(2.0 * nu * x);
    }
    for n in 2..=l_max {
        let nf = n as f64;
        let c = (2.0 * x * (nf + nu - 1.0) * out[n - 1] - (nf + 2.0 * nu - 2.0) * out[n - 2]) / nf;
        out.push(c);
    }
    Ok(out)
}

/// Chebyshev polynomial `T_l(ξ) = cos(l arccos ξ)`, the ν → 0 limit shape of
/// `C_l^{(ν)}/ν`.
pub fn chebyshev_t(l: usize, xi: f64) -> Result<f64> {
    let x = check_unit_interval(xi)?;
    let (mut t0, mut t1) = (1.0, x);
    if l == 0 {
        return Ok(1.0);
    }
    for _ in 2..=l {
        let t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    Ok(t1)
}
