//! The Green function and plane wave of `N`-dimensional space as zonal
//! (Gegenbauer) multipole series, with `ν = (N−2)/2`, `a = (N−3)/2` and
//! `j = l + a`. Half-integer quantities are carried as exact twice-values.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{
    chi_half_imag, gamma_half_integer, gegenbauer_sequence, hankel1, psi_general_sequence,
    HalfIntegerOrder,
};

pub const MIN_DIMENSION: u32 = 2;
/// `ν ≤ 6`.
pub const MAX_DIMENSION: u32 = 14;
/// Relative agreement required between the χ and Hankel closed forms.
const CLOSED_FORM_AGREEMENT: f64 = 1e-9;

/// Space dimension with its derived half-integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DimParams {
    n: u32,
}

impl DimParams {
    pub fn new(n: u32) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&n) {
            return Err(Error::Domain(format!(
                "dimension {n} outside supported {MIN_DIMENSION}..={MAX_DIMENSION}"
            )));
        }
        Ok(Self { n })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    /// `2ν = N − 2`.
    pub fn twice_nu(&self) -> i64 {
        i64::from(self.n) - 2
    }

    /// `2a = N − 3`.
    pub fn twice_a(&self) -> i64 {
        i64::from(self.n) - 3
    }

    pub fn nu(&self) -> f64 {
        self.twice_nu() as f64 / 2.0
    }

    pub fn a(&self) -> f64 {
        self.twice_a() as f64 / 2.0
    }

    /// `2j = 2l + 2a`.
    pub fn twice_j(&self, l: usize) -> i64 {
        2 * l as i64 + self.twice_a()
    }

    /// Bessel order `j + 1/2` of degree `l = 0`, which is `ν`.
    fn base_order(&self) -> HalfIntegerOrder {
        HalfIntegerOrder::from_twice(self.n - 2)
    }

    /// `4[l(l+2ν) + a(a+1)]` and `4 j(j+1)`, both exact.
    pub fn eigenvalue_quadrupled(&self, l: usize) -> (i64, i64) {
        let l = l as i64;
        let (tn, ta) = (self.twice_nu(), self.twice_a());
        let tj = 2 * l + ta;
        (4 * l * l + 4 * l * tn + ta * (ta + 2), tj * (tj + 2))
    }

    /// `i^x` and `(−i)^x` on the principal branch for `x` given as twice its value.
    fn i_pow(twice: i64) -> Complex64 {
        Complex64::from_polar(1.0, PI * twice as f64 / 4.0)
    }

    /// `(2j+1) Γ(ν) C_l^{(ν)}(ξ)` for `l ≤ l_max`, with its `ν → 0` limit at `N = 2`.
    fn zonal_weights(&self, l_max: usize, xi: f64) -> Result<Vec<f64>> {
        if self.twice_nu() == 0 {
            // 2(l+ν) Γ(ν) C_l^{(ν)} → 2 for l = 0 and 4 T_l for l ≥ 1
            let x = xi.clamp(-1.0, 1.0);
            let mut t = vec![1.0, x];
            for l in 2..=l_max {
                t.push(2.0 * x * t[l - 1] - t[l - 2]);
            }
            t.truncate(l_max + 1);
            return Ok(t.iter().enumerate().map(|(l, v)| if l == 0 { 2.0 } else { 4.0 * v }).collect());
        }
        let gamma_nu = gamma_half_integer(self.n - 2);
        let c = gegenbauer_sequence(l_max, self.nu(), xi)?;
        Ok(c.iter()
            .enumerate()
            .map(|(l, v)| (self.twice_j(l) + 1) as f64 * gamma_nu * v)
            .collect())
    }
}

fn check_positive(what: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain(format!("{what} must be positive and finite, got {v}")));
    }
    Ok(())
}

/// Outgoing Green function of `−∇² − k²` at separation `sep`, as the χ form
/// checked against the Hankel form.
pub fn green_nd_closed(dim: DimParams, k: f64, sep: f64) -> Result<Complex64> {
    let (chi_form, hankel_form) = green_nd_closed_pair(dim, k, sep)?;
    let scale = chi_form.norm().max(hankel_form.norm());
    if (chi_form - hankel_form).norm() > CLOSED_FORM_AGREEMENT * scale {
        return Err(Error::Inconsistency(format!(
            "N = {}: χ form {chi_form} vs Hankel form {hankel_form}",
            dim.dimension()
        )));
    }
    Ok(chi_form)
}

/// `(√(π/2)(−ik)^a χ_a(−ik s)/((2π)^{ν+1} s^{a+1}), (i/4)(k/2π)^ν H_ν^{(1)}(ks)/s^ν)`.
pub fn green_nd_closed_pair(dim: DimParams, k: f64, sep: f64) -> Result<(Complex64, Complex64)> {
    check_positive("k", k)?;
    check_positive("separation", sep)?;
    let (nu, a) = (dim.nu(), dim.a());
    let chi = chi_half_imag(dim.base_order(), 1, k * sep)?[0];
    let minus_ik_a = DimParams::i_pow(-dim.twice_a()) * k.powf(a);
    let chi_form = (PI / 2.0).sqrt() * minus_ik_a * chi / ((2.0 * PI).powf(nu + 1.0) * sep.powf(a + 1.0));
    let h = hankel1(dim.base_order(), k * sep)?;
    let hankel_form = Complex64::new(0.0, 0.25) * (k / (2.0 * PI)).powf(nu) * h / sep.powf(nu);
    Ok((chi_form, hankel_form))
}

/// Partial sum through `l_max` of the zonal multipole series of the Green
/// function between `R n` and `r s`, `R > r`, with `cos γ = n·s`.
pub fn green_nd_multipole(
    dim: DimParams,
    k: f64,
    big_r: f64,
    r: f64,
    cos_gamma: f64,
    l_max: usize,
) -> Result<Complex64> {
    check_positive("k", k)?;
    check_positive("r", r)?;
    if !(big_r > r) {
        return Err(Error::Domain(format!("multipole series diverges for R = {big_r} ≤ r = {r}")));
    }
    let weights = dim.zonal_weights(l_max, cos_gamma)?;
    let chi = chi_half_imag(dim.base_order(), l_max + 1, k * big_r)?;
    let psi = psi_general_sequence(dim.base_order(), l_max + 1, k * r)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for l in 0..=l_max {
        let term = chi[l] * (psi[l] * weights[l]);
        // χ overflows before ψ underflows only far past convergence
        if !term.is_finite() {
            break;
        }
        sum += DimParams::i_pow(-dim.twice_j(l)) * term;
    }
    let a1 = dim.a() + 1.0;
    Ok(sum / (k * 4.0 * PI.powf(dim.nu() + 1.0) * (big_r * r).powf(a1)))
}

/// Degree needed for the multipole series to reach relative accuracy `tol`.
pub fn multipole_degree_for(k: f64, big_r: f64, r: f64, tol: f64) -> usize {
    let ratio = (r / big_r).clamp(1e-12, 1.0 - 1e-12);
    let geometric = tol.ln() / ratio.ln();
    (geometric + k * r + 10.0).ceil().max(0.0) as usize
}

/// Partial sum through `l_max` of the Gegenbauer expansion of `e^{−ikr cos γ}`.
pub fn plane_wave_nd(dim: DimParams, k: f64, r: f64, cos_gamma: f64, l_max: usize) -> Result<Complex64> {
    check_positive("k", k)?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("r must be non-negative, got {r}")));
    }
    if r == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let x = k * r;
    let weights = dim.zonal_weights(l_max, cos_gamma)?;
    let psi = psi_general_sequence(dim.base_order(), l_max + 1, x)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for l in (0..=l_max).rev() {
        sum += DimParams::i_pow(-dim.twice_j(l)) * (psi[l] * weights[l]);
    }
    // √(2/π) 2^{ν−1} / ((−ix)^a x)
    let minus_ix_a = DimParams::i_pow(-dim.twice_a()) * x.powf(dim.a());
    let prefactor = (2.0 / PI).sqrt() * 2f64.powf(dim.nu() - 1.0) / (minus_ix_a * x);
    Ok(prefactor * sum)
}

/// `(1/s!) Π_{μ=1}^{s} [l(l+2ν) + a(a+1) − μ(μ−1)]`, the order-`s` factor on zonal mode `l`.
pub fn mode_factor_nd(dim: DimParams, l: usize, s: usize) -> f64 {
    let tj = dim.twice_j(l);
    // j(j+1) − μ(μ−1) = (j+μ)(j−μ+1) = (2j+2μ)(2j−2μ+2)/4
    (1..=s).fold(1.0, |acc, mu| {
        let mu = mu as i64;
        acc * ((tj + 2 * mu) * (tj - 2 * mu + 2)) as f64 / 4.0 / mu as f64
    })
}

/// Mode factors for orders `0 … s_max` applied to zonal coefficients.
pub fn coeff_closed_nd(dim: DimParams, zonal: &[Complex64], s_max: usize) -> Vec<Vec<Complex64>> {
    (0..=s_max)
        .map(|s| zonal.iter().enumerate().map(|(l, c)| c * mode_factor_nd(dim, l, s)).collect())
        .collect()
}

/// Far-field operator series for the Green function between `R n` and `r s`:
/// `√(π/2)(−ik)^a e^{ikR}/((2π)^{ν+1} R^{a+1}) Σ_{s ≤ s_max} F_s e^{−ikr cos γ}/(−2ikR)^s`,
/// with `F_s` acting on the Gegenbauer modes of the plane wave.
pub fn green_nd_asymptotic(
    dim: DimParams,
    k: f64,
    big_r: f64,
    r: f64,
    cos_gamma: f64,
    s_max: usize,
    l_max: usize,
) -> Result<Complex64> {
    check_positive("k", k)?;
    check_positive("R", big_r)?;
    check_positive("r", r)?;
    let x = k * r;
    let weights = dim.zonal_weights(l_max, cos_gamma)?;
    let psi = psi_general_sequence(dim.base_order(), l_max + 1, x)?;
    let minus_ix_a = DimParams::i_pow(-dim.twice_a()) * x.powf(dim.a());
    let pw_prefactor = (2.0 / PI).sqrt() * 2f64.powf(dim.nu() - 1.0) / (minus_ix_a * x);
    let modes: Vec<Complex64> = (0..=l_max)
        .map(|l| pw_prefactor * DimParams::i_pow(-dim.twice_j(l)) * (psi[l] * weights[l]))
        .collect();
    let step = Complex64::new(0.0, 1.0 / (2.0 * k * big_r));
    let mut total = Complex64::new(0.0, 0.0);
    let mut w = Complex64::new(1.0, 0.0);
    for s in 0..=s_max {
        let order: Complex64 = modes.iter().enumerate().map(|(l, m)| m * mode_factor_nd(dim, l, s)).sum();
        total += order * w;
        w *= step;
    }
    let minus_ik_a = DimParams::i_pow(-dim.twice_a()) * k.powf(dim.a());
    let lead = (PI / 2.0).sqrt() * minus_ik_a * Complex64::from_polar(1.0, k * big_r)
        / ((2.0 * PI).powf(dim.nu() + 1.0) * big_r.powf(dim.a() + 1.0));
    Ok(lead * total)
}

/// Largest finite-difference residual of the radial equation
/// `r²(r^{−(a+1)} ∂²_r r^{a+1} + k²) ψ_j(kr)/r^{a+1} = j(j+1) ψ_j(kr)/r^{a+1}`
/// over `r_grid`, for `j = l + a` and step `h`, relative to the largest
/// magnitude either side of the equation reaches on the grid.
pub fn radial_ode_residual_nd(dim: DimParams, l: usize, k: f64, r_grid: &[f64], h: f64) -> Result<f64> {
    check_positive("k", k)?;
    check_positive("h", h)?;
    let order = HalfIntegerOrder::from_twice((dim.twice_j(l) + 1) as u32);
    let psi = |x: f64| -> Result<f64> { Ok(psi_general_sequence(order, 1, x)?[0]) };
    let tj = dim.twice_j(l) as f64;
    let jj1 = tj * (tj + 2.0) / 4.0;
    let a1 = dim.a() + 1.0;
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in r_grid {
        if !(r > 2.0 * h) {
            return Err(Error::Domain(format!("grid point {r} too close to the origin")));
        }
        let (pm, p0, pp) = (psi(k * (r - h))?, psi(k * r)?, psi(k * (r + h))?);
        let f = p0 / r.powf(a1);
        // r^{−(a+1)} ∂²_r (r^{a+1} f) = ψ''/r^{a+1}
        let second = (pp - 2.0 * p0 + pm) / (h * h) / r.powf(a1);
        let lhs = r * r * (second + k * k * f);
        let rhs = jj1 * f;
        worst = worst.max((lhs - rhs).abs());
        scale = scale.max(rhs.abs()).max((r * r * k * k * f).abs());
    }
    if scale == 0.0 {
        return Ok(worst);
    }
    Ok(worst / scale)
}
