//! Closed forms of `ℒ_n` acting on `e^{λξ}` and `e^{λζ}`, with `ξ = r̂·n` and
//! `ζ = n·B·n`. Here `Φ C₁ = ℒ_n Φ`, `Φ C₂ = ½(ℒ_n² − 2ℒ_n)Φ` and
//! `Υ₁ = C₁² − 2C₂`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sphere::{forward_transform, AngularGrid, Direction};
use crate::vec3::{self, Mat3};

fn check_xi(xi: f64) -> Result<f64> {
    if !(xi.abs() <= 1.0 + 1e-12) {
        return Err(Error::Domain(format!("ξ = {xi} outside [−1, 1]")));
    }
    Ok(xi.clamp(-1.0, 1.0))
}

/// `(C₁, C₂)` for `e^{λξ}`.
pub fn c1_c2_xi(lambda: f64, xi: f64) -> Result<(f64, f64)> {
    let xi = check_xi(xi)?;
    let w = xi * xi - 1.0;
    let l2 = lambda * lambda;
    let c1 = 2.0 * lambda * xi + l2 * w;
    let c2 = (6.0 * xi * xi - 2.0) * l2 + 4.0 * xi * w * l2 * lambda + 0.5 * w * w * l2 * l2;
    Ok((c1, c2))
}

/// `Υ₁ = −4λ²[1 − (2 + λξ)(1 − ξ²)]` for `e^{λξ}`.
pub fn upsilon1_xi(lambda: f64, xi: f64) -> Result<f64> {
    let xi = check_xi(xi)?;
    Ok(-4.0 * lambda * lambda * (1.0 - (2.0 + lambda * xi) * (1.0 - xi * xi)))
}

/// `ζ_m = n·B^m·n` and `ζ̄_m = Tr B^m / 3` for `m = 1, 2, 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaMoments {
    pub zeta: [f64; 3],
    pub bar: [f64; 3],
}

impl ZetaMoments {
    pub fn new(b: &Mat3, n: &Direction) -> Self {
        let nv = n.to_vector();
        let b2 = vec3::mat_mul(b, b);
        let b3 = vec3::mat_mul(&b2, b);
        let powers = [*b, b2, b3];
        Self {
            zeta: powers.map(|p| vec3::quadratic_form(&p, &nv)),
            bar: powers.map(|p| vec3::trace(&p) / 3.0),
        }
    }

    /// `ζ_m` for `m = 1, 2, 3`.
    pub fn z(&self, m: usize) -> f64 {
        self.zeta[m - 1]
    }

    /// `ζ_{m0} = ζ_m − ζ̄_m`.
    pub fn traceless(&self, m: usize) -> f64 {
        self.zeta[m - 1] - self.bar[m - 1]
    }
}

/// `C₁`, `C₂`, `Υ₁` for `e^{λζ}` and the quadratic `Υ₁ = −8λ(aλ² + bλ + c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub upsilon1: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

pub fn c1_c2_zeta(lambda: f64, b: &Mat3, n: &Direction) -> Result<ZetaCoefficients> {
    if !vec3::is_symmetric(b, 1e-12) || !vec3::is_positive_semidefinite(b, 1e-12) {
        return Err(Error::Domain("B must be symmetric positive semidefinite".into()));
    }
    let mo = ZetaMoments::new(b, n);
    let (z, z2, z3) = (mo.z(1), mo.z(2), mo.z(3));
    let (z0, z20) = (mo.traceless(1), mo.traceless(2));
    let d = z * z - z2;
    let l = lambda;
    let c1 = 6.0 * z0 * l + 4.0 * d * l * l;
    let c2 = 12.0 * z0 * l
        + 6.0 * ((4.0 * z + 3.0 * z0) * z0 + 6.0 * d - 2.0 * z20) * l * l
        + 8.0 * ((4.0 * z + 3.0 * z0) * d + 2.0 * (z3 - z * z2)) * l.powi(3)
        + 8.0 * d * d * l.powi(4);
    let a = 4.0 * (2.0 * z.powi(3) + z3 - 3.0 * z * z2);
    let bq = 3.0 * (2.0 * z0 * z + 3.0 * d - z20);
    let c = 3.0 * z0;
    let upsilon1 = -8.0 * l * ((a * l + bq) * l + c);
    Ok(ZetaCoefficients { c1, c2, upsilon1, a, b: bq, c })
}

/// Cauchy–Schwarz chain of a positive semidefinite `B` along `n`:
/// `ζ_m² ≤ ζ_{2s} ζ_{2m−2s}` and `ζ_m ≥ ζ ζ_{m−1} ≥ … ≥ ζ^m` for `m ≤ 4`.
pub fn moment_chain_holds(b: &Mat3, n: &Direction) -> bool {
    let nv = n.to_vector();
    let mut z = vec![1.0];
    let mut power = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _ in 1..=8 {
        power = vec3::mat_mul(&power, b);
        z.push(vec3::quadratic_form(&power, &nv));
    }
    let tol = 1e-12 * z.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    for m in 1..=4 {
        for s in 0..=m {
            if z[m] * z[m] > z[2 * s] * z[2 * m - 2 * s] + tol * z[2 * s].max(1.0) {
                return false;
            }
        }
        for i in 1..=m {
            // ζ^{i−1} ζ_{m−i+1} ≥ ζ^i ζ_{m−i}
            let hi = z[1].powi(i as i32 - 1) * z[m - i + 1];
            let lo = z[1].powi(i as i32) * z[m - i];
            if lo > hi + tol {
                return false;
            }
        }
    }
    true
}

/// `e^{λ a·n}` for a unit axis `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpFactor {
    pub lambda: f64,
    pub axis: Direction,
}

impl ExpFactor {
    fn value(&self, n: &Direction) -> f64 {
        (self.lambda * self.axis.dot(n)).exp()
    }
}

/// Relative difference at `n` between the product rule
/// `ℒ(fg) = gℒf + fℒg − 2(r̂⊥·ϱ̂⊥) ∂f ∂g` in closed form and `ℒ_n` applied
/// spectrally to a grid transform of `fg`.
pub fn product_rule_check(f: &ExpFactor, g: &ExpFactor, n: &Direction) -> Result<f64> {
    let (xi, varsigma) = (f.axis.dot(n), g.axis.dot(n));
    let (fv, gv) = (f.value(n), g.value(n));
    let (c1_f, _) = c1_c2_xi(f.lambda, xi)?;
    let (c1_g, _) = c1_c2_xi(g.lambda, varsigma)?;
    let perp = f.axis.dot(&g.axis) - xi * varsigma;
    let closed = fv * gv * (c1_f + c1_g - 2.0 * perp * f.lambda * g.lambda);

    let total = f.lambda.abs() + g.lambda.abs();
    let l_max = (total + 8.0 * total.sqrt() + 24.0).ceil() as usize;
    let grid = AngularGrid::for_degree(2 * l_max);
    let rep = forward_transform(
        |m| num_complex::Complex64::new(f.value(m) * g.value(m), 0.0),
        l_max,
        1.0,
        &grid,
    )?;
    let spectral = rep.apply_angular_laplacian().evaluate(n).re;
    let scale = closed.abs().max(fv * gv);
    Ok((closed - spectral).abs() / scale)
}
