use num_complex::Complex64;
use rayon::prelude::*;

use crate::sphere::MultipoleRep;

/// `(1/s!) Π_{μ=1}^{s} [l(l+1) − μ(μ−1)] = (l+s)! / (s! (l−s)!)`, zero for `s > l`.
pub fn mode_factor(l: usize, s: usize) -> f64 {
    if s > l {
        return 0.0;
    }
    // l(l+1) − μ(μ−1) = (l+μ)(l−μ+1)
    (1..=s).fold(1.0, |acc, mu| acc * ((l + mu) * (l + 1 - mu)) as f64 / mu as f64)
}

/// `(1/s!) Π_{μ=1}^{s} [l(l+1) − μ(μ−1)]` in exact integer arithmetic; `None` on
/// overflow. Every partial quotient `(l+μ)!/(μ!(l−μ)!)` is an integer.
pub fn mode_product_exact(l: u64, s: u64) -> Option<u128> {
    if s > l {
        return Some(0);
    }
    (1..=u128::from(s)).try_fold(1u128, |acc, mu| {
        let factor = (u128::from(l) + mu) * (u128::from(l) + 1 - mu);
        acc.checked_mul(factor).map(|v| v / mu)
    })
}

/// `Φ·C_s` for `s = 0 … s_max` from the closed operator product.
pub fn coeff_closed(rep: &MultipoleRep, s_max: usize) -> Vec<MultipoleRep> {
    (0..=s_max)
        .into_par_iter()
        .map(|s| rep.scale_by_degree(|l| mode_factor(l, s)))
        .collect()
}

/// `Φ·C_s` for `s = 0 … s_max` from `Φ·C_s = [(ℒ − s(s−1))/s] Φ·C_{s−1}`.
pub fn coeff_recurrence(rep: &MultipoleRep, s_max: usize) -> Vec<MultipoleRep> {
    let mut out = Vec::with_capacity(s_max + 1);
    out.push(rep.clone());
    for s in 1..=s_max {
        let prev = &out[s - 1];
        let shift = (s * (s - 1)) as f64;
        let lap = prev.apply_angular_laplacian();
        let next = lap.add_scaled(prev, Complex64::new(-shift, 0.0)).scaled(Complex64::new(1.0 / s as f64, 0.0));
        out.push(next);
    }
    out
}
