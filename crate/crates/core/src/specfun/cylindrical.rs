//! Cylinder functions `J_ν`, `Y_ν`, `H_ν^{(1)}` for integer and half-integer
//! order, real positive argument.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use super::spherical::{psi_sequence, riccati_y_sequence};
use super::HalfIntegerOrder;
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Above this argument `Y_0`, `Y_1` come from the Hankel asymptotic expansion,
/// whose smallest term is then below e^{-50}.
const ASYMPTOTIC_ABOVE: f64 = 25.0;
const RESCALE_ABOVE: f64 = 1e250;
/// Largest order accepted by [`bessel_jy`], as twice its value.
pub const MAX_TWICE_ORDER: u32 = 800;

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("cylinder functions need x > 0, got {x}")));
    }
    Ok(())
}

/// Miller downward recurrence for `J_0 … J_{top}` normalised by
/// `J_0 + 2 Σ_k J_{2k} = 1`. Returns the full (over-length) array.
fn miller_j(n_max: usize, x: f64) -> Vec<f64> {
    let top = (n_max as f64).max(x);
    let mut start = (top + 30.0 + 4.0 * top.sqrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-300;
    for n in (1..=start).rev() {
        j[n - 1] = 2.0 * n as f64 / x * j[n] - j[n + 1];
        if j[n - 1].abs() > RESCALE_ABOVE {
            for v in j[n - 1..].iter_mut() {
                *v /= RESCALE_ABOVE;
            }
        }
    }
    let mut norm = 0.0;
    for k in (1..=start / 2).rev() {
        norm += 2.0 * j[2 * k];
    }
    norm += j[0];
    j.iter_mut().for_each(|v| *v /= norm);
    j
}

/// `J_0(x) … J_{n_max}(x)` for `x ≥ 0`.
pub fn bessel_j_sequence(n_max: usize, x: f64) -> Result<Vec<f64>> {
    if x == 0.0 {
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    check_positive(x)?;
    let mut j = miller_j(n_max, x);
    j.truncate(n_max + 1);
    Ok(j)
}

/// Hankel asymptotic expansion `(J_ν, Y_ν)` for large `x`.
fn hankel_asymptotic(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60 {
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-18 {
            break;
        }
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    let chi = x - (nu / 2.0 + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (FRAC_2_PI / x).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

fn y0_y1(x: f64, j: &[f64]) -> (f64, f64) {
    if x > ASYMPTOTIC_ABOVE {
        return (hankel_asymptotic(0.0, x).1, hankel_asymptotic(1.0, x).1);
    }
    neumann_y0_y1(x, j)
}

/// Neumann series for `Y_0`, `Y_1` on a Miller `J` sequence.
fn neumann_y0_y1(x: f64, j: &[f64]) -> (f64, f64) {
    let log_term = (x / 2.0).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = FRAC_2_PI * log_term * j[0] - 2.0 * FRAC_2_PI * s0;
    let y1 = -FRAC_2_PI * j[0] / x + FRAC_2_PI * log_term * j[1] + FRAC_2_PI * s1;
    (y0, y1)
}

/// `Y_0(x) … Y_{n_max}(x)` by upward recurrence from `Y_0`, `Y_1`.
fn bessel_y_sequence(n_max: usize, x: f64, j: &[f64]) -> Vec<f64> {
    let (y0, y1) = y0_y1(x, j);
    let mut y = Vec::with_capacity(n_max + 1);
    y.push(y0);
    if n_max >= 1 {
        y.push(y1);
    }
    for n in 1..n_max {
        let next = 2.0 * n as f64 / x * y[n] - y[n - 1];
        y.push(next);
    }
    y
}

/// `H_0^{(1)}(x) … H_{n_max}^{(1)}(x)` for integer orders.
pub fn hankel1_sequence(n_max: usize, x: f64) -> Result<Vec<Complex64>> {
    check_positive(x)?;
    let j = miller_j(n_max.max(1), x);
    let y = bessel_y_sequence(n_max, x, &j);
    Ok((0..=n_max).map(|n| Complex64::new(j[n], y[n])).collect())
}

/// `(J_ν(x), Y_ν(x))` for integer or half-integer `ν`.
///
/// Half-integer orders use the closed spherical forms. For integer orders `J`
/// comes from Miller recurrence; `Y_0`, `Y_1` from the Neumann series or the
/// Hankel asymptotic expansion, recurred upward to higher `Y_n`.
pub fn bessel_jy(order: HalfIntegerOrder, x: f64) -> Result<(f64, f64)> {
    check_positive(x)?;
    if order.twice() > MAX_TWICE_ORDER {
        return Err(Error::Domain(format!(
            "order {} exceeds supported maximum {}",
            order.value(),
            MAX_TWICE_ORDER / 2
        )));
    }
    if order.is_integer() {
        let n = (order.twice() / 2) as usize;
        let j = miller_j(n.max(1), x);
        let y = bessel_y_sequence(n, x, &j);
        Ok((j[n], y[n]))
    } else {
        let l = (order.twice() as usize - 1) / 2;
        let amp = (FRAC_2_PI / x).sqrt();
        let psi = psi_sequence(l, x)?;
        let chi = riccati_y_sequence(l, x)?;
        Ok((amp * psi[l], amp * chi[l]))
    }
}

/// `H_ν^{(1)}(x) = J_ν(x) + i Y_ν(x)`.
pub fn hankel1(order: HalfIntegerOrder, x: f64) -> Result<Complex64> {
    let (j, y) = bessel_jy(order, x)?;
    Ok(Complex64::new(j, y))
}
