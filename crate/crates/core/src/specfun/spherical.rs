//! Spherical (half-integer order) Bessel family: the elementary χ_l sums,
//! Riccati–Bessel ψ_l(x) = x j_l(x), and modified spherical Bessel i_l.

use num_complex::Complex64;

use super::cylindrical::{bessel_j_sequence, hankel1_sequence};
use super::{factorial_u64, ln_factorial, HalfIntegerOrder};
use crate::error::{Error, Result};

const RESCALE_ABOVE: f64 = 1e250;

/// Coefficient `(l+s)! / (s! (l-s)!)` of the χ_l sum. Exact integer arithmetic
/// while `l + s ≤ 20`, log-space above.
fn chi_coefficient(l: u64, s: u64) -> f64 {
    if l + s <= 20 {
        (factorial_u64(l + s) / (factorial_u64(s) * factorial_u64(l - s))) as f64
    } else {
        (ln_factorial(l + s) - ln_factorial(s) - ln_factorial(l - s)).exp()
    }
}

/// `χ_l(z) = e^{-z} Σ_{s=0}^{l} (l+s)! / (s! (l-s)! (2z)^s)`, i.e.
/// `√(2z/π) K_{l+1/2}(z)` for integer `l`.
pub fn chi(l: usize, z: Complex64) -> Result<Complex64> {
    if z.norm() == 0.0 {
        return Err(Error::Singular("χ_l(z) is singular at z = 0".into()));
    }
    let inv_2z = (2.0 * z).inv();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    for s in 0..=l as u64 {
        sum += pow * chi_coefficient(l as u64, s);
        pow *= inv_2z;
    }
    Ok((-z).exp() * sum)
}

/// `χ_0(z) … χ_{l_max}(z)` by the upward recurrence
/// `χ_{l+1} = χ_{l-1} + (2l+1)/z · χ_l`.
pub fn chi_sequence(l_max: usize, z: Complex64) -> Result<Vec<Complex64>> {
    if z.norm() == 0.0 {
        return Err(Error::Singular("χ_l(z) is singular at z = 0".into()));
    }
    let e = (-z).exp();
    let mut out = Vec::with_capacity(l_max + 1);
    out.push(e);
    if l_max >= 1 {
        out.push(e * (1.0 + z.inv()));
    }
    for l in 1..l_max {
        let next = out[l - 1] + out[l] * ((2 * l + 1) as f64) / z;
        out.push(next);
    }
    Ok(out)
}

/// Outgoing χ at imaginary argument, `χ_j(-ix)` for `x > 0`, with the Bessel
/// order `j + 1/2` given by `order`. Returns `count` consecutive orders.
///
/// Half-integer Bessel orders (integer `j`) use the elementary sum; integer
/// orders go through `χ_j(-ix) = √(πx/2) e^{iπ(n/2 + 1/4)} H_n^{(1)}(x)`.
pub fn chi_half_imag(first: HalfIntegerOrder, count: usize, x: f64) -> Result<Vec<Complex64>> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("χ_j(-ix) needs x > 0, got {x}")));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    if !first.is_integer() {
        let j0 = (first.twice() as usize - 1) / 2;
        let all = chi_sequence(j0 + count - 1, Complex64::new(0.0, -x))?;
        return Ok(all[j0..].to_vec());
    }
    let n0 = (first.twice() / 2) as usize;
    let h = hankel1_sequence(n0 + count - 1, x)?;
    let scale = (std::f64::consts::PI * x / 2.0).sqrt();
    Ok((0..count)
        .map(|i| {
            let n = (n0 + i) as f64;
            let phase = Complex64::from_polar(1.0, std::f64::consts::PI * (n / 2.0 + 0.25));
            phase * h[n0 + i] * scale
        })
        .collect())
}

/// Riccati–Bessel `ψ_l(x) = √(πx/2) J_{l+1/2}(x) = x j_l(x)`.
pub fn psi_l0(l: usize, x: f64) -> Result<f64> {
    Ok(psi_sequence(l, x)?[l])
}

fn miller_start(l_max: usize, x: f64) -> usize {
    let top = (l_max as f64).max(x);
    (top + 30.0 + 4.0 * top.sqrt()).ceil() as usize
}

/// `ψ_0(x) … ψ_{l_max}(x)` by Miller's downward recurrence.
pub fn psi_sequence(l_max: usize, x: f64) -> Result<Vec<f64>> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("ψ_l(x) needs finite x ≥ 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(vec![0.0; l_max + 1]);
    }
    let j = spherical_j_sequence(l_max, x);
    Ok(j.into_iter().map(|v| v * x).collect())
}

fn spherical_j_sequence(l_max: usize, x: f64) -> Vec<f64> {
    let start = miller_start(l_max, x);
    let mut j = vec![0.0; start + 2];
    j[start] = 1e-300;
    for l in (1..=start).rev() {
        j[l - 1] = (2 * l + 1) as f64 / x * j[l] - j[l + 1];
        if j[l - 1].abs() > RESCALE_ABOVE {
            for v in j[l - 1..].iter_mut() {
                *v /= RESCALE_ABOVE;
            }
        }
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    let norm = if j0.abs() >= j1.abs() { j0 / j[0] } else { j1 / j[1] };
    j.truncate(l_max + 1);
    j.iter_mut().for_each(|v| *v *= norm);
    j
}

/// Riccati–Bessel of the second kind `x y_l(x)` by upward recurrence.
pub fn riccati_y_sequence(l_max: usize, x: f64) -> Result<Vec<f64>> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("y_l(x) needs x > 0, got {x}")));
    }
    let (s, c) = x.sin_cos();
    let mut y = Vec::with_capacity(l_max + 1);
    y.push(-c / x);
    if l_max >= 1 {
        y.push(-c / (x * x) - s / x);
    }
    for l in 1..l_max {
        let next = (2 * l + 1) as f64 / x * y[l] - y[l - 1];
        y.push(next);
    }
    Ok(y.into_iter().map(|v| v * x).collect())
}

/// `√(πx/2) J_ν(x)` for `count` consecutive orders starting at `first`,
/// integer or half-integer. This is `ψ_{j0}(x)` with `j = ν − 1/2`.
pub fn psi_general_sequence(
    first: HalfIntegerOrder,
    count: usize,
    x: f64,
) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if !first.is_integer() {
        let l0 = (first.twice() as usize - 1) / 2;
        let all = psi_sequence(l0 + count - 1, x)?;
        return Ok(all[l0..].to_vec());
    }
    let n0 = (first.twice() / 2) as usize;
    let j = bessel_j_sequence(n0 + count - 1, x)?;
    let scale = (std::f64::consts::PI * x / 2.0).sqrt();
    Ok(j[n0..].iter().map(|v| v * scale).collect())
}

/// Modified spherical Bessel `i_l(λ) = √(π/2λ) I_{l+1/2}(λ)`.
pub fn modified_spherical_bessel_i(l: usize, lambda: f64) -> Result<f64> {
    Ok(modified_spherical_bessel_i_sequence(l, lambda)?[l])
}

/// `i_0(λ) … i_{l_max}(λ)` by downward recurrence normalised with
/// `Σ_l (2l+1) i_l(λ) = e^{λ}`.
pub fn modified_spherical_bessel_i_sequence(l_max: usize, lambda: f64) -> Result<Vec<f64>> {
    if !lambda.is_finite() {
        return Err(Error::Domain(format!("i_l(λ) needs finite λ, got {lambda}")));
    }
    let mut out = vec![0.0; l_max + 1];
    if lambda == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let x = lambda.abs();
    let start = miller_start(l_max, x);
    let mut i = vec![0.0; start + 2];
    i[start] = 1e-300;
    for l in (1..=start).rev() {
        i[l - 1] = i[l + 1] + (2 * l + 1) as f64 / x * i[l];
        if i[l - 1].abs() > RESCALE_ABOVE {
            for v in i[l - 1..].iter_mut() {
                *v /= RESCALE_ABOVE;
            }
        }
    }
    // Σ (2l+1) i_l(x) = e^x, summed smallest-first
    let total: f64 = i[..=start]
        .iter()
        .enumerate()
        .rev()
        .map(|(l, v)| (2 * l + 1) as f64 * v)
        .sum();
    let norm = x.exp() / total;
    for (l, slot) in out.iter_mut().enumerate() {
        let v = i[l] * norm;
        *slot = if lambda < 0.0 && l % 2 == 1 { -v } else { v };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn chi_zero_is_exponential() {
        let z = c(0.7, -1.3);
        assert!((chi(0, z).unwrap() - (-z).exp()).norm() < 1e-15);
    }

    #[test]
    fn chi_one_at_unity() {
        // 1 + 2!/(1!·0!·2z) = 1 + 1/z = 2 at z = 1
        let v = chi(1, c(1.0, 0.0)).unwrap();
        assert!((v.re - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert!((v.re - 0.735_758_882_342_884_6).abs() < 1e-15);
    }

    #[test]
    fn chi_singular_at_origin() {
        assert!(matches!(chi(2, c(0.0, 0.0)), Err(Error::Singular(_))));
    }

    #[test]
    fn chi_l0_combination_is_sine() {
        for &x in &[0.3, 1.0, 7.5] {
            let lhs = (chi(0, c(0.0, -x)).unwrap() - chi(0, c(0.0, x)).unwrap()) / c(0.0, 2.0);
            assert!((lhs - c(x.sin(), 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn chi_recurrence_matches_closed_sum() {
        let z = c(0.0, -3.7);
        let seq = chi_sequence(30, z).unwrap();
        for (l, v) in seq.iter().enumerate() {
            let direct = chi(l, z).unwrap();
            assert!((v - direct).norm() <= 1e-12 * direct.norm(), "l={l}");
        }
    }

    #[test]
    fn chi_log_space_branch_is_continuous() {
        // l + s crosses 20 inside the sum for l = 15
        let z = c(2.0, 0.5);
        let seq = chi_sequence(15, z).unwrap();
        assert!((seq[15] - chi(15, z).unwrap()).norm() < 1e-12 * seq[15].norm());
    }

    #[test]
    fn psi_low_orders() {
        for &x in &[0.01, 0.5, 3.0, 20.0, 50.0] {
            let p = psi_sequence(1, x).unwrap();
            assert!((p[0] - x.sin()).abs() < 1e-14);
            assert!((p[1] - (x.sin() / x - x.cos())).abs() < 1e-14);
        }
        assert_eq!(psi_l0(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn psi_small_argument_power_law() {
        // ψ_l(x) ≈ x^{l+1}/(2l+1)!!
        let x = 1e-3;
        let p = psi_sequence(5, x).unwrap();
        let dfact = [1.0, 3.0, 15.0, 105.0, 945.0, 10395.0];
        for l in 0..=5 {
            let approx = x.powi(l as i32 + 1) / dfact[l];
            assert!((p[l] / approx - 1.0).abs() < 1e-5, "l={l}");
        }
    }

    #[test]
    fn riccati_y_low_orders() {
        let x = 2.3;
        let y = riccati_y_sequence(1, x).unwrap();
        assert!((y[0] + x.cos()).abs() < 1e-15);
        assert!((y[1] + x.cos() / x + x.sin()).abs() < 1e-15);
    }

    #[test]
    fn modified_i_closed_forms() {
        for &lam in &[0.1, 1.0, 4.0, -2.5] {
            let i0 = modified_spherical_bessel_i(0, lam).unwrap();
            assert!((i0 - lam.sinh() / lam).abs() < 1e-14 * i0.abs());
        }
        assert_eq!(modified_spherical_bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(modified_spherical_bessel_i(3, 0.0).unwrap(), 0.0);
    }

    /// Power series `i_l(λ) = Σ_k (λ/2)^{2k+l} · √π / (2 k! Γ(k+l+3/2))`.
    fn i_series(l: usize, lam: f64) -> f64 {
        let mut term = lam.powi(l as i32);
        let mut df = 1.0;
        for j in 0..=l {
            df *= (2 * j + 1) as f64;
        }
        term /= df;
        let mut sum = 0.0;
        for k in 0..60 {
            sum += term;
            let kf = (k + 1) as f64;
            term *= lam * lam / 2.0 / (kf * (2.0 * (l as f64 + kf) + 1.0));
        }
        sum
    }

    #[test]
    fn modified_i_matches_power_series() {
        // frozen from the series: i_2(1) = 0.0715628701294745
        let v = modified_spherical_bessel_i(2, 1.0).unwrap();
        assert!((v - 0.071_562_870_129_474_5).abs() < 1e-14);
        for &lam in &[0.3, 2.0, 7.0, 15.0] {
            let seq = modified_spherical_bessel_i_sequence(12, lam).unwrap();
            for (l, got) in seq.iter().enumerate() {
                let want = i_series(l, lam);
                assert!((got - want).abs() <= 1e-12 * want.abs(), "l={l} λ={lam}");
            }
        }
    }

    #[test]
    fn modified_i_large_argument_normalisation() {
        let lam: f64 = 100.0;
        let seq = modified_spherical_bessel_i_sequence(3, lam).unwrap();
        let i0 = lam.sinh() / lam;
        assert!((seq[0] / i0 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn chi_half_imag_matches_elementary_and_hankel() {
        // half-integer Bessel orders use the sum; check j=0 gives e^{ix}
        let x = 4.2;
        let v = chi_half_imag(HalfIntegerOrder::half(0), 3, x).unwrap();
        assert!((v[0] - Complex64::from_polar(1.0, x)).norm() < 1e-15);
        assert!((v[2] - chi(2, c(0.0, -x)).unwrap()).norm() < 1e-13);
    }
}
