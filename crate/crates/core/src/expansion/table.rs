use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::coeff_closed;
use crate::error::{Error, Result};
use crate::specfun::spherical_harmonics_all;
use crate::sphere::{Direction, MultipoleRep};

/// `C_s` is reported only where `|Φ(−kn)|` exceeds this fraction of the RMS of `Φ`.
const QUOTIENT_GUARD: f64 = 1e-13;
/// Relative disagreement tolerated between the two `Υ_n` sums.
const UPSILON_AGREEMENT: f64 = 1e-10;
const REAL_TOL: f64 = 1e-12;

/// Asymptotic coefficients at one direction, stored as products with `Φ(−kn)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    k: f64,
    direction: Direction,
    phi_value: Complex64,
    phi_rms: f64,
    real_valued: bool,
    phi_c: Vec<Complex64>,
    /// `|Φ|² D_ζ` for `ζ = 0 … s_max`, the general modulus coefficients.
    modulus: Vec<f64>,
    /// `Φ² Υ_n` for `n = 1 … n_max`; empty for complex `Φ`.
    phi2_upsilon: Vec<f64>,
}

impl CoeffTable {
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn phi_value(&self) -> Complex64 {
        self.phi_value
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn s_max(&self) -> usize {
        self.phi_c.len() - 1
    }

    pub fn n_max(&self) -> usize {
        self.phi2_upsilon.len()
    }

    /// `Φ(−kn) C_s`; entry 0 is `Φ(−kn)`.
    pub fn phi_c(&self) -> &[Complex64] {
        &self.phi_c
    }

    fn quotient_defined(&self) -> bool {
        self.phi_value.norm() > QUOTIENT_GUARD * self.phi_rms
    }

    /// Dimensionless `C_s`, unless `Φ(−kn)` vanishes at this direction.
    pub fn c(&self, s: usize) -> Option<Complex64> {
        if !self.quotient_defined() {
            return None;
        }
        self.phi_c.get(s).map(|p| p / self.phi_value)
    }

    /// `Φ² Υ_n`, `n ≥ 1`.
    pub fn phi2_upsilon(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.phi2_upsilon.get(i).copied())
    }

    /// Dimensionless `Υ_n`, `n ≥ 1`.
    pub fn upsilon(&self, n: usize) -> Option<f64> {
        if !self.quotient_defined() {
            return None;
        }
        let phi2 = self.phi_value.norm_sqr();
        self.phi2_upsilon(n).map(|v| v / phi2)
    }

    /// `|Φ|² D_ζ` with `(4πR)²|𝒥|² ∼ Σ_ζ |Φ|² D_ζ / (2kR)^ζ`.
    pub fn modulus_coeffs(&self) -> &[f64] {
        &self.modulus
    }

    pub fn to_json_value(&self) -> CoeffTableJson {
        CoeffTableJson {
            k: self.k,
            theta: self.direction.theta(),
            phi: self.direction.phi(),
            phi_value: [self.phi_value.re, self.phi_value.im],
            real_valued: self.real_valued,
            c_s: (0..=self.s_max())
                .map(|s| CoeffEntry {
                    s,
                    phi_c: [self.phi_c[s].re, self.phi_c[s].im],
                    c: self.c(s).map(|c| [c.re, c.im]),
                })
                .collect(),
            upsilon_n: (1..=self.n_max())
                .map(|n| UpsilonEntry {
                    n,
                    phi2_upsilon: self.phi2_upsilon[n - 1],
                    upsilon: self.upsilon(n),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("table serialises")
    }

    /// Two CSV blocks, `s,phi_c_re,phi_c_im,c_re,c_im` then
    /// `n,phi2_upsilon,upsilon`, separated by a blank line. Floats use `fmt`;
    /// undefined quotients print as `nan`.
    pub fn to_csv_with(&self, fmt: impl Fn(f64) -> String) -> String {
        let nan = || "nan".to_string();
        let mut out = String::from("s,phi_c_re,phi_c_im,c_re,c_im\n");
        for (s, p) in self.phi_c.iter().enumerate() {
            let (c_re, c_im) = self.c(s).map_or_else(|| (nan(), nan()), |c| (fmt(c.re), fmt(c.im)));
            let _ = writeln!(out, "{s},{},{},{c_re},{c_im}", fmt(p.re), fmt(p.im));
        }
        out.push_str("\nn,phi2_upsilon,upsilon\n");
        for n in 1..=self.n_max() {
            let p2u = self.phi2_upsilon(n).map_or_else(nan, &fmt);
            let v = self.upsilon(n).map_or_else(nan, &fmt);
            let _ = writeln!(out, "{n},{p2u},{v}");
        }
        out
    }
}

/// JSON form of a [`CoeffTable`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffTableJson {
    pub k: f64,
    pub theta: f64,
    pub phi: f64,
    pub phi_value: [f64; 2],
    pub real_valued: bool,
    pub c_s: Vec<CoeffEntry>,
    pub upsilon_n: Vec<UpsilonEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub s: usize,
    pub phi_c: [f64; 2],
    pub c: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UpsilonEntry {
    pub n: usize,
    pub phi2_upsilon: f64,
    pub upsilon: Option<f64>,
}

/// Evaluates `Φ·C_s` at `n` for `s ≤ s_max` and `Φ²Υ_n` for `n ≤ n_max`.
///
/// For real `Φ` the two sums for `Υ_n` are both evaluated and must agree.
pub fn build_coeff_table(
    rep: &MultipoleRep,
    n: &Direction,
    s_max: usize,
    n_max: usize,
) -> Result<CoeffTable> {
    if 2 * n_max > s_max {
        return Err(Error::Domain(format!("Υ_{n_max} needs s_max ≥ {}, got {s_max}", 2 * n_max)));
    }
    let y = spherical_harmonics_all(rep.l_max(), n);
    let dot = |r: &MultipoleRep| -> Complex64 {
        r.coeffs().iter().zip(&y).rev().map(|(b, y)| b * y).sum()
    };
    let phi_c: Vec<Complex64> = coeff_closed(rep, s_max).iter().map(dot).collect();
    let real_valued = rep.is_real_valued(REAL_TOL);

    let modulus = (0..=s_max)
        .map(|zeta| {
            // i^ζ Σ_s (−1)^{ζ−s} p_s conj(p_{ζ−s})
            let sum: Complex64 = (0..=zeta)
                .map(|s| phi_c[s] * phi_c[zeta - s].conj() * sign(zeta - s))
                .sum();
            (Complex64::i().powu(zeta as u32) * sum).re
        })
        .collect();

    let phi2_upsilon = if real_valued {
        let p: Vec<f64> = phi_c.iter().map(|c| c.re).collect();
        (1..=n_max).map(|m| upsilon_checked(&p, m)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };

    Ok(CoeffTable {
        k: rep.k(),
        direction: *n,
        phi_value: phi_c[0],
        phi_rms: rep.norm() / (4.0 * PI).sqrt(),
        real_valued,
        phi_c,
        modulus,
        phi2_upsilon,
    })
}

fn sign(p: usize) -> f64 {
    if p.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `Φ²Υ_n` by the full alternating sum and by the folded sum.
fn upsilon_checked(p: &[f64], n: usize) -> Result<f64> {
    let full: f64 = sign(n) * (0..=2 * n).map(|s| sign(s) * p[s] * p[2 * n - s]).sum::<f64>();
    let folded: f64 =
        2.0 * sign(n) * (0..=n).map(|s| sign(s) * p[s] * p[2 * n - s]).sum::<f64>() - p[n] * p[n];
    let scale: f64 = (0..=2 * n).map(|s| (p[s] * p[2 * n - s]).abs()).sum();
    if (full - folded).abs() > UPSILON_AGREEMENT * scale {
        return Err(Error::Inconsistency(format!(
            "Υ_{n}: alternating sum {full:e} vs folded sum {folded:e}"
        )));
    }
    Ok(full)
}

/// Table for `𝒥(−R n)`: the same construction on the reflected function.
pub fn reflected_table(
    rep: &MultipoleRep,
    n: &Direction,
    s_max: usize,
    n_max: usize,
) -> Result<CoeffTable> {
    build_coeff_table(&rep.reflect(), n, s_max, n_max)
}
