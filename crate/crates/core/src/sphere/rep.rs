use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Direction;
use crate::error::{Error, Result};
use crate::specfun::{spherical_harmonics_all, SphericalHarmonicIndex};

pub const DEFAULT_L_MAX: usize = 64;
/// Escalation stops once the top ten degrees hold less than this fraction of
/// the coefficient norm.
const TAIL_FRACTION: f64 = 1e-12;
const MAX_ESCALATED_L: usize = 512;
/// Degrees whose norm is within this factor of the tail plateau are treated
/// as roundoff.
const PLATEAU_MARGIN: f64 = 4.0;

/// Truncated multipole series `Σ_{l ≤ l_max} Σ_m B_l^m Y_l^m(n)` of the
/// sphere function `n ↦ Φ(−kn)`, tagged with the on-shell radius `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipoleRep {
    l_max: usize,
    k: f64,
    coeffs: Vec<Complex64>,
}

impl MultipoleRep {
    pub fn new(l_max: usize, k: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        let want = (l_max + 1) * (l_max + 1);
        if coeffs.len() != want {
            return Err(Error::InvalidModel(format!(
                "multipole array has {} entries, l_max = {l_max} needs {want}",
                coeffs.len()
            )));
        }
        Ok(Self { l_max, k, coeffs })
    }

    pub fn zeros(l_max: usize, k: f64) -> Self {
        Self { l_max, k, coeffs: vec![Complex64::new(0.0, 0.0); (l_max + 1) * (l_max + 1)] }
    }

    /// A single harmonic `value · Y_l^m`.
    pub fn pure_mode(idx: SphericalHarmonicIndex, value: Complex64, k: f64) -> Self {
        let mut rep = Self::zeros(idx.l(), k);
        rep.coeffs[idx.packed()] = value;
        rep
    }

    /// The constant function `c`.
    pub fn constant(c: Complex64, k: f64) -> Self {
        let norm = (4.0 * std::f64::consts::PI).sqrt();
        Self { l_max: 0, k, coeffs: vec![c * norm] }
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize, m: i64) -> Complex64 {
        if l > self.l_max || m.unsigned_abs() as usize > l {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[((l * l + l) as i64 + m) as usize]
    }

    pub fn set(&mut self, l: usize, m: i64, value: Complex64) -> Result<()> {
        let idx = SphericalHarmonicIndex::new(l, m)?;
        if l > self.l_max {
            return Err(Error::Domain(format!("degree {l} above l_max {}", self.l_max)));
        }
        self.coeffs[idx.packed()] = value;
        Ok(())
    }

    /// Iterates `(l, m, B_l^m)`.
    pub fn modes(&self) -> impl Iterator<Item = (usize, i64, Complex64)> + '_ {
        (0..=self.l_max).flat_map(move |l| {
            (-(l as i64)..=l as i64).map(move |m| (l, m, self.coeffs[((l * l + l) as i64 + m) as usize]))
        })
    }

    /// L2 norm on the sphere, `(Σ |B_l^m|²)^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Highest degree carrying a coefficient above `tol · norm`.
    pub fn effective_degree(&self, tol: f64) -> usize {
        let cut = tol * self.norm();
        (0..=self.l_max)
            .rev()
            .find(|&l| (0..=2 * l).any(|i| self.coeffs[l * l + i].norm() > cut))
            .unwrap_or(0)
    }

    /// Multiplies every degree-`l` coefficient by `factor(l)`.
    pub fn scale_by_degree(&self, factor: impl Fn(usize) -> f64) -> Self {
        let mut out = self.clone();
        for l in 0..=self.l_max {
            let f = factor(l);
            for c in &mut out.coeffs[l * l..(l + 1) * (l + 1)] {
                *c *= f;
            }
        }
        out
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self { l_max: self.l_max, k: self.k, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// `self + s · other`, padding to the larger degree.
    pub fn add_scaled(&self, other: &Self, s: Complex64) -> Self {
        let l_max = self.l_max.max(other.l_max);
        let mut out = Self::zeros(l_max, self.k);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out.coeffs[i] += c * s;
        }
        out
    }

    /// Keeps degrees `≤ l_max` (or zero-pads up to it).
    pub fn resized(&self, l_max: usize) -> Self {
        let mut out = Self::zeros(l_max, self.k);
        let n = out.coeffs.len().min(self.coeffs.len());
        out.coeffs[..n].copy_from_slice(&self.coeffs[..n]);
        out
    }

    /// `Σ B_l^m Y_l^m(n)`.
    pub fn evaluate(&self, n: &Direction) -> Complex64 {
        let y = spherical_harmonics_all(self.l_max, n);
        // highest degree first: the tail is small for smooth functions
        self.coeffs.iter().zip(&y).rev().map(|(b, y)| b * y).sum()
    }

    /// `ℒ_n`: `B_l^m ↦ l(l+1) B_l^m`.
    pub fn apply_angular_laplacian(&self) -> Self {
        self.scale_by_degree(|l| (l * (l + 1)) as f64)
    }

    /// `n ↦ −n`: `B_l^m ↦ (−1)^l B_l^m`.
    pub fn reflect(&self) -> Self {
        self.scale_by_degree(|l| if l % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// `B_l^{−m} = (−1)^m conj(B_l^m)` for every mode, i.e. the function is real.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        let cut = tol * self.norm().max(f64::MIN_POSITIVE);
        self.modes().filter(|&(_, m, _)| m > 0).all(|(l, m, b)| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            (self.coeff(l, -m) - b.conj() * sign).norm() <= cut
        }) && (0..=self.l_max).all(|l| self.coeff(l, 0).im.abs() <= cut)
    }

    /// Inner product `Σ conj(a) b`, the sphere L2 product.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let l_max = self.l_max.min(other.l_max);
        let n = (l_max + 1) * (l_max + 1);
        self.coeffs[..n].iter().zip(&other.coeffs[..n]).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RepJson::from(self)).expect("rep serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RepJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))?;
        Self::try_from(raw)
    }
}

/// Wire form `{"l_max": L, "k": k, "coeffs": [{"l","m","re","im"}, …]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub l_max: usize,
    pub k: f64,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub l: usize,
    pub m: i64,
    pub re: f64,
    pub im: f64,
}

impl From<&MultipoleRep> for RepJson {
    fn from(rep: &MultipoleRep) -> Self {
        RepJson {
            l_max: rep.l_max,
            k: rep.k,
            coeffs: rep.modes().map(|(l, m, c)| CoeffJson { l, m, re: c.re, im: c.im }).collect(),
        }
    }
}

impl TryFrom<RepJson> for MultipoleRep {
    type Error = Error;

    fn try_from(raw: RepJson) -> Result<Self> {
        let mut rep = MultipoleRep::zeros(raw.l_max, raw.k);
        for c in raw.coeffs {
            if c.l > raw.l_max {
                return Err(Error::InvalidModel(format!(
                    "coefficient degree {} above l_max {}",
                    c.l, raw.l_max
                )));
            }
            rep.set(c.l, c.m, Complex64::new(c.re, c.im))
                .map_err(|e| Error::InvalidModel(e.to_string()))?;
        }
        Ok(rep)
    }
}

/// Rebuilds a rep at doubling `l_max` until the ten highest degrees carry less
/// than `1e-12` of the total norm.
/// Drops the roundoff plateau of a converged representation, which the
/// `l^{2s}` growth of the order-`s` operators would otherwise amplify.
fn trim_plateau(rep: MultipoleRep) -> MultipoleRep {
    let l_max = rep.l_max;
    let degree_norm = |l: usize| {
        rep.coeffs[l * l..(l + 1) * (l + 1)].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    };
    let plateau = (l_max - 8..=l_max).map(degree_norm).fold(0.0, f64::max);
    let cut = PLATEAU_MARGIN * plateau;
    let keep = (0..=l_max).rev().find(|&l| degree_norm(l) > cut).unwrap_or(0);
    rep.resized(keep)
}

pub(crate) fn escalate(
    start: usize,
    mut build: impl FnMut(usize) -> Result<MultipoleRep>,
) -> Result<MultipoleRep> {
    let mut l_max = start.max(10);
    loop {
        let rep = build(l_max)?;
        let total = rep.norm();
        let tail: f64 = rep.coeffs[(l_max - 9) * (l_max - 9)..]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        if total == 0.0 || tail <= TAIL_FRACTION * total {
            return Ok(trim_plateau(rep));
        }
        if l_max >= MAX_ESCALATED_L {
            return Err(Error::NonConvergence(format!(
                "multipole tail {:.3e} of norm still above threshold at l_max = {l_max}",
                tail / total
            )));
        }
        l_max = (2 * l_max).min(MAX_ESCALATED_L);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(l: usize, m: i64) -> SphericalHarmonicIndex {
        SphericalHarmonicIndex::new(l, m).unwrap()
    }

    #[test]
    fn constant_evaluates_everywhere() {
        let c = Complex64::new(1.5, -0.25);
        let rep = MultipoleRep::constant(c, 1.0);
        for i in 0..10 {
            let n = Direction::new(0.3 * i as f64, 0.7 * i as f64).unwrap();
            assert!((rep.evaluate(&n) - c).norm() < 1e-15);
        }
    }

    #[test]
    fn laplacian_eigenvalues() {
        let rep = MultipoleRep::pure_mode(idx(3, -2), Complex64::new(1.0, 0.0), 1.0);
        let out = rep.apply_angular_laplacian();
        assert_eq!(out.coeff(3, -2), Complex64::new(12.0, 0.0));
        let c = MultipoleRep::constant(Complex64::new(2.0, 0.0), 1.0);
        assert_eq!(c.apply_angular_laplacian().norm(), 0.0);
    }

    #[test]
    fn laplacian_of_cos_theta() {
        // ξ = ẑ·n = √(4π/3) Y_1^0 and ℒ ξ = 2ξ
        let xi = MultipoleRep::pure_mode(idx(1, 0), Complex64::new((4.0 * std::f64::consts::PI / 3.0).sqrt(), 0.0), 1.0);
        let lx = xi.apply_angular_laplacian();
        let n = Direction::new(0.9, 0.2).unwrap();
        assert!((lx.evaluate(&n) - 2.0 * n.cos_theta()).norm() < 1e-14);
    }

    #[test]
    fn reflection_examples() {
        let c = MultipoleRep::constant(Complex64::new(2.0, 0.0), 1.0);
        assert_eq!(c.reflect(), c);
        let xi = MultipoleRep::pure_mode(idx(1, 0), Complex64::new(1.0, 0.0), 1.0);
        assert_eq!(xi.reflect().coeff(1, 0), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let mut rep = MultipoleRep::zeros(2, 1.5);
        rep.set(2, -1, Complex64::new(0.5, 0.25)).unwrap();
        rep.set(0, 0, Complex64::new(1.0, 0.0)).unwrap();
        let back = MultipoleRep::from_json(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        let bad = r#"{"l_max": 1, "k": 1.0, "coeffs": [{"l": 2, "m": 0, "re": 1.0, "im": 0.0}]}"#;
        assert!(MultipoleRep::from_json(bad).is_err());
        let bad_m = r#"{"l_max": 2, "k": 1.0, "coeffs": [{"l": 1, "m": 2, "re": 1.0, "im": 0.0}]}"#;
        assert!(MultipoleRep::from_json(bad_m).is_err());
    }

    #[test]
    fn real_valued_symmetry() {
        let mut rep = MultipoleRep::zeros(2, 1.0);
        rep.set(2, 1, Complex64::new(0.3, 0.4)).unwrap();
        rep.set(2, -1, Complex64::new(-0.3, 0.4)).unwrap();
        assert!(rep.is_real_valued(1e-14));
        rep.set(0, 0, Complex64::new(0.0, 1.0)).unwrap();
        assert!(!rep.is_real_valued(1e-14));
    }

    #[test]
    fn new_checks_length() {
        assert!(MultipoleRep::new(2, 1.0, vec![Complex64::new(0.0, 0.0); 8]).is_err());
    }
}
