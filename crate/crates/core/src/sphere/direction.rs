use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unit vector `n = (sin θ cos φ, sin θ sin φ, cos θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    /// Colatitude `theta ∈ [0, π]`; any finite azimuth, wrapped to `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() || !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain(format!("invalid direction θ={theta}, φ={phi}")));
        }
        Ok(Self { theta, phi: phi.rem_euclid(2.0 * PI) })
    }

    pub fn z_axis() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    /// Normalises `v`; fails for the zero vector.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain("direction from zero or non-finite vector".into()));
        }
        let c = (v[2] / r).clamp(-1.0, 1.0);
        let phi = v[1].atan2(v[0]);
        Self::new(c.acos(), phi)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cos_theta(&self) -> f64 {
        self.theta.cos()
    }

    pub fn to_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `−n`.
    pub fn antipode(&self) -> Self {
        Self { theta: PI - self.theta, phi: (self.phi + PI).rem_euclid(2.0 * PI) }
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        let a = self.to_vector();
        let b = other.to_vector();
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// `n·v` for an arbitrary 3-vector.
    pub fn dot_vec(&self, v: &[f64; 3]) -> f64 {
        let a = self.to_vector();
        a[0] * v[0] + a[1] * v[1] + a[2] * v[2]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_norm() {
        for i in 0..50 {
            let n = Direction::new(i as f64 * 0.0631, i as f64 * 0.377).unwrap();
            let v = n.to_vector();
            let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
            assert!((r2 - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn vector_round_trip() {
        let n = Direction::from_vector([1.0, -2.0, 0.5]).unwrap();
        let v = n.to_vector();
        let r = (1.0f64 + 4.0 + 0.25).sqrt();
        assert!((v[0] - 1.0 / r).abs() < 1e-15);
        assert!((v[1] + 2.0 / r).abs() < 1e-15);
        assert!((v[2] - 0.5 / r).abs() < 1e-15);
    }

    #[test]
    fn antipode_negates() {
        let n = Direction::new(0.4, 5.9).unwrap();
        let a = n.antipode().to_vector();
        let v = n.to_vector();
        for i in 0..3 {
            assert!((a[i] + v[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_colatitude() {
        assert!(Direction::new(-0.1, 0.0).is_err());
        assert!(Direction::new(4.0, 0.0).is_err());
        assert!(Direction::from_vector([0.0; 3]).is_err());
    }
}
