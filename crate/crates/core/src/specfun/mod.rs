//! Special functions: Legendre and Gegenbauer polynomials, orthonormal
//! spherical harmonics, spherical Bessel/Riccati functions, the elementary
//! χ_l sums and integer/half-integer order Bessel and Hankel functions.

mod cylindrical;
mod legendre;
mod spherical;

pub use cylindrical::{bessel_jy, bessel_j_sequence, hankel1, hankel1_sequence};
pub use legendre::{
    chebyshev_t, gegenbauer_c, gegenbauer_sequence, legendre_p, legendre_sequence,
    spherical_harmonic, spherical_harmonics_all,
};
pub use spherical::{
    chi, chi_half_imag, chi_sequence, modified_spherical_bessel_i,
    modified_spherical_bessel_i_sequence, psi_l0, psi_sequence, riccati_y_sequence,
};
pub(crate) use legendre::normalized_assoc_legendre;
pub use spherical::psi_general_sequence;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree and order of a spherical harmonic `Y_l^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphericalHarmonicIndex {
    l: usize,
    m: i64,
}

impl SphericalHarmonicIndex {
    pub fn new(l: usize, m: i64) -> Result<Self> {
        if m.unsigned_abs() as usize > l {
            return Err(Error::Domain(format!("|m| = {} exceeds l = {l}", m.abs())));
        }
        Ok(Self { l, m })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Position in the packed `(l_max+1)²` coefficient layout, `l² + l + m`.
    pub fn packed(&self) -> usize {
        ((self.l * self.l + self.l) as i64 + self.m) as usize
    }

    /// Eigenvalue of the angular Laplacian on this mode.
    pub fn laplacian_eigenvalue(&self) -> f64 {
        (self.l * (self.l + 1)) as f64
    }
}

/// Order of a Bessel function stored as twice its value, so that integer and
/// half-integer orders are both exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfIntegerOrder {
    twice_value: u32,
}

impl HalfIntegerOrder {
    pub fn from_twice(twice_value: u32) -> Self {
        Self { twice_value }
    }

    pub fn integer(n: u32) -> Self {
        Self { twice_value: 2 * n }
    }

    /// The order `l + 1/2` of the spherical Bessel function of degree `l`.
    pub fn half(l: u32) -> Self {
        Self { twice_value: 2 * l + 1 }
    }

    pub fn twice(&self) -> u32 {
        self.twice_value
    }

    pub fn is_integer(&self) -> bool {
        self.twice_value.is_multiple_of(2)
    }

    pub fn value(&self) -> f64 {
        self.twice_value as f64 / 2.0
    }
}

/// ln(n!) exactly rounded for small n, via Stirling series otherwise.
pub(crate) fn ln_factorial(n: u64) -> f64 {
    if n <= 20 {
        return (factorial_u64(n) as f64).ln();
    }
    let x = n as f64 + 1.0;
    // Stirling series for ln Γ(x), x > 21
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

pub(crate) fn factorial_u64(n: u64) -> u64 {
    (1..=n).product()
}

/// Γ(x) for x a positive integer or half-integer given as twice its value.
pub fn gamma_half_integer(twice: u32) -> f64 {
    assert!(twice > 0, "Γ has a pole at 0");
    if twice.is_multiple_of(2) {
        factorial_u64((twice / 2 - 1) as u64) as f64
    } else {
        // Γ(n + 1/2) = (2n-1)!! √π / 2^n
        let n = (twice - 1) / 2;
        let mut g = std::f64::consts::PI.sqrt();
        for i in 0..n {
            g *= i as f64 + 0.5;
        }
        g
    }
}
