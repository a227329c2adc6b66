use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_on;
use crate::specfun::{spherical_harmonic, SphericalHarmonicIndex};
use crate::sphere::{escalate, forward_transform, AngularGrid, Direction, MultipoleRep, DEFAULT_L_MAX};
use crate::vec3::{self, Vec3};

const REGISTRY_POINTS: usize = 20;
const REGISTRY_TOL: f64 = 1e-8;
const REGISTRY_NODES: usize = 64;

/// Polynomial factor multiplying a Gaussian term, in the shifted momentum `d = q − Q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairFactor {
    Plain,
    /// Solid harmonic `|d|^l Y_l^m(d̂)`.
    Harmonic(SphericalHarmonicIndex),
    /// `|d|²`.
    ShiftedSquare,
}

impl PairFactor {
    fn degree(&self) -> u32 {
        match self {
            PairFactor::Plain => 0,
            PairFactor::Harmonic(idx) => idx.l() as u32,
            PairFactor::ShiftedSquare => 2,
        }
    }
}

/// `Φ(q) = A · f(q − Q) · exp(−|q − Q|²/2σ²)` and its coordinate-space partner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTerm {
    pub amplitude: Complex64,
    pub center: Vec3,
    pub sigma: f64,
    pub factor: PairFactor,
}

fn solid_harmonic(idx: SphericalHarmonicIndex, v: &Vec3) -> Complex64 {
    let r = vec3::norm(v);
    if r == 0.0 {
        return if idx.l() == 0 {
            Complex64::new(0.5 / PI.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let n = Direction::from_vector(*v).expect("non-zero vector");
    spherical_harmonic(idx, &n) * r.powi(idx.l() as i32)
}

impl GaussianTerm {
    pub fn phi_q(&self, q: &Vec3) -> Complex64 {
        let d = vec3::sub(q, &self.center);
        let d2 = vec3::dot(&d, &d);
        let g = (-d2 / (2.0 * self.sigma * self.sigma)).exp();
        let f = match self.factor {
            PairFactor::Plain => Complex64::new(1.0, 0.0),
            PairFactor::Harmonic(idx) => solid_harmonic(idx, &d),
            PairFactor::ShiftedSquare => Complex64::new(d2, 0.0),
        };
        self.amplitude * f * g
    }

    /// `φ(x)` with `Φ(q) = ∫ d³x e^{iq·x} φ(x)`.
    pub fn phi_x(&self, x: &Vec3) -> Complex64 {
        let s2 = self.sigma * self.sigma;
        let r2 = vec3::dot(x, x);
        let base = (s2 / (2.0 * PI)).powf(1.5) * (-s2 * r2 / 2.0).exp();
        let wave = Complex64::from_polar(1.0, -vec3::dot(&self.center, x));
        let f = match self.factor {
            PairFactor::Plain => Complex64::new(1.0, 0.0),
            PairFactor::Harmonic(idx) => {
                let l = idx.l() as u32;
                Complex64::new(0.0, -1.0).powu(l) * s2.powi(l as i32) * solid_harmonic(idx, x)
            }
            PairFactor::ShiftedSquare => Complex64::new(3.0 * s2 - s2 * s2 * r2, 0.0),
        };
        self.amplitude * f * wave * base
    }

    /// Radius beyond which `|φ|` stays below `eps` times its scale.
    fn cutoff(&self, eps: f64) -> f64 {
        let d = self.degree() as f64;
        let envelope = |x: f64| x.powf(d) * (-x * x / 2.0).exp();
        let mut x = (2.0 * (1.0 / eps).ln()).sqrt().max(d.sqrt());
        while envelope(x) * (1.0 + 3.0 * d) >= eps {
            x += 0.05;
        }
        x / self.sigma
    }

    fn degree(&self) -> u32 {
        self.factor.degree()
    }
}

/// Sum of Gaussian terms with closed-form transforms in both spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPair {
    terms: Vec<GaussianTerm>,
}

impl FourierPair {
    pub fn new(terms: Vec<GaussianTerm>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &[GaussianTerm] {
        &self.terms
    }

    pub fn phi_q(&self, q: &Vec3) -> Complex64 {
        self.terms.iter().map(|t| t.phi_q(q)).sum()
    }

    pub fn phi_x(&self, x: &Vec3) -> Complex64 {
        self.terms.iter().map(|t| t.phi_x(x)).sum()
    }

    /// `Φ(−kn)`.
    pub fn shell_value(&self, k: f64, n: &Direction) -> Complex64 {
        self.phi_q(&vec3::scale(&n.to_vector(), -k))
    }

    /// Radius outside of which the coordinate profile is below `eps` of its scale.
    pub fn cutoff_radius(&self, eps: f64) -> f64 {
        self.terms.iter().map(|t| t.cutoff(eps)).fold(0.0, f64::max)
    }

    /// `true` when every term is centred at the origin without angular factor.
    pub fn is_spherically_symmetric(&self) -> bool {
        self.terms.iter().all(|t| {
            vec3::norm(&t.center) == 0.0 && !matches!(t.factor, PairFactor::Harmonic(_))
        })
    }

    /// Multipole representation of `n ↦ Φ(−kn)` by quadrature.
    pub fn shell_rep(&self, k: f64) -> Result<MultipoleRep> {
        escalate(DEFAULT_L_MAX, |l_max| {
            let grid = AngularGrid::for_degree(2 * l_max);
            forward_transform(|n| self.shell_value(k, n), l_max, k, &grid)
        })
    }

    /// Numerical `∫ d³x e^{iq·x} φ(x)` on a tensor Gauss–Legendre cube.
    pub fn transform_numerically(&self, qs: &[Vec3]) -> Vec<Complex64> {
        let half = self.cutoff_radius(1e-16);
        let (x, w) = gauss_legendre_on(REGISTRY_NODES, -half, half);
        let n = x.len();
        let samples: Vec<Complex64> = (0..n * n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j, l) = (idx / (n * n), (idx / n) % n, idx % n);
                self.phi_x(&[x[i], x[j], x[l]]) * (w[i] * w[j] * w[l])
            })
            .collect();
        qs.iter()
            .map(|q| {
                let ph: Vec<[Complex64; 3]> = x
                    .iter()
                    .map(|&t| {
                        [
                            Complex64::from_polar(1.0, q[0] * t),
                            Complex64::from_polar(1.0, q[1] * t),
                            Complex64::from_polar(1.0, q[2] * t),
                        ]
                    })
                    .collect();
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    for j in 0..n {
                        let pij = ph[i][0] * ph[j][1];
                        let row = &samples[(i * n + j) * n..(i * n + j + 1) * n];
                        let inner: Complex64 = row.iter().zip(&ph).map(|(s, p)| s * p[2]).sum();
                        acc += pij * inner;
                    }
                }
                acc
            })
            .collect()
    }

    /// Checks the closed-form transform at `q` points; returns the worst
    /// scaled deviation.
    pub fn verify_at(&self, qs: &[Vec3], tol: f64) -> Result<f64> {
        let numeric = self.transform_numerically(qs);
        let scale: f64 = self
            .terms
            .iter()
            .map(|t| t.amplitude.norm() * t.sigma.powi(t.degree() as i32))
            .sum();
        let mut worst: f64 = 0.0;
        for (q, num) in qs.iter().zip(&numeric) {
            let exact = self.phi_q(q);
            let dev = (num - exact).norm() / (exact.norm() + scale);
            worst = worst.max(dev);
            if dev > tol {
                return Err(Error::Inconsistency(format!(
                    "Fourier pair fails at q = {q:?}: closed form {exact}, quadrature {num}"
                )));
            }
        }
        Ok(worst)
    }

    /// Registry check at twenty quasi-random momenta around the term centres.
    pub fn verify(&self) -> Result<f64> {
        self.verify_at(&self.sample_momenta(REGISTRY_POINTS), REGISTRY_TOL)
    }

    /// Low-discrepancy momenta spread over `±2.5σ` of the mean centre.
    pub fn sample_momenta(&self, count: usize) -> Vec<Vec3> {
        let m = self.terms.len().max(1) as f64;
        let centre = self.terms.iter().fold([0.0; 3], |acc, t| vec3::add(&acc, &vec3::scale(&t.center, 1.0 / m)));
        let sigma = self.terms.iter().map(|t| t.sigma).fold(f64::INFINITY, f64::min);
        // additive recurrence with the plastic-number generalisation of the golden ratio
        let g = 1.220_744_084_605_759_5_f64;
        let alpha = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
        (1..=count)
            .map(|i| {
                let mut q = centre;
                for (c, a) in q.iter_mut().zip(alpha) {
                    let u = (0.5 + a * i as f64).fract();
                    *c += 2.5 * sigma * (2.0 * u - 1.0);
                }
                q
            })
            .collect()
    }
}
