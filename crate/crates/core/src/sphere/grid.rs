use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Direction, MultipoleRep};
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::specfun::normalized_assoc_legendre;

/// Gauss–Legendre nodes in `cos θ` times a uniform azimuth grid.
///
/// Exact for spherical polynomials of degree `≤ 2 L` when the rule has at
/// least `L + 1` nodes and `n_phi ≥ 2L + 1`.
#[derive(Debug, Clone)]
pub struct AngularGrid {
    cos_nodes: Vec<f64>,
    weights: Vec<f64>,
    n_phi: usize,
}

impl AngularGrid {
    pub fn new(gauss_order: usize, n_phi: usize) -> Self {
        let (cos_nodes, weights) = gauss_legendre(gauss_order.max(1));
        Self { cos_nodes, weights, n_phi: n_phi.max(1) }
    }

    /// Smallest grid exact for products of two degree-`l_max` functions.
    pub fn for_degree(l_max: usize) -> Self {
        Self::new(l_max + 1, 2 * l_max + 2)
    }

    pub fn gauss_order(&self) -> usize {
        self.cos_nodes.len()
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// Largest `L` such that degree-`2L` polynomials integrate exactly.
    pub fn exact_degree(&self) -> usize {
        let by_theta = self.cos_nodes.len().saturating_sub(1);
        let by_phi = self.n_phi.saturating_sub(1) / 2;
        by_theta.min(by_phi)
    }

    pub fn phi_at(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_phi as f64
    }

    /// `(direction, weight)` over every node.
    pub fn points(&self) -> impl Iterator<Item = (Direction, f64)> + '_ {
        let dphi = 2.0 * PI / self.n_phi as f64;
        self.cos_nodes.iter().zip(&self.weights).flat_map(move |(&c, &w)| {
            (0..self.n_phi).map(move |j| {
                let n = Direction::new(c.clamp(-1.0, 1.0).acos(), self.phi_at(j)).expect("grid node");
                (n, w * dphi)
            })
        })
    }

    pub(crate) fn rows(&self) -> impl IndexedParallelIterator<Item = (f64, f64)> + '_ {
        self.cos_nodes.par_iter().copied().zip(self.weights.par_iter().copied())
    }
}

/// `B_l^m = ∫ dΩ f(n) conj(Y_l^m(n))` by quadrature on `grid`.
///
/// Rows of the grid are processed in parallel; their partial coefficient
/// arrays are summed in row order so the result does not depend on the
/// thread count.
pub fn forward_transform<F>(f: F, l_max: usize, k: f64, grid: &AngularGrid) -> Result<MultipoleRep>
where
    F: Fn(&Direction) -> Complex64 + Sync,
{
    if grid.exact_degree() < l_max {
        return Err(Error::GridInsufficient {
            required: l_max,
            detail: format!(
                "{} Gauss nodes × {} azimuths resolve degree {} only",
                grid.gauss_order(),
                grid.n_phi(),
                grid.exact_degree()
            ),
        });
    }
    let n_phi = grid.n_phi;
    let dphi = 2.0 * PI / n_phi as f64;
    let size = (l_max + 1) * (l_max + 1);
    let partials: Vec<Vec<Complex64>> = grid
        .rows()
        .map(|(c, w)| {
            let c = c.clamp(-1.0, 1.0);
            let theta = c.acos();
            let samples: Vec<Complex64> = (0..n_phi)
                .map(|j| f(&Direction::new(theta, grid.phi_at(j)).expect("grid node")))
                .collect();
            // F_m = ∫ dφ f e^{-imφ} for |m| ≤ l_max
            let mut fourier = vec![Complex64::new(0.0, 0.0); 2 * l_max + 1];
            for (j, s) in samples.iter().enumerate() {
                let step = Complex64::from_polar(1.0, -grid.phi_at(j));
                let mut ph = Complex64::new(1.0, 0.0);
                fourier[l_max] += s;
                for m in 1..=l_max {
                    ph *= step;
                    fourier[l_max + m] += s * ph;
                    fourier[l_max - m] += s * ph.conj();
                }
            }
            let plm = normalized_assoc_legendre(l_max, c, (1.0 - c * c).max(0.0).sqrt());
            let mut row = vec![Complex64::new(0.0, 0.0); size];
            for l in 0..=l_max {
                for m in 0..=l {
                    let p = plm[l * (l + 1) / 2 + m] * w * dphi;
                    row[l * l + l + m] = fourier[l_max + m] * p;
                    if m > 0 {
                        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                        row[l * l + l - m] = fourier[l_max - m] * (p * sign);
                    }
                }
            }
            row
        })
        .collect();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); size];
    for row in &partials {
        for (acc, v) in coeffs.iter_mut().zip(row) {
            *acc += v;
        }
    }
    MultipoleRep::new(l_max, k, coeffs)
}
