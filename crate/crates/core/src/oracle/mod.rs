//! Independent ground truth for the far-field series: direct quadrature of the
//! coordinate-space integral for Gaussian Fourier pairs, finite-difference
//! checks of the Green function, convergence-rate fits and tail bounds.

mod checks;
mod direct;
mod pair;

pub use checks::{
    convergence_slope, envelope_constant, greens_residual, greens_residual_radial, tail_bounds,
    SlopeFit,
};
pub use direct::{eval_j_direct, radial_tail_j, OracleValue, QuadratureSpec};
pub use pair::{FourierPair, GaussianTerm, PairFactor};
