//! Functions on the unit sphere as truncated multipole series.
//!
//! The multipole coefficients `B_l^m` are the canonical representation: the
//! angular Laplacian `ℒ_n` acts diagonally on them with eigenvalue `l(l+1)`,
//! and the reflection `n ↦ −n` multiplies them by `(−1)^l`.

mod direction;
mod grid;
mod rep;

pub use direction::Direction;
pub use grid::{forward_transform, AngularGrid};
pub use rep::{CoeffJson, MultipoleRep, RepJson, DEFAULT_L_MAX};

pub(crate) use rep::escalate;
