//! Far-field asymptotics of the Helmholtz Green-function integral
//! `𝒥(R) = ∫ d³q/(2π)³ e^{−iq·R} Φ(q)/(q² − k² − i0)` to all orders in `1/R`.

// `!(x > 0.0)` guards reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expansion;
pub mod model;
pub mod ndim;
pub mod oracle;
pub mod packets;
pub mod quadrature;
pub mod specfun;
pub mod sphere;
pub mod vec3;

pub use error::{Error, Result};
pub use expansion::{CoeffTable, SeriesEval};
pub use model::{ModelSpec, PhiModel};
pub use sphere::{Direction, MultipoleRep};
