//! Far-field asymptotic series of the Green-function integral
//! `𝒥(R n) ∼ e^{ikR}/(4πR) Σ_s Φ(−kn) C_s(k,n) / (−2ikR)^s`.
//!
//! Every coefficient is built in multipole space, where the operator product
//! defining `Φ·C_s` acts on mode `l` as the scalar `(l+s)!/(s!(l−s)!)`.

mod coeffs;
mod series;
mod table;

pub use coeffs::{coeff_closed, coeff_recurrence, mode_factor, mode_product_exact};
pub use series::{
    eval_series, eval_series_squared, modulus_series, optimal_truncation, resummed_multipole,
    SeriesEval,
};
pub use table::{build_coeff_table, reflected_table, CoeffTable, CoeffTableJson};
