//! Wave-packet physics: the covariant momentum-space packet, the overlap
//! function of a one-packet source, closed-form angular operators on
//! exponential profiles, sign regions of `Υ₁`, and the deficit length `ϱ₀`.

mod angular;
mod deficit;
mod overlap;
mod regions;
mod wavepacket;

pub use angular::{
    c1_c2_xi, c1_c2_zeta, moment_chain_holds, product_rule_check, upsilon1_xi, ExpFactor,
    ZetaCoefficients, ZetaMoments,
};
pub use deficit::{
    deficit_rho0, gaussian_averaged_upsilon1, in_validity_window, rho0_from_upsilon, Deficit,
    SuppressionPoint, HBAR_C_EV_M,
};
pub use overlap::{build_overlap, OverlapInputs, OverlapParams};
pub use regions::{negative_upsilon_region, ThetaIntervals};
pub use wavepacket::{
    aleph_large_tau_ln, minkowski, nonrel_gaussian_check, on_shell, packet_log_momentum,
    packet_momentum, FourVector, WavePacketParams,
};
