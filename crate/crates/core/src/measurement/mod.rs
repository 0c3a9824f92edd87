//! Local field measurements before `t = 0` and the resulting outcome statistics.
//!
//! A measurement of the electric field smeared with a real function `ζ(t)`
//! supported on `t < 0` behaves like a harmonic-oscillator quadrature. Its
//! outcome distribution for a target photon, compared with the vacuum one,
//! limits how close any strictly localized state can get to the target.

mod hermite;
mod smearing;

pub use hermite::{
    hermite_envelope_on_interval, hermite_integral_bound_check, hermite_integral_limit,
    hermite_interval_integrals, hermite_local_maxima, hermite_psi, hermite_psi_all,
    indicator_distance, projector_density_n_photon, simpson, HermiteTable,
    HERMITE_BOUND_SLACK, INDICATOR_HALF_WIDTH, SIMPSON_INTERVALS,
};
pub use smearing::{
    build_smearing, c_xi_abs2_from_tail, canonical_phase, optimal_phase, spectral_overlap_c_xi,
    SmearingResult,
};

