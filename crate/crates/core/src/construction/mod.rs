//! Construction of the strictly localized near-photon state from a causal seed.
//!
//! Given a causal pulse `g(t)` with spectrum `G(ω)`, the negative-frequency
//! content is first reduced by `G̃ = G − βG*(−ω)`; the remaining positive and
//! (mirrored) negative parts define two orthonormal pulse modes `ξ₁, ξ₂` and a
//! two-mode squeezing strength `γ`, from which the state and its fidelity
//! follow in closed form.

mod fidelity;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{
    fourier_forward, negative_frequency_weight, SampledSignal, Spectrum, LOW_FREQUENCY_WARN,
};

pub use fidelity::{
    closed_form_fidelity, closed_form_fidelity_n, polylog_neg_half, DEGENERATE_ETA_TILDE,
};

/// Seeds must vanish for `t < 0` to this fraction of their peak.
pub const CAUSALITY_TOL: f64 = 1e-12;

/// Seeds with `η` this close to 1/2 are infeasible; a real seed lands here through rounding.
pub const INFEASIBLE_MARGIN: f64 = 1e-12;

/// Allowed disagreement between the direct and the relation value of η̃.
pub const ETA_TILDE_RELATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub overlap_i: Complex64,
    pub beta: Complex64,
    pub j_const: f64,
    pub eta: f64,
    /// Negative-frequency fraction of `G̃`, from the direct sum.
    pub eta_tilde: f64,
    /// The same quantity from `η − (1−J)(1−2η)/(2J)`.
    pub eta_tilde_relation: f64,
    pub gamma: f64,
    /// `G̃` scaled so that its positive-frequency part has unit norm.
    pub g_tilde: Spectrum,
    pub xi1: Spectrum,
    pub xi2: Spectrum,
    pub fidelity_f: f64,
    /// Set when η̃ is below [`DEGENERATE_ETA_TILDE`]; `ξ₂` is then zero and `F = 1`.
    pub degenerate: bool,
    /// Set when `Σ_{ω>0}|G|²/ω` exceeds [`LOW_FREQUENCY_WARN`].
    pub low_frequency_warning: bool,
}

/// `I = ∫₀^∞ G(ω)G(−ω) dω`.
pub fn overlap_integral(g_spec: &Spectrum) -> Complex64 {
    let grid = g_spec.grid();
    let s: Complex64 = (0..grid.n_samples())
        .filter(|&j| grid.omega(j) > 0.0)
        .map(|j| g_spec.values()[j] * g_spec.at_mirror(j))
        .sum();
    s * grid.dw()
}

/// `η̃ = η − (1−J)(1−2η)/(2J)`.
pub fn eta_tilde_from_relation(eta: f64, j_const: f64) -> f64 {
    eta - (1.0 - j_const) * (1.0 - 2.0 * eta) / (2.0 * j_const)
}

/// Squeezing strength with `tanh γ = √(η̃/(1−η̃))`.
pub fn gamma_from_eta_tilde(eta_tilde: f64) -> f64 {
    (eta_tilde / (1.0 - eta_tilde)).sqrt().atanh()
}

/// Inverse of [`gamma_from_eta_tilde`].
pub fn eta_tilde_from_gamma(gamma: f64) -> f64 {
    let t2 = gamma.tanh().powi(2);
    t2 / (1.0 + t2)
}

pub fn construct_localized_state(g: &SampledSignal) -> Result<ConstructionResult> {
    g.require_normalized()?;
    let peak = g.peak_abs();
    let tail = g.max_abs_negative();
    if tail > CAUSALITY_TOL * peak {
        return Err(Error::Precondition(format!(
            "seed is not causal: |g(t<0)| reaches {:.3e} of its peak",
            tail / peak
        )));
    }
    let big_g = fourier_forward(g);
    let eta = negative_frequency_weight(&big_g)?;
    if eta >= 0.5 - INFEASIBLE_MARGIN {
        return Err(Error::InfeasibleSeed { eta });
    }
    let low_frequency_warning = big_g.low_frequency_indicator() > LOW_FREQUENCY_WARN;

    let overlap_i = overlap_integral(&big_g);
    let j_const = (1.0 - 4.0 * overlap_i.norm_sqr()).max(0.0).sqrt();
    let beta = 2.0 * overlap_i / (1.0 + j_const);

    let grid = *big_g.grid();
    let raw = Spectrum::new(
        grid,
        (0..grid.n_samples())
            .map(|j| big_g.values()[j] - beta * big_g.at_mirror(j).conj())
            .collect(),
    )?;
    let total = raw.norm_sqr();
    let negative = raw.negative_weight_raw();
    let eta_tilde = negative / total;
    let eta_tilde_relation = eta_tilde_from_relation(eta, j_const);
    if (eta_tilde - eta_tilde_relation).abs() > ETA_TILDE_RELATION_TOL {
        return Err(Error::Consistency(format!(
            "eta_tilde {eta_tilde:.12} (direct) vs {eta_tilde_relation:.12} (relation)"
        )));
    }

    let positive_norm = (total - negative).sqrt();
    let g_tilde = raw.scaled(Complex64::new(1.0 / positive_norm, 0.0));
    let xi1 = g_tilde.positive_part();

    let degenerate = eta_tilde < DEGENERATE_ETA_TILDE;
    let xi2 = if degenerate {
        Spectrum::zeros(grid)
    } else {
        let c = ((1.0 - eta_tilde) / eta_tilde).sqrt();
        Spectrum::new(
            grid,
            (0..grid.n_samples())
                .map(|j| {
                    if grid.omega(j) > 0.0 {
                        c * g_tilde.at_mirror(j).conj()
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect(),
        )?
    };

    let gamma = if degenerate { 0.0 } else { gamma_from_eta_tilde(eta_tilde) };
    let fidelity_f = closed_form_fidelity(eta_tilde)?;

    Ok(ConstructionResult {
        overlap_i,
        beta,
        j_const,
        eta,
        eta_tilde,
        eta_tilde_relation,
        gamma,
        g_tilde,
        xi1,
        xi2,
        fidelity_f,
        degenerate,
        low_frequency_warning,
    })
}
