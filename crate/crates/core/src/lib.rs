//! Fidelity bounds for strictly localized photon states.
//!
//! A photon with a prescribed pulse shape cannot be produced on demand by a
//! local source: its spectrum either has negative-frequency weight (causal
//! pulse forms) or its time profile has a tail before the trigger (physical
//! positive-frequency spectra). This crate computes upper and lower bounds on
//! the best fidelity any strictly localized state can reach with such a
//! target, builds the two-mode squeezed construction that reaches the lower
//! bound, and checks the closed forms against a truncated Fock-space
//! simulation.
//!
//! Units are dimensionless throughout and c = 1. Fourier transforms use the
//! unitary convention `G(ω) = (2π)^{-1/2} ∫ g(t) e^{iωt} dt`.

pub mod bounds;
pub mod construction;
pub mod demos;
pub mod error;
pub mod fock;
pub mod measurement;
pub mod pulses;
pub mod signal;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;
