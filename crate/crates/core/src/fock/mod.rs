//! Truncated two-mode Fock-space simulation.
//!
//! This is an independent route to the quantities the closed forms predict:
//! the squeeze operator is a literal matrix exponential, the localized state is
//! obtained by applying `W = S†ã₁†S` to the vacuum, and fidelities are read off
//! the resulting amplitudes.

mod eigen;
mod operator;
mod oracle;

pub use eigen::{
    eigenvector_coefficients, eigenvector_overlap, position_operator_check, position_residual,
};
pub use operator::{expm, FockOperator, FockTensor};
pub use oracle::{
    default_trunc, interior_trunc, licht_operator, licht_residuals, oracle_fidelity,
    squeeze_factorized_apply, squeeze_generator, squeeze_operator, state_coefficients,
    LichtResiduals, OracleFidelity, INTERIOR_LEAK_TOL, TRUNCATION_TOL,
};
