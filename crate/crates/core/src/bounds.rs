//! Upper and lower bounds on the fidelity of strictly localized states.
//!
//! Two kinds of target are handled. A causal target is a pulse form `g(t)`
//! vanishing for `t < 0`, whose obstruction is its negative-frequency weight
//! `η`. A physical target is a positive-frequency spectrum `ξ(ω)`, whose
//! obstruction is the weight `μ` of its tail before `t = 0`.

use std::f64::consts::{E, PI};

use crate::construction::{closed_form_fidelity_n, construct_localized_state};
use crate::error::{Error, Result};
use crate::signal::{
    fourier_inverse, negative_time_weight, nu_constant, split_causal, SampledSignal, Spectrum,
};

/// First-order forms are reported only below this small parameter.
pub const FIRST_ORDER_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    CausalG,
    PhysicalXi,
}

impl TargetKind {
    pub fn label(self) -> &'static str {
        match self {
            TargetKind::CausalG => "causal_g",
            TargetKind::PhysicalXi => "physical_xi",
        }
    }
}

/// Intermediate quantities shared by all bound formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    /// Negative-time weight of `ξ`; physical targets only.
    pub mu: Option<f64>,
    /// `|ν|`; physical targets only.
    pub nu_abs: Option<f64>,
    /// Negative-frequency weight of the seed fed to the construction.
    pub eta: f64,
    pub eta_tilde: f64,
    pub j_const: f64,
    pub gamma: f64,
    pub fidelity_n: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub target_kind: TargetKind,
    pub n_photon: u32,
    pub upper: f64,
    pub lower: f64,
    pub upper_first_order: Option<f64>,
    pub lower_first_order: Option<f64>,
    /// Physical targets with `n = 1`: `√(1 − (2/πe)(μ+|ν|)²)`.
    pub upper_single_photon: Option<f64>,
    pub inputs: BoundInputs,
}

fn two_over_pi_e() -> f64 {
    2.0 / (PI * E)
}

/// `(1−η)^{n/2}`.
pub fn causal_upper(eta: f64, n: u32) -> f64 {
    (1.0 - eta).powf(n as f64 / 2.0)
}

/// `F_n·[(1+J)(1+J−2η)/(4J)]^{n/2}`.
pub fn causal_lower(eta: f64, j_const: f64, fidelity_n: f64, n: u32) -> f64 {
    let j = j_const;
    fidelity_n * ((1.0 + j) * (1.0 + j - 2.0 * eta) / (4.0 * j)).powf(n as f64 / 2.0)
}

/// `√(1 − (2/πe)(1 − (1−μ−|ν|)ⁿ)²)`.
pub fn physical_upper(mu: f64, nu_abs: f64, n: u32) -> f64 {
    let d = 1.0 - (1.0 - mu - nu_abs).powi(n as i32);
    (1.0 - two_over_pi_e() * d * d).sqrt()
}

/// `√(1 − (2/πe)(μ+|ν|)²)`.
pub fn physical_upper_single(mu: f64, nu_abs: f64) -> f64 {
    let c = mu + nu_abs;
    (1.0 - two_over_pi_e() * c * c).sqrt()
}

/// `F_n(1−μ)^{n/2}[J(1+J)/(1+J−2η)]^{n/2}`.
pub fn physical_lower(mu: f64, eta: f64, j_const: f64, fidelity_n: f64, n: u32) -> f64 {
    let j = j_const;
    let half_n = n as f64 / 2.0;
    fidelity_n * (1.0 - mu).powf(half_n) * (j * (1.0 + j) / (1.0 + j - 2.0 * eta)).powf(half_n)
}

pub fn causal_upper_first_order(eta: f64, n: u32) -> f64 {
    1.0 - n as f64 / 2.0 * eta
}

pub fn causal_lower_first_order(eta: f64, n: u32) -> f64 {
    let n1 = n as f64 + 1.0;
    1.0 - (n1 - n1.sqrt()) * eta
}

pub fn physical_upper_first_order(mu: f64, n: u32) -> f64 {
    1.0 - (n as f64).powi(2) / (PI * E) * mu * mu
}

pub fn physical_lower_first_order(mu: f64, n: u32) -> f64 {
    1.0 - n as f64 * mu
}

/// `|exact − approx| / small²`.
pub fn first_order_check(exact: f64, approx: f64, small_param: f64) -> f64 {
    (exact - approx).abs() / (small_param * small_param)
}

impl BoundReport {
    /// `0 ≤ lower ≤ upper ≤ 1`, with first-order fields present exactly when the
    /// small parameter is below [`FIRST_ORDER_LIMIT`].
    pub fn invariants_hold(&self) -> bool {
        let small = match self.target_kind {
            TargetKind::CausalG => self.inputs.eta,
            TargetKind::PhysicalXi => self.inputs.mu.unwrap_or(f64::NAN),
        };
        let first = small < FIRST_ORDER_LIMIT;
        0.0 <= self.lower
            && self.lower <= self.upper
            && self.upper <= 1.0
            && self.upper_first_order.is_some() == first
            && self.lower_first_order.is_some() == first
    }
}

impl BoundInputs {
    pub fn causal_report(&self, n: u32) -> BoundReport {
        let eta = self.eta;
        let first = eta < FIRST_ORDER_LIMIT;
        BoundReport {
            target_kind: TargetKind::CausalG,
            n_photon: n,
            upper: causal_upper(eta, n),
            lower: causal_lower(eta, self.j_const, self.fidelity_n, n),
            upper_first_order: first.then(|| causal_upper_first_order(eta, n)),
            lower_first_order: first.then(|| causal_lower_first_order(eta, n)),
            upper_single_photon: None,
            inputs: *self,
        }
    }

    pub fn physical_report(&self, n: u32) -> Result<BoundReport> {
        let (mu, nu_abs) = match (self.mu, self.nu_abs) {
            (Some(m), Some(v)) => (m, v),
            _ => return Err(Error::Precondition("physical bounds need mu and |nu|".into())),
        };
        let first = mu < FIRST_ORDER_LIMIT;
        Ok(BoundReport {
            target_kind: TargetKind::PhysicalXi,
            n_photon: n,
            upper: physical_upper(mu, nu_abs, n),
            lower: physical_lower(mu, self.eta, self.j_const, self.fidelity_n, n),
            upper_first_order: first.then(|| physical_upper_first_order(mu, n)),
            lower_first_order: first.then(|| physical_lower_first_order(mu, n)),
            upper_single_photon: (n == 1).then(|| physical_upper_single(mu, nu_abs)),
            inputs: *self,
        })
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("photon number must be positive".into()));
    }
    Ok(())
}

/// Bounds for a causal pulse form `g(t)`.
pub fn bounds_causal_target(g: &SampledSignal, n: u32) -> Result<BoundReport> {
    check_n(n)?;
    let c = construct_localized_state(g)?;
    let inputs = BoundInputs {
        mu: None,
        nu_abs: None,
        eta: c.eta,
        eta_tilde: c.eta_tilde,
        j_const: c.j_const,
        gamma: c.gamma,
        fidelity_n: closed_form_fidelity_n(c.eta_tilde, n)?,
    };
    Ok(inputs.causal_report(n))
}

/// Bounds for a positive-frequency photon spectrum `ξ(ω)`.
///
/// The lower bound uses the causal half `h₊ = ξ·[t ≥ 0]`, renormalized, as the
/// construction seed.
pub fn bounds_physical_target(xi_spec: &Spectrum, n: u32) -> Result<BoundReport> {
    check_n(n)?;
    xi_spec.require_normalized()?;
    let grid = *xi_spec.grid();
    let has_negative = (0..grid.n_samples())
        .any(|j| grid.omega(j) <= 0.0 && xi_spec.values()[j].norm_sqr() > 0.0);
    if has_negative {
        return Err(Error::Domain("photon spectrum has weight at non-positive frequencies".into()));
    }
    let xi_t = fourier_inverse(xi_spec);
    let mu = negative_time_weight(&xi_t)?;
    let nu_abs = nu_constant(&xi_t).norm();
    let (h_plus, _) = split_causal(&xi_t);
    let seed = h_plus.normalized()?;
    let c = construct_localized_state(&seed)?;
    if c.eta >= mu / (1.0 - mu) {
        return Err(Error::Consistency(format!(
            "seed eta {:.6e} not below mu/(1-mu) = {:.6e}",
            c.eta,
            mu / (1.0 - mu)
        )));
    }
    let inputs = BoundInputs {
        mu: Some(mu),
        nu_abs: Some(nu_abs),
        eta: c.eta,
        eta_tilde: c.eta_tilde,
        j_const: c.j_const,
        gamma: c.gamma,
        fidelity_n: closed_form_fidelity_n(c.eta_tilde, n)?,
    };
    inputs.physical_report(n)
}

/// Smallest causal lower bound over every seed with negative-frequency weight `η`.
///
/// The admissible overlap range `|I|² ≤ η(1−η)` maps to `J ∈ [1−2η, 1]`; η̃
/// follows from the relation with `J`, and the bound is minimized over `J`.
pub fn causal_lower_worst_case(eta: f64, n: u32) -> Result<f64> {
    let lo = 1.0 - 2.0 * eta;
    let eval = |j: f64| -> Result<f64> {
        let et = crate::construction::eta_tilde_from_relation(eta, j).max(0.0);
        Ok(causal_lower(eta, j, closed_form_fidelity_n(et, n)?, n))
    };
    minimize_on_interval(lo.max(1e-12), 1.0, eval)
}

/// Smallest physical lower bound over every seed compatible with tail weight `μ`.
///
/// The seed's negative-frequency weight ranges over `(0, μ/(1−μ)]`; both it and
/// `J` are scanned.
pub fn physical_lower_worst_case(mu: f64, n: u32) -> Result<f64> {
    let eta_max = (mu / (1.0 - mu)).min(0.5 - 1e-9);
    let mut worst = f64::INFINITY;
    let steps = 200;
    for i in 1..=steps {
        let eta = eta_max * i as f64 / steps as f64;
        let lo = (1.0 - 2.0 * eta).max(1e-12);
        let v = minimize_on_interval(lo, 1.0, |j| {
            let et = crate::construction::eta_tilde_from_relation(eta, j).max(0.0);
            Ok(physical_lower(mu, eta, j, closed_form_fidelity_n(et, n)?, n))
        })?;
        worst = worst.min(v);
    }
    Ok(worst)
}

/// Grid scan followed by golden-section refinement around the best sample.
fn minimize_on_interval(a: f64, b: f64, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let m = 400;
    let xs: Vec<f64> = (0..=m).map(|i| a + (b - a) * i as f64 / m as f64).collect();
    let mut best = (f64::INFINITY, 0usize);
    for (i, &x) in xs.iter().enumerate() {
        let v = f(x)?;
        if v < best.0 {
            best = (v, i);
        }
    }
    let (mut lo, mut hi) = (xs[best.1.saturating_sub(1)], xs[(best.1 + 1).min(m)]);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - g * (hi - lo);
    let mut d = lo + g * (hi - lo);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..100 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - g * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + g * (hi - lo);
            fd = f(d)?;
        }
    }
    Ok(best.0.min(fc).min(fd).min(f(a)?).min(f(b)?))
}
