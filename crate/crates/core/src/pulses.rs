//! Gaussian pulse families and effective pulse parameters.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{fourier_forward, fourier_inverse, Grid, SampledSignal, Spectrum};

/// Number of widths on each side of the centre the window must cover.
const COVERAGE_SIGMAS: f64 = 8.0;

/// `g(t) ∝ e^{−(t−τ)²/2σ²} e^{−iω₀t}`, optionally multiplied by `θ(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSpec {
    pub omega0: f64,
    pub sigma: f64,
    pub tau: f64,
    pub truncated: bool,
}

impl GaussianSpec {
    pub fn new(omega0: f64, sigma: f64, tau: f64, truncated: bool) -> Result<Self> {
        let spec = Self { omega0, sigma, tau, truncated };
        spec.validate()?;
        Ok(spec)
    }

    /// Spec in units where `ω₀ = 1`.
    pub fn dimensionless(omega0_sigma: f64, tau_over_sigma: f64, truncated: bool) -> Result<Self> {
        Self::new(1.0, omega0_sigma, tau_over_sigma * omega0_sigma, truncated)
    }

    fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0 && self.sigma > 0.0 && self.tau >= 0.0)
            || !(self.omega0.is_finite() && self.sigma.is_finite() && self.tau.is_finite())
        {
            return Err(Error::Domain(format!(
                "need omega0 > 0, sigma > 0, tau >= 0; got {self:?}"
            )));
        }
        Ok(())
    }

    /// Centered grid of `n_samples` points resolving this pulse.
    ///
    /// The step resolves the carrier plus twelve spectral widths with a
    /// factor-two margin; the window must then hold `τ + 10σ` on each side.
    pub fn default_grid(&self, n_samples: usize) -> Result<Grid> {
        self.validate()?;
        let band = self.omega0 + 12.0 / self.sigma;
        let dt = std::f64::consts::PI / (2.0 * band);
        let grid = Grid::centered(n_samples, dt)?;
        let need = self.tau + 10.0 * self.sigma;
        if grid.t_end() < need {
            return Err(Error::Coverage(format!(
                "{n_samples} samples give half-window {:.3}, need {need:.3}",
                grid.t_end()
            )));
        }
        Ok(grid)
    }
}

/// Samples the Gaussian on `grid` and normalizes it.
pub fn gaussian_pulse(spec: &GaussianSpec, grid: &Grid) -> Result<SampledSignal> {
    spec.validate()?;
    let lo = if spec.truncated { 0.0 } else { spec.tau - COVERAGE_SIGMAS * spec.sigma };
    let hi = spec.tau + COVERAGE_SIGMAS * spec.sigma;
    if grid.t0() > lo || grid.t_end() < hi {
        return Err(Error::Coverage(format!(
            "window [{:.3}, {:.3}] does not contain [{lo:.3}, {hi:.3}]",
            grid.t0(),
            grid.t_end()
        )));
    }
    if std::f64::consts::PI / grid.dt() < spec.omega0 + COVERAGE_SIGMAS / spec.sigma {
        return Err(Error::Coverage("time step does not resolve the carrier".into()));
    }
    let sig = SampledSignal::from_fn(*grid, |t| {
        if spec.truncated && t < 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let x = (t - spec.tau) / spec.sigma;
        Complex64::from_polar((-0.5 * x * x).exp(), -spec.omega0 * t)
    });
    sig.normalized()
}

/// `ξ(ω) = G_pre(ω)·[ω > 0]`, renormalized.
pub fn physical_target_from_seed(pre: &GaussianSpec, grid: &Grid) -> Result<Spectrum> {
    if pre.truncated {
        return Err(Error::Precondition("seed must be an untruncated Gaussian".into()));
    }
    let g_pre = gaussian_pulse(pre, grid)?;
    let positive = fourier_forward(&g_pre).positive_part();
    if positive.norm_sqr() < 1e-14 {
        return Err(Error::DegenerateTarget);
    }
    positive.normalized()
}

/// Mean frequency, mean positive time and 5%-width of a photon spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    pub omega0_eff: f64,
    pub tau_eff: f64,
    pub sigma_eff: f64,
}

/// Ratio of the 5%-of-peak full width of `e^{−t²/σ²}` to `σ`.
fn five_percent_width_factor() -> f64 {
    2.0 * 20f64.ln().sqrt()
}

pub fn effective_params(xi_spec: &Spectrum) -> Result<EffectiveParams> {
    xi_spec.require_normalized()?;
    let grid = *xi_spec.grid();
    let dw = grid.dw();
    let omega0_eff = (0..grid.n_samples())
        .filter(|&j| grid.omega(j) > 0.0)
        .map(|j| grid.omega(j) * xi_spec.values()[j].norm_sqr())
        .sum::<f64>()
        * dw;

    let xi_t = fourier_inverse(xi_spec);
    let dt = grid.dt();
    let power: Vec<f64> = xi_t.values().iter().map(|v| v.norm_sqr()).collect();
    let tau_eff = (0..grid.n_samples())
        .filter(|&k| grid.time(k) > 0.0)
        .map(|k| grid.time(k) * power[k])
        .sum::<f64>()
        * dt;

    let peak = power.iter().cloned().fold(0.0, f64::max);
    if peak <= 0.0 {
        return Err(Error::DegenerateTarget);
    }
    let level = 0.05 * peak;
    let first = power.iter().position(|&p| p >= level).unwrap_or(0);
    let last = power.iter().rposition(|&p| p >= level).unwrap_or(grid.n_samples() - 1);
    let crossing = |inside: usize, outside: Option<usize>| -> f64 {
        let t_in = grid.time(inside);
        match outside {
            Some(o) => {
                let (p_in, p_out) = (power[inside], power[o]);
                let frac = (p_in - level) / (p_in - p_out);
                t_in + frac * (grid.time(o) - t_in)
            }
            None => t_in,
        }
    };
    let left = crossing(first, first.checked_sub(1));
    let right = crossing(last, (last + 1 < grid.n_samples()).then_some(last + 1));
    let sigma_eff = (right - left) / five_percent_width_factor();

    Ok(EffectiveParams { omega0_eff, tau_eff, sigma_eff })
}
