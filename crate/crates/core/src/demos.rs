//! One-dimensional witnesses of what can and cannot be localized.
//!
//! A single photon can vanish outside an interval at one instant but not over
//! a spacetime region; a coherent state, in contrast, can be strictly
//! localized. Space is sampled on the time axis of a [`Grid`], so its
//! conjugate frequency axis plays the role of the wavenumber `k`; `c = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{
    fourier_forward, fourier_inverse, Grid, SampledSignal, Spectrum, VacuumModeWeights,
};

/// `s(x, t) = u(x − t) + v(x + t)` sampled on an x-grid for a list of times.
#[derive(Debug, Clone)]
pub struct SpacetimeField {
    pub x_grid: Grid,
    pub t_values: Vec<f64>,
    /// `s_values[i][m] = s(x_m, t_i)`.
    pub s_values: Vec<Vec<Complex64>>,
    /// Right-moving part `u(x)` at `t = 0`.
    pub u0: Vec<Complex64>,
    /// Left-moving part `v(x)` at `t = 0`.
    pub v0: Vec<Complex64>,
}

/// `Σ_j H(k_j) e^{i k_j x_m} dk` on the x-grid.
fn synthesize(grid: &Grid, h: impl Fn(usize) -> Complex64) -> Vec<Complex64> {
    let n = grid.n_samples();
    // reversing the k samples turns the e^{+ikx} sum into the inverse transform
    let rev = Spectrum::new(*grid, (0..n).map(|j| h(n - 1 - j)).collect())
        .expect("length matches grid");
    let scale = (2.0 * PI).sqrt();
    fourier_inverse(&rev).into_values().into_iter().map(|v| v * scale).collect()
}

/// `s(x,t) = ∫ dk 𝓔(|k|) G(k) e^{ikx − i|k|t}`; the normal-ordered energy density is `2|s|²`.
pub fn photon_energy_envelope(
    g_of_k: &Spectrum,
    weights: VacuumModeWeights,
    t_values: &[f64],
) -> Result<SpacetimeField> {
    g_of_k.require_normalized()?;
    let grid = *g_of_k.grid();
    let weighted: Vec<Complex64> = (0..grid.n_samples())
        .map(|j| weights.field(grid.omega(j).abs()) * g_of_k.values()[j])
        .collect();
    let s_values = t_values
        .iter()
        .map(|&t| {
            synthesize(&grid, |j| {
                weighted[j] * Complex64::from_polar(1.0, -grid.omega(j).abs() * t)
            })
        })
        .collect();
    let zero = Complex64::new(0.0, 0.0);
    let u0 = synthesize(&grid, |j| if grid.omega(j) > 0.0 { weighted[j] } else { zero });
    let v0 = synthesize(&grid, |j| if grid.omega(j) < 0.0 { weighted[j] } else { zero });
    Ok(SpacetimeField { x_grid: grid, t_values: t_values.to_vec(), s_values, u0, v0 })
}

impl SpacetimeField {
    /// `2|s(x, t_i)|²`.
    pub fn energy_density(&self, i: usize) -> Vec<f64> {
        self.s_values[i].iter().map(|s| 2.0 * s.norm_sqr()).collect()
    }

    pub fn peak(&self, i: usize) -> f64 {
        self.s_values[i].iter().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// `sup_{|x| > half_width} |s(x, t_i)|`.
    pub fn outside_sup(&self, i: usize, half_width: f64) -> f64 {
        self.s_values[i]
            .iter()
            .enumerate()
            .filter(|&(m, _)| self.x_grid.time(m).abs() > half_width)
            .map(|(_, s)| s.norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|s(x,t) − u(x−t) − v(x+t)|` relative to the peak of `s`, using
    /// linear interpolation of `u` and `v` and skipping points whose shifted
    /// arguments leave the window.
    pub fn decomposition_residual(&self) -> f64 {
        let g = &self.x_grid;
        let interp = |f: &[Complex64], x: f64| -> Option<Complex64> {
            let pos = (x - g.t0()) / g.dt();
            if pos < 0.0 || pos > (g.n_samples() - 1) as f64 {
                return None;
            }
            let i = (pos.floor() as usize).min(g.n_samples() - 2);
            let w = pos - i as f64;
            Some(f[i] * (1.0 - w) + f[i + 1] * w)
        };
        let mut worst: f64 = 0.0;
        for (i, &t) in self.t_values.iter().enumerate() {
            let peak = self.peak(i);
            for (m, s) in self.s_values[i].iter().enumerate() {
                let x = g.time(m);
                if let (Some(u), Some(v)) = (interp(&self.u0, x - t), interp(&self.v0, x + t)) {
                    worst = worst.max((s - u - v).norm() / peak);
                }
            }
        }
        worst
    }
}

/// Wavenumber spectrum whose field profile at `t = 0` is
/// `cos⁴(πx/l)·sin(k₀x)` on `|x| < l/2` and exactly zero outside.
pub fn instantaneous_localization_demo(
    l: f64,
    k0: f64,
    grid: &Grid,
    weights: VacuumModeWeights,
) -> Result<Spectrum> {
    if l.is_nan() || l <= 0.0 || grid.t0() > -l || grid.t_end() < l {
        return Err(Error::Coverage("x-grid must contain [-l, l]".into()));
    }
    let bump = SampledSignal::from_fn(*grid, |x| {
        if x.abs() < 0.5 * l {
            Complex64::new((PI * x / l).cos().powi(4) * (k0 * x).sin(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    // B(k) = (2π)^{-1/2} ∫ b(x) e^{−ikx} dx is the mirror of the forward transform
    let fwd = fourier_forward(&bump);
    let g = Spectrum::new(
        *grid,
        (0..grid.n_samples())
            .map(|j| fwd.at_mirror(j) / weights.field(grid.omega(j).abs()))
            .collect(),
    )?;
    g.normalized()
}

/// Smallest value, over all windows of `window` consecutive samples, of the
/// largest `|s|` inside the window.
pub fn min_window_max(values: &[Complex64], window: usize) -> f64 {
    let abs: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    if window == 0 || window > abs.len() {
        return 0.0;
    }
    abs.windows(window).map(|w| w.iter().cloned().fold(0.0, f64::max)).fold(f64::INFINITY, f64::min)
}

/// Tolerance for the causality of the coherent-state shift term.
pub const COHERENT_SHIFT_TOL: f64 = 1e-8;

/// Photon spectrum `ξ(ω) ∝ Z(ω)/(α𝓐(ω))` of a coherent state whose field
/// displacement is the causal real profile `z(t)`.
///
/// The displacement term rebuilt from `ξ` is checked to vanish for `t < 0` and
/// to be real.
pub fn coherent_localization_check(
    z_target: &SampledSignal,
    alpha: Complex64,
    weights: VacuumModeWeights,
) -> Result<Spectrum> {
    let peak = z_target.peak_abs();
    if peak == 0.0 {
        return Err(Error::Precondition("target displacement is identically zero".into()));
    }
    let imag = z_target.values().iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if imag > 1e-12 * peak {
        return Err(Error::Precondition("target displacement is not real".into()));
    }
    if z_target.max_abs_negative() > 1e-12 * peak {
        return Err(Error::Precondition("target displacement is not causal".into()));
    }
    if alpha.norm() == 0.0 {
        return Err(Error::Domain("coherent amplitude must be nonzero".into()));
    }
    let grid = *z_target.grid();
    let big_z = fourier_forward(z_target);
    let z_peak = big_z.peak_abs();
    let asym = (0..grid.n_samples())
        .map(|j| (big_z.values()[j] - big_z.at_mirror(j).conj()).norm())
        .fold(0.0, f64::max);
    if asym > 1e-10 * z_peak {
        return Err(Error::Consistency("Z(ω) is not conjugate symmetric".into()));
    }

    let zero = Complex64::new(0.0, 0.0);
    let xi = Spectrum::new(
        grid,
        (0..grid.n_samples())
            .map(|j| {
                let w = grid.omega(j);
                if w > 0.0 {
                    big_z.values()[j] / (alpha * weights.potential(w))
                } else {
                    zero
                }
            })
            .collect(),
    )?
    .normalized()?;

    let rebuilt = Spectrum::new(
        grid,
        (0..grid.n_samples())
            .map(|j| {
                let w = grid.omega(j);
                if w > 0.0 {
                    alpha * weights.potential(w) * xi.values()[j]
                } else {
                    let m = grid.mirror_index(j);
                    (alpha * weights.potential(-w) * xi.values()[m]).conj()
                }
            })
            .collect(),
    )?;
    let shift = fourier_inverse(&rebuilt);
    let shift_peak = shift.peak_abs();
    if shift.max_abs_negative() > COHERENT_SHIFT_TOL * shift_peak {
        return Err(Error::Consistency("displacement shift term is not causal".into()));
    }
    let shift_imag = shift.values().iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    if shift_imag > 1e-10 * shift_peak {
        return Err(Error::Consistency("displacement shift term is not real".into()));
    }
    Ok(xi)
}
