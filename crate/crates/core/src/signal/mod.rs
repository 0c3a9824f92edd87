//! Uniform-grid signals, spectra, Fourier transforms and tail weights.

mod fft;
mod grid;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) use fft::dft_in_place;
pub use fft::{fourier_forward, fourier_inverse};
pub use grid::Grid;

/// Tolerance on `|‖g‖² − 1|` accepted as "normalized".
pub const NORM_TOL: f64 = 1e-9;

macro_rules! sampled_type {
    ($name:ident, $step:ident, $coord:ident) => {
        impl $name {
            pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
                if values.len() != grid.n_samples() {
                    return Err(Error::InvalidGrid(format!(
                        "{} values for a grid of {} samples",
                        values.len(),
                        grid.n_samples()
                    )));
                }
                Ok(Self { grid, values })
            }

            pub(crate) fn from_raw(grid: Grid, values: Vec<Complex64>) -> Self {
                debug_assert_eq!(values.len(), grid.n_samples());
                Self { grid, values }
            }

            /// Samples `f` at every grid coordinate.
            pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Self {
                let values = (0..grid.n_samples()).map(|i| f(grid.$coord(i))).collect();
                Self { grid, values }
            }

            pub fn zeros(grid: Grid) -> Self {
                Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.n_samples()] }
            }

            pub fn grid(&self) -> &Grid {
                &self.grid
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn into_values(self) -> Vec<Complex64> {
                self.values
            }

            pub fn coords(&self) -> Vec<f64> {
                (0..self.grid.n_samples()).map(|i| self.grid.$coord(i)).collect()
            }

            pub fn step(&self) -> f64 {
                self.grid.$step()
            }

            /// Riemann sum of `|v|²`.
            pub fn norm_sqr(&self) -> f64 {
                self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.step()
            }

            /// `Σ conj(self)·other` with the grid weight.
            pub fn inner(&self, other: &Self) -> Result<Complex64> {
                if !self.grid.same_as(&other.grid) {
                    return Err(Error::GridMismatch);
                }
                let s: Complex64 =
                    self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
                Ok(s * self.step())
            }

            pub fn scaled(&self, c: Complex64) -> Self {
                Self { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
            }

            /// Copy rescaled to unit squared norm.
            pub fn normalized(&self) -> Result<Self> {
                let n = self.norm_sqr();
                if !(n > 0.0 && n.is_finite()) {
                    return Err(Error::Normalization { norm: n });
                }
                Ok(self.scaled(Complex64::new(1.0 / n.sqrt(), 0.0)))
            }

            pub fn require_normalized(&self) -> Result<()> {
                let n = self.norm_sqr();
                if (n - 1.0).abs() > NORM_TOL {
                    return Err(Error::Normalization { norm: n });
                }
                Ok(())
            }

            pub fn peak_abs(&self) -> f64 {
                self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
            }

            /// Largest `|v|` over samples with negative coordinate.
            pub fn max_abs_negative(&self) -> f64 {
                (0..self.grid.n_samples())
                    .filter(|&i| self.grid.$coord(i) < 0.0)
                    .map(|i| self.values[i].norm())
                    .fold(0.0, f64::max)
            }

            /// `Σ |v|²` over negative coordinates, times the grid step.
            pub fn negative_weight_raw(&self) -> f64 {
                (0..self.grid.n_samples())
                    .filter(|&i| self.grid.$coord(i) < 0.0)
                    .map(|i| self.values[i].norm_sqr())
                    .sum::<f64>()
                    * self.step()
            }
        }
    };
}

/// Complex time-domain samples on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    grid: Grid,
    values: Vec<Complex64>,
}

/// Complex frequency-domain samples on the frequency side of a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    grid: Grid,
    values: Vec<Complex64>,
}

sampled_type!(SampledSignal, dt, time);
sampled_type!(Spectrum, dw, omega);

impl Spectrum {
    /// Value at the mirrored frequency `−ω_j`.
    pub fn at_mirror(&self, j: usize) -> Complex64 {
        self.values[self.grid.mirror_index(j)]
    }

    /// Copy with every sample at `ω ≤ 0` set to zero.
    pub fn positive_part(&self) -> Spectrum {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, &v)| if self.grid.omega(j) > 0.0 { v } else { Complex64::new(0.0, 0.0) })
            .collect();
        Spectrum { grid: self.grid, values }
    }

    /// `Σ_{ω>0} |G(ω)|²/ω dω`; large values indicate a seed whose modified
    /// spectrum would have an almost divergent norm at `ω = 0`.
    pub fn low_frequency_indicator(&self) -> f64 {
        let dw = self.grid.dw();
        (0..self.grid.n_samples())
            .filter(|&j| self.grid.omega(j) > 0.0)
            .map(|j| self.values[j].norm_sqr() / self.grid.omega(j))
            .sum::<f64>()
            * dw
    }
}

/// Threshold above which [`Spectrum::low_frequency_indicator`] is flagged.
pub const LOW_FREQUENCY_WARN: f64 = 1e6;

/// Vacuum mode weights of the vector potential and the electric field.
///
/// `𝓐(ω) = K/√(−iω)` with the principal square root and `𝓔(ω) = iω·𝓐(ω)`,
/// so that `|𝓔(ω)|² = K²|ω|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumModeWeights {
    pub k_const: f64,
}

impl Default for VacuumModeWeights {
    fn default() -> Self {
        Self { k_const: 1.0 }
    }
}

impl VacuumModeWeights {
    pub fn new(k_const: f64) -> Result<Self> {
        if !(k_const > 0.0 && k_const.is_finite()) {
            return Err(Error::Domain(format!("K must be positive, got {k_const}")));
        }
        Ok(Self { k_const })
    }

    pub fn potential(&self, omega: f64) -> Complex64 {
        self.k_const / Complex64::new(0.0, -omega).sqrt()
    }

    pub fn field(&self, omega: f64) -> Complex64 {
        Complex64::new(0.0, omega) * self.potential(omega)
    }
}

/// Which mode function to build in [`pulse_mode_time_function`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Potential,
    Field,
}

/// Weight `μ = Σ_{t<0} |ξ(t)|² dt` of the negative-time tail.
pub fn negative_time_weight(sig: &SampledSignal) -> Result<f64> {
    sig.require_normalized()?;
    Ok(sig.negative_weight_raw())
}

/// Weight `η = Σ_{ω<0} |G(ω)|² dω` of the negative frequencies.
pub fn negative_frequency_weight(spec: &Spectrum) -> Result<f64> {
    spec.require_normalized()?;
    Ok(spec.negative_weight_raw())
}

/// `ν = Σ_{t<0} ξ(t)² dt` (no conjugation).
pub fn nu_constant(sig: &SampledSignal) -> Complex64 {
    let grid = sig.grid();
    let s: Complex64 = (0..grid.n_samples())
        .filter(|&k| grid.time(k) < 0.0)
        .map(|k| sig.values()[k] * sig.values()[k])
        .sum();
    s * grid.dt()
}

/// Splits `ξ` into `(h₊, h₋)` with `h₊ = ξ·[t ≥ 0]` and `h₋ = ξ·[t < 0]`.
pub fn split_causal(sig: &SampledSignal) -> (SampledSignal, SampledSignal) {
    let grid = *sig.grid();
    let zero = Complex64::new(0.0, 0.0);
    let mut plus = Vec::with_capacity(grid.n_samples());
    let mut minus = Vec::with_capacity(grid.n_samples());
    for (k, &v) in sig.values().iter().enumerate() {
        if grid.time(k) >= 0.0 {
            plus.push(v);
            minus.push(zero);
        } else {
            plus.push(zero);
            minus.push(v);
        }
    }
    (SampledSignal::from_raw(grid, plus), SampledSignal::from_raw(grid, minus))
}

/// `A_n(t) = ∫₀^∞ 𝓐(ω) ξ_n(ω) e^{−iωt} dω` (or the same with `𝓔`).
pub fn pulse_mode_time_function(
    mode: &Spectrum,
    weights: VacuumModeWeights,
    kind: ModeKind,
) -> Result<SampledSignal> {
    mode.require_normalized()?;
    let grid = *mode.grid();
    let leak: f64 = (0..grid.n_samples())
        .filter(|&j| grid.omega(j) <= 0.0)
        .map(|j| mode.values()[j].norm_sqr())
        .sum();
    if leak > 0.0 {
        return Err(Error::Domain("mode has weight at non-positive frequencies".into()));
    }
    let weighted = Spectrum::from_raw(
        grid,
        mode.values()
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                let w = grid.omega(j);
                match kind {
                    ModeKind::Potential => weights.potential(w) * v,
                    ModeKind::Field => weights.field(w) * v,
                }
            })
            .collect(),
    );
    let sig = fourier_inverse(&weighted)
        .scaled(Complex64::new((2.0 * std::f64::consts::PI).sqrt(), 0.0));
    if grid.t0() < 0.0 && sig.max_abs_negative() == 0.0 {
        return Err(Error::Consistency("positive-frequency mode vanished for all t < 0".into()));
    }
    Ok(sig)
}
