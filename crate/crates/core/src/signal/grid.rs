use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform time grid together with its conjugate frequency grid.
///
/// Time samples sit at `t_k = t0 + k·dt`. Frequency samples sit at
/// `ω_j = (j − (N−1)/2)·dω` with `dω = 2π/(N·dt)`, i.e. symmetric about zero
/// and offset by half a bin, so no sample falls on `ω = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n_samples: usize,
    dt: f64,
    t0: f64,
}

impl Grid {
    pub fn new(n_samples: usize, dt: f64, t0: f64) -> Result<Self> {
        if n_samples < 2 || !n_samples.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n_samples must be a power of two >= 2, got {n_samples}"
            )));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidGrid(format!("dt must be positive, got {dt}")));
        }
        if !t0.is_finite() {
            return Err(Error::InvalidGrid("t0 must be finite".into()));
        }
        Ok(Self { n_samples, dt, t0 })
    }

    /// Grid whose time samples are symmetric about `t = 0` (half-offset, no sample at 0).
    pub fn centered(n_samples: usize, dt: f64) -> Result<Self> {
        let t0 = -0.5 * (n_samples as f64 - 1.0) * dt;
        Self::new(n_samples, dt, t0)
    }

    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dw(&self) -> f64 {
        2.0 * PI / (self.n_samples as f64 * self.dt)
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.n_samples - 1)
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn omega(&self, j: usize) -> f64 {
        (j as f64 - 0.5 * (self.n_samples as f64 - 1.0)) * self.dw()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_samples).map(|k| self.time(k)).collect()
    }

    pub fn omegas(&self) -> Vec<f64> {
        (0..self.n_samples).map(|j| self.omega(j)).collect()
    }

    /// Largest representable angular frequency.
    pub fn omega_max(&self) -> f64 {
        self.omega(self.n_samples - 1)
    }

    /// Offset of `t0` from the centered placement; zero for [`Grid::centered`].
    pub(crate) fn shift_from_centered(&self) -> f64 {
        self.t0 + 0.5 * (self.n_samples as f64 - 1.0) * self.dt
    }

    /// Index of the sample at `ω_j → −ω_j`.
    pub fn mirror_index(&self, j: usize) -> usize {
        self.n_samples - 1 - j
    }

    pub(crate) fn same_as(&self, other: &Grid) -> bool {
        self.n_samples == other.n_samples
            && (self.dt - other.dt).abs() <= 1e-15 * self.dt
            && (self.t0 - other.t0).abs() <= 1e-12 * self.dt.max(self.t0.abs())
    }
}
