//! Parameter sweeps behind the figure CSV files.
//!
//! Every sweep works in units where the carrier frequency is one, so the
//! sweep parameters are the dimensionless products `ω₀σ` and `ω₀τ`.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{bounds_causal_target, bounds_physical_target};
use crate::error::{Error, Result};
use crate::pulses::{effective_params, gaussian_pulse, physical_target_from_seed, GaussianSpec};

/// Default number of samples per pulse grid in sweeps.
pub const SWEEP_SAMPLES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Causal target, bounds against delay at fixed widths.
    Fig2,
    /// Causal target, bounds against width at fixed delay ratios.
    Fig3,
    /// Effective width-frequency product of physical targets.
    Fig4,
    /// Physical target, bounds against delay at fixed widths.
    Fig5,
    /// Physical target, bounds against width at fixed delay ratios.
    Fig6,
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(FigureId::Fig2),
            "fig3" => Ok(FigureId::Fig3),
            "fig4" => Ok(FigureId::Fig4),
            "fig5" => Ok(FigureId::Fig5),
            "fig6" => Ok(FigureId::Fig6),
            _ => Err(Error::Domain(format!("unknown figure id '{s}'"))),
        }
    }
}

impl FigureId {
    pub const ALL: [FigureId; 5] =
        [FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5, FigureId::Fig6];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }

    /// Quantity on the horizontal axis.
    pub fn sweep_name(self) -> &'static str {
        match self {
            FigureId::Fig2 | FigureId::Fig5 => "omega0_tau",
            FigureId::Fig3 | FigureId::Fig6 => "omega0_sigma",
            FigureId::Fig4 => "omega0_sigma_pre",
        }
    }

    fn series_name(self) -> &'static str {
        match self {
            FigureId::Fig2 | FigureId::Fig5 => "omega0_sigma",
            FigureId::Fig3 | FigureId::Fig6 | FigureId::Fig4 => "tau_over_sigma",
        }
    }

    fn is_physical(self) -> bool {
        matches!(self, FigureId::Fig5 | FigureId::Fig6)
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub figure: FigureId,
    /// One curve per value.
    pub series: Vec<f64>,
    /// Horizontal-axis values.
    pub sweep: Vec<f64>,
    pub n_samples: usize,
    pub n_photon: u32,
}

impl SweepConfig {
    pub fn default_for(figure: FigureId) -> Self {
        let (series, sweep) = match figure {
            FigureId::Fig2 | FigureId::Fig5 => (vec![0.5, 1.0, 2.0], linspace(0.0, 12.0, 49)),
            FigureId::Fig3 | FigureId::Fig6 => (vec![1.0, 2.0, 3.0], logspace(0.2, 10.0, 41)),
            FigureId::Fig4 => (vec![3.0], logspace(0.05, 10.0, 41)),
        };
        Self { figure, series, sweep, n_samples: SWEEP_SAMPLES, n_photon: 1 }
    }

    pub fn validate(&self) -> Result<()> {
        let increasing = |v: &[f64]| !v.is_empty() && v.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&self.series) || !increasing(&self.sweep) {
            return Err(Error::Domain("sweep and series grids must be nonempty and increasing".into()));
        }
        if self.n_photon == 0 {
            return Err(Error::Domain("photon number must be positive".into()));
        }
        crate::signal::Grid::centered(self.n_samples, 1.0)?;
        Ok(())
    }

    /// `(ω₀σ, ω₀τ)` of the pulse behind row `i`, series `s`.
    fn pulse_params(&self, sweep: f64, series: f64) -> (f64, f64) {
        match self.figure {
            FigureId::Fig2 | FigureId::Fig5 => (series, sweep),
            FigureId::Fig3 | FigureId::Fig6 | FigureId::Fig4 => (sweep, series * sweep),
        }
    }
}

/// Result at one grid point of one series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Bounds { upper: f64, lower: f64, weight: f64 },
    Effective { omega0_eff: f64, tau_eff: f64, sigma_eff: f64 },
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub config: SweepConfig,
    /// `cells[row][series]`.
    pub cells: Vec<Vec<Cell>>,
}

fn evaluate(cfg: &SweepConfig, sweep: f64, series: f64) -> Result<Cell> {
    let (ws, wt) = cfg.pulse_params(sweep, series);
    match cfg.figure {
        FigureId::Fig2 | FigureId::Fig3 => {
            let spec = GaussianSpec::new(1.0, ws, wt, true)?;
            let grid = spec.default_grid(cfg.n_samples)?;
            let g = gaussian_pulse(&spec, &grid)?;
            match bounds_causal_target(&g, cfg.n_photon) {
                Ok(r) => Ok(Cell::Bounds { upper: r.upper, lower: r.lower, weight: r.inputs.eta }),
                Err(Error::InfeasibleSeed { .. }) => Ok(Cell::Infeasible),
                Err(e) => Err(e),
            }
        }
        FigureId::Fig5 | FigureId::Fig6 => {
            let spec = GaussianSpec::new(1.0, ws, wt, false)?;
            let grid = spec.default_grid(cfg.n_samples)?;
            let xi = physical_target_from_seed(&spec, &grid)?;
            match bounds_physical_target(&xi, cfg.n_photon) {
                Ok(r) => Ok(Cell::Bounds {
                    upper: r.upper,
                    lower: r.lower,
                    weight: r.inputs.mu.unwrap_or(f64::NAN),
                }),
                Err(Error::InfeasibleSeed { .. }) => Ok(Cell::Infeasible),
                Err(e) => Err(e),
            }
        }
        FigureId::Fig4 => {
            let spec = GaussianSpec::new(1.0, ws, wt, false)?;
            let grid = spec.default_grid(cfg.n_samples)?;
            let xi = physical_target_from_seed(&spec, &grid)?;
            let p = effective_params(&xi)?;
            Ok(Cell::Effective {
                omega0_eff: p.omega0_eff,
                tau_eff: p.tau_eff,
                sigma_eff: p.sigma_eff,
            })
        }
    }
}

/// Evaluates every grid point; rows are computed in parallel and returned in grid order.
pub fn run_figure_sweep(cfg: &SweepConfig) -> Result<SweepTable> {
    cfg.validate()?;
    let cells = cfg
        .sweep
        .par_iter()
        .map(|&x| cfg.series.iter().map(|&s| evaluate(cfg, x, s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { config: cfg.clone(), cells })
}

/// Fixed 12-significant-digit scientific formatting.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    format!("{x:.11e}")
}

fn fmt_series(v: f64) -> String {
    // series labels are short decimals such as 0.5 or 2
    let s = format!("{v}");
    s.replace('-', "m")
}

impl SweepTable {
    pub fn header(&self) -> Vec<String> {
        let cfg = &self.config;
        let mut h = vec!["sweep_param".to_string()];
        for &s in &cfg.series {
            let tag = format!("{}={}", cfg.figure.series_name(), fmt_series(s));
            match cfg.figure {
                FigureId::Fig4 => {
                    for col in ["omega0_eff", "tau_eff", "sigma_eff", "width_product"] {
                        h.push(format!("{col}[{tag}]"));
                    }
                }
                _ => {
                    let w = if cfg.figure.is_physical() { "mu" } else { "eta" };
                    for col in ["upper", "lower", w] {
                        h.push(format!("{col}[{tag}]"));
                    }
                }
            }
            h.push(format!("status[{tag}]"));
        }
        h
    }

    /// CSV text with `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header().join(","));
        out.push('\n');
        for (x, row) in self.config.sweep.iter().zip(&self.cells) {
            let mut fields = vec![fmt_num(*x)];
            for cell in row {
                match *cell {
                    Cell::Bounds { upper, lower, weight } => {
                        fields.extend([fmt_num(upper), fmt_num(lower), fmt_num(weight)]);
                        fields.push("ok".into());
                    }
                    Cell::Effective { omega0_eff, tau_eff, sigma_eff } => {
                        fields.extend([
                            fmt_num(omega0_eff),
                            fmt_num(tau_eff),
                            fmt_num(sigma_eff),
                            fmt_num(omega0_eff * sigma_eff),
                        ]);
                        fields.push("ok".into());
                    }
                    Cell::Infeasible => {
                        let blanks = if self.config.figure == FigureId::Fig4 { 4 } else { 3 };
                        fields.extend(std::iter::repeat_n(String::new(), blanks));
                        fields.push("infeasible".into());
                    }
                }
            }
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    /// Column of a bound quantity for one series; `None` marks infeasible rows.
    pub fn series_bounds(&self, s: usize) -> Vec<Option<(f64, f64, f64)>> {
        self.cells
            .iter()
            .map(|row| match row[s] {
                Cell::Bounds { upper, lower, weight } => Some((upper, lower, weight)),
                _ => None,
            })
            .collect()
    }

    /// `ω₀_eff·σ_eff` for one series of a fig4 table.
    pub fn width_products(&self, s: usize) -> Vec<Option<f64>> {
        self.cells
            .iter()
            .map(|row| match row[s] {
                Cell::Effective { omega0_eff, sigma_eff, .. } => Some(omega0_eff * sigma_eff),
                _ => None,
            })
            .collect()
    }
}
