//! Self-checks grouped into suites, one result per property.
//!
//! Each check recomputes a quantity along an independent route (or against a
//! known limit) and reports whether it lands within the fixed tolerance.

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::Complex64;

use crate::bounds::{
    causal_lower_worst_case, causal_upper, physical_lower_worst_case, physical_upper,
};
use crate::construction::{closed_form_fidelity, closed_form_fidelity_n, construct_localized_state};
use crate::demos::{instantaneous_localization_demo, photon_energy_envelope};
use crate::error::{Error, Result};
use crate::fock::{eigenvector_overlap, licht_residuals, oracle_fidelity};
use crate::measurement::{
    build_smearing, hermite_integral_bound_check, hermite_integral_limit,
    hermite_interval_integrals, hermite_local_maxima, hermite_psi, optimal_phase,
    spectral_overlap_c_xi,
};
use crate::pulses::{gaussian_pulse, physical_target_from_seed, GaussianSpec};
use crate::signal::{
    fourier_forward, fourier_inverse, negative_frequency_weight, Grid, VacuumModeWeights,
};
use crate::sweep::{run_figure_sweep, Cell, FigureId, SweepConfig, SweepTable};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Optional per-case lines backing the summary.
    pub rows: Vec<String>,
}

impl CheckResult {
    fn from_outcome(name: &'static str, outcome: Result<(bool, String)>) -> Self {
        match outcome {
            Ok((passed, detail)) => Self { name, passed, detail, rows: Vec::new() },
            Err(e) => Self { name, passed: false, detail: format!("error: {e}"), rows: Vec::new() },
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Fock,
    Measurement,
    Signal,
    Demos,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "fock" => Ok(Suite::Fock),
            "measurement" => Ok(Suite::Measurement),
            "signal" => Ok(Suite::Signal),
            "demos" => Ok(Suite::Demos),
            _ => Err(Error::Domain(format!("unknown suite '{s}'"))),
        }
    }
}

type Check = fn() -> CheckResult;

fn suite_checks(suite: Suite) -> Vec<Check> {
    let fock: [Check; 3] = [check_oracle_equivalence, check_isometry_witnesses, check_eigenvector_overlaps];
    let signal: [Check; 3] = [check_first_order_coefficients, check_analytic_eta, check_g_tilde_causality];
    let measurement: [Check; 2] = [check_measurement_chain, check_hermite_bound];
    let demos: [Check; 1] = [check_instantaneous_localization];
    match suite {
        Suite::Fock => fock.to_vec(),
        Suite::Signal => signal.to_vec(),
        Suite::Measurement => measurement.to_vec(),
        Suite::Demos => demos.to_vec(),
        Suite::All => {
            let mut v = fock.to_vec();
            v.extend(signal);
            v.extend(measurement);
            v.extend(demos);
            v.push(check_figures);
            v
        }
    }
}

/// Runs every check of `suite` in a fixed order.
pub fn run_suite(suite: Suite) -> Vec<CheckResult> {
    suite_checks(suite).into_iter().map(|c| c()).collect()
}

/// One row of the closed-form versus oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRow {
    pub eta_tilde: f64,
    pub n: u32,
    pub closed_form: f64,
    pub oracle: f64,
    pub trunc: usize,
}

/// Closed-form `F_n` and the oracle `|c₁|` for `η̃ ∈ {0.01, 0.05, 0.1, 0.2, 0.3}`, `n ≤ 3`.
pub fn oracle_table() -> Result<Vec<OracleRow>> {
    let cases: Vec<(f64, u32)> = [0.01, 0.05, 0.1, 0.2, 0.3]
        .iter()
        .flat_map(|&e| (1..=3).map(move |n| (e, n)))
        .collect();
    cases
        .par_iter()
        .map(|&(eta_tilde, n)| {
            let closed_form = closed_form_fidelity_n(eta_tilde, n)?;
            let o = oracle_fidelity(eta_tilde, n)?;
            Ok(OracleRow { eta_tilde, n, closed_form, oracle: o.value, trunc: o.trunc })
        })
        .collect()
}

/// Closed-form `F_n` against `|c₁|` from the truncated Fock simulation.
pub fn check_oracle_equivalence() -> CheckResult {
    const TOL: f64 = 1e-8;
    let start = Instant::now();
    let table = oracle_table();
    let secs = start.elapsed().as_secs_f64();
    let rows = table
        .as_ref()
        .map(|t| {
            t.iter()
                .map(|r| {
                    format!(
                        "eta_tilde={} n={} closed={:.12} oracle={:.12} diff={:.2e} trunc={}",
                        r.eta_tilde,
                        r.n,
                        r.closed_form,
                        r.oracle,
                        (r.closed_form - r.oracle).abs(),
                        r.trunc
                    )
                })
                .collect()
        })
        .unwrap_or_default();
    let outcome = table.map(|t| {
        let worst = t.iter().map(|r| (r.closed_form - r.oracle).abs()).fold(0.0, f64::max);
        (
            worst <= TOL && secs < 60.0,
            format!(
                "max |F_n - |c1|| = {worst:.3e} (tol {TOL:e}) over {} cases in {secs:.2} s (limit 60 s)",
                t.len()
            ),
        )
    });
    CheckResult { rows, ..CheckResult::from_outcome("oracle_equivalence", outcome) }
}

/// Repeated Richardson extrapolation of `q(h)` as `h → 0` for an expansion in
/// integer powers of `h`.
fn richardson(q: impl Fn(f64) -> Result<f64>, h0: f64, levels: usize) -> Result<f64> {
    let mut row: Vec<f64> = (0..levels)
        .map(|k| q(h0 / 2f64.powi(k as i32)))
        .collect::<Result<_>>()?;
    for order in 1..levels {
        let f = 2f64.powi(order as i32);
        row = row.windows(2).map(|w| w[1] + (w[1] - w[0]) / (f - 1.0)).collect();
    }
    Ok(row[0])
}

/// Expansion constants of the bounds and of `F`, extracted numerically.
pub fn check_first_order_coefficients() -> CheckResult {
    const TOL: f64 = 1e-3;
    let outcome = (|| {
        let h0 = 1e-2;
        let levels = 4;
        let cases: [(&str, f64, f64); 5] = [
            (
                "causal lower",
                richardson(|h| Ok((1.0 - causal_lower_worst_case(h, 1)?) / h), h0, levels)?,
                2.0 - 2f64.sqrt(),
            ),
            ("causal upper", richardson(|h| Ok((1.0 - causal_upper(h, 1)) / h), h0, levels)?, 0.5),
            (
                "physical lower",
                richardson(|h| Ok((1.0 - physical_lower_worst_case(h, 1)?) / h), h0, levels)?,
                1.0,
            ),
            (
                "physical upper (quadratic)",
                richardson(|h| Ok((1.0 - physical_upper(h, 0.0, 1)) / (h * h)), h0, levels)?,
                1.0 / (PI * E),
            ),
            (
                "F",
                richardson(|h| Ok((1.0 - closed_form_fidelity(h)?) / h), h0, levels)?,
                1.5 - 2f64.sqrt(),
            ),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (label, got, want) in cases {
            ok &= (got - want).abs() <= TOL;
            parts.push(format!("{label} {got:.6} vs {want:.6}"));
        }
        Ok((ok, format!("{} (tol {TOL:e})", parts.join("; "))))
    })();
    CheckResult::from_outcome("first_order_coefficients", outcome)
}

/// Negative-frequency weight of untruncated Gaussians against `(1 − erf(ω₀σ))/2`.
pub fn check_analytic_eta() -> CheckResult {
    const TOL: f64 = 1e-6;
    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for &ws in &[0.5, 1.0, 2.0] {
            let spec = GaussianSpec::dimensionless(ws, 3.0, false)?;
            let grid = spec.default_grid(1 << 16)?;
            let g = gaussian_pulse(&spec, &grid)?;
            let eta = negative_frequency_weight(&fourier_forward(&g))?;
            let exact = 0.5 * (1.0 - libm::erf(ws));
            worst = worst.max((eta - exact).abs());
        }
        Ok((worst <= TOL, format!("max |eta - eta_inf| = {worst:.3e} (tol {TOL:e})")))
    })();
    CheckResult::from_outcome("analytic_eta", outcome)
}

/// The inverse transform of `G̃` must stay causal for truncated Gaussian seeds.
pub fn check_g_tilde_causality() -> CheckResult {
    const TOL: f64 = 1e-6;
    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for &ws in &[0.5, 1.0, 2.0] {
            for &tr in &[0.0, 1.0, 3.0] {
                let spec = GaussianSpec::dimensionless(ws, tr, true)?;
                let grid = spec.default_grid(1 << 14)?;
                let c = construct_localized_state(&gaussian_pulse(&spec, &grid)?)?;
                let g_tilde = fourier_inverse(&c.g_tilde);
                worst = worst.max(g_tilde.max_abs_negative() / g_tilde.peak_abs());
            }
        }
        Ok((worst <= TOL, format!("max_(t<0) |g~|/peak = {worst:.3e} (tol {TOL:e})")))
    })();
    CheckResult::from_outcome("g_tilde_causality", outcome)
}

/// Allowed relative difference between `c_ξ` computed with the time-domain
/// `ζ(t)` and with the spectral `ζ(ω)`. The two routes differ by discretization
/// error of order `dt`.
pub const ZETA_ROUTE_TOL: f64 = 2e-2;

/// `|c_ξ|² = μ + |ν|` at the optimal phase, and anticausality of `ζ(t)`.
pub fn check_measurement_chain() -> CheckResult {
    const TOL: f64 = 1e-6;
    let outcome = (|| {
        let weights = VacuumModeWeights::default();
        let mut worst_c: f64 = 0.0;
        let mut worst_tail: f64 = 0.0;
        let mut worst_route: f64 = 0.0;
        for &(ws, tr) in &[(0.5, 1.0), (1.0, 0.0), (2.0, 1.0)] {
            let spec = GaussianSpec::dimensionless(ws, tr, false)?;
            let grid = spec.default_grid(1 << 16)?;
            let xi = physical_target_from_seed(&spec, &grid)?;
            let xi_t = fourier_inverse(&xi);
            let nu = crate::signal::nu_constant(&xi_t);
            let smear = build_smearing(&xi_t, optimal_phase(nu), weights)?;
            let c = spectral_overlap_c_xi(&xi, &smear, weights)?;
            worst_c = worst_c.max((c.norm_sqr() - (smear.mu + nu.norm())).abs());

            let zeta = &smear.zeta_signal;
            let g = zeta.grid();
            let tail = (0..g.n_samples())
                .filter(|&k| g.time(k) >= 0.0)
                .map(|k| zeta.values()[k].norm())
                .fold(0.0, f64::max);
            worst_tail = worst_tail.max(tail / zeta.peak_abs());
            worst_route = worst_route.max(zeta_route_mismatch(&xi, c, &smear, weights));
        }
        Ok((
            worst_c <= TOL && worst_tail <= TOL && worst_route <= ZETA_ROUTE_TOL,
            format!(
                "max ||c|^2 - (mu+|nu|)| = {worst_c:.3e} (tol {TOL:e}); \
                 max_(t>=0) |zeta|/peak = {worst_tail:.3e} (tol {TOL:e}); \
                 c_xi time-route mismatch {worst_route:.3e} (tol {ZETA_ROUTE_TOL:e})"
            ),
        ))
    })();
    CheckResult::from_outcome("measurement_chain", outcome)
}

/// `|c_t − c|/|c|` where `c_t` uses the transform of the time-domain `ζ(t)`.
fn zeta_route_mismatch(
    xi: &crate::signal::Spectrum,
    c: Complex64,
    smear: &crate::measurement::SmearingResult,
    weights: VacuumModeWeights,
) -> f64 {
    let from_time = fourier_forward(&smear.zeta_signal);
    let g = *from_time.grid();
    let c_t: Complex64 = (0..g.n_samples())
        .filter(|&j| g.omega(j) > 0.0)
        .map(|j| (weights.field(g.omega(j)).conj() * from_time.values()[j]).conj() * xi.values()[j])
        .sum::<Complex64>()
        * g.dw();
    (c_t - c).norm() / c.norm()
}

/// Quadrature bound on `ψ_k²` over the indicator interval and the `ψ₁₅` maximum.
pub fn check_hermite_bound() -> CheckResult {
    let outcome = (|| {
        let bound_ok = hermite_integral_bound_check(100)?;
        let (vals, _) = hermite_interval_integrals(1);
        let eq_gap = (vals[1] - hermite_integral_limit()).abs();
        let maxima = hermite_local_maxima(15, 0.6, 1.1);
        let near = maxima.iter().find(|(x, _)| (x - 0.85).abs() < 0.05).copied();
        let (max_ok, max_text) = match near {
            Some((x, v)) => (v < 0.35, format!("psi_15 max {v:.5} at x = {x:.5}")),
            None => (false, "no psi_15 maximum near 0.85".into()),
        };
        Ok((
            bound_ok && eq_gap <= 1e-12 && max_ok,
            format!(
                "bound holds for k=1..100: {bound_ok}; |I_1 - limit| = {eq_gap:.3e} (tol 1e-12); {max_text} (< 0.35)"
            ),
        ))
    })();
    CheckResult::from_outcome("hermite_bound", outcome)
}

/// Series coefficients of the quadrature eigenvector against `ψ_n(x)`.
pub fn check_eigenvector_overlaps() -> CheckResult {
    const TOL: f64 = 1e-10;
    let outcome = (|| {
        let mut worst: f64 = 0.0;
        for &x in &[0.0, 0.5, -0.5, 2.0, -2.0] {
            for n in 0..=10 {
                worst = worst.max((eigenvector_overlap(n, x, 40)? - hermite_psi(n, x)).abs());
            }
        }
        Ok((worst <= TOL, format!("max |<n|X> - psi_n(X)| = {worst:.3e} (tol {TOL:e})")))
    })();
    CheckResult::from_outcome("eigenvector_overlaps", outcome)
}

/// Isometry of `W` and its commutation with `B`, `B†` on low occupations.
pub fn check_isometry_witnesses() -> CheckResult {
    const TOL: f64 = 1e-10;
    const INTERIOR: usize = 6;
    let outcome = (|| {
        let mut ok = true;
        let mut parts = Vec::new();
        for &e in &[0.05, 0.2] {
            let r = licht_residuals(e, INTERIOR)?;
            ok &= r.isometry <= TOL && r.commutator_b <= TOL && r.commutator_b_dag <= TOL;
            parts.push(format!(
                "eta~={e}: N={} W'W-1 {:.2e}, [W,B] {:.2e}, [W,B'] {:.2e}, SaS'-map {:.2e}",
                r.trunc, r.isometry, r.commutator_b, r.commutator_b_dag, r.squeeze_transform
            ));
        }
        Ok((ok, format!("{} (tol {TOL:e}, n1,n2 <= {INTERIOR})", parts.join("; "))))
    })();
    CheckResult::from_outcome("isometry_witnesses", outcome)
}

/// A field profile supported on `|x| < l/2` at `t = 0` spreads outside by `t = l`.
pub fn check_instantaneous_localization() -> CheckResult {
    let outcome = (|| {
        let l = 1.0;
        let grid = Grid::centered(1 << 14, 0.005)?;
        let weights = VacuumModeWeights::default();
        let g = instantaneous_localization_demo(l, 20.0, &grid, weights)?;
        let field = photon_energy_envelope(&g, weights, &[0.0, l])?;
        let leak0 = field.outside_sup(0, 0.5 * l) / field.peak(0);
        let leak1 = field.outside_sup(1, 0.5 * l) / field.peak(1);
        let cone = field.outside_sup(1, 0.5 * l + l + 0.1) / field.peak(1);
        Ok((
            leak0 <= 1e-6 && leak1 > 1e-3,
            format!(
                "outside/peak at t=0: {leak0:.3e} (<= 1e-6); at t=l: {leak1:.3e} (> 1e-3); \
                 beyond light cone at t=l: {cone:.3e}"
            ),
        ))
    })();
    CheckResult::from_outcome("instantaneous_localization", outcome)
}

fn finite_rows(table: &SweepTable, s: usize) -> Vec<(f64, f64)> {
    table.series_bounds(s).into_iter().flatten().map(|(u, l, _)| (u, l)).collect()
}

/// Saturation band, as a fraction of the total rise of a curve.
pub const SATURATION_BAND: f64 = 0.1;

/// Nondecreasing up to rounding until the curve enters its saturation band
/// `[max − δ·rise, max]`, ending inside that band, and rising by at most
/// `δ·rise` over its last quarter.
pub fn monotone_then_saturating(v: &[f64]) -> bool {
    if v.len() < 4 {
        return false;
    }
    let max = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let rise = max - v[0];
    let band = max - SATURATION_BAND * rise;
    let monotone = v.windows(2).all(|w| w[1] >= w[0] - 1e-9 || w[0] >= band);
    let tail = &v[v.len() * 3 / 4..];
    let tail_rise = tail.last().unwrap() - tail[0];
    monotone && *v.last().unwrap() >= band && tail_rise <= SATURATION_BAND * rise
}

/// Nondecreasing up to `1e−9`.
pub fn nondecreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] >= w[0] - 1e-9)
}

fn lower_le_upper(table: &SweepTable) -> bool {
    (0..table.config.series.len())
        .all(|s| finite_rows(table, s).iter().all(|&(u, l)| l <= u + 1e-12))
}

/// Qualitative shape of the swept bounds and of the effective-width product.
pub fn check_figures() -> CheckResult {
    let outcome = (|| {
        let mut ok = true;
        let mut parts = Vec::new();
        for fig in FigureId::ALL {
            let table = run_figure_sweep(&SweepConfig::default_for(fig))?;
            let (good, text) = figure_properties(&table);
            ok &= good;
            parts.push(format!("{}: {text}", fig.name()));
        }
        Ok((ok, parts.join("; ")))
    })();
    CheckResult::from_outcome("figures", outcome)
}

/// Shape properties of one sweep table.
pub fn figure_properties(table: &SweepTable) -> (bool, String) {
    let fig = table.config.figure;
    let n_series = table.config.series.len();
    match fig {
        FigureId::Fig4 => {
            let mut ok = true;
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for s in 0..n_series {
                for (x, p) in table.config.sweep.iter().zip(table.width_products(s)) {
                    if *x <= 0.2 {
                        let Some(p) = p else {
                            ok = false;
                            continue;
                        };
                        lo = lo.min(p);
                        hi = hi.max(p);
                    }
                }
            }
            ok &= lo >= 1.2 && hi <= 1.4;
            (ok, format!("plateau (omega0*sigma_pre <= 0.2) in [{lo:.4}, {hi:.4}], want 1.3 +- 0.1"))
        }
        FigureId::Fig2 | FigureId::Fig5 | FigureId::Fig3 | FigureId::Fig6 => {
            let mut shape = true;
            for s in 0..n_series {
                let rows = finite_rows(table, s);
                let up: Vec<f64> = rows.iter().map(|r| r.0).collect();
                let lo: Vec<f64> = rows.iter().map(|r| r.1).collect();
                shape &= monotone_then_saturating(&up) && monotone_then_saturating(&lo);
            }
            let le = lower_le_upper(table);
            let mut ok = shape && le;
            let mut text = format!("monotone-then-saturating {shape}, lower <= upper {le}");
            if matches!(fig, FigureId::Fig3 | FigureId::Fig6) {
                // series are stored by increasing τ/σ, so neither bound may decrease across them
                let ordered = table.cells.iter().all(|row| {
                    let pairs: Vec<(f64, f64)> = row
                        .iter()
                        .filter_map(|c| match *c {
                            Cell::Bounds { upper, lower, .. } => Some((upper, lower)),
                            _ => None,
                        })
                        .collect();
                    pairs.len() < row.len()
                        || (nondecreasing(&pairs.iter().map(|p| p.0).collect::<Vec<_>>())
                            && nondecreasing(&pairs.iter().map(|p| p.1).collect::<Vec<_>>()))
                });
                ok &= ordered;
                text.push_str(&format!(", ordered by tau/sigma {ordered}"));
            }
            (ok, text)
        }
    }
}
