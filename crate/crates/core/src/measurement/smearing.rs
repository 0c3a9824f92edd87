use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftDirection;

use crate::error::{Error, Result};
use crate::signal::{
    dft_in_place, fourier_forward, negative_time_weight, nu_constant, Grid, SampledSignal,
    Spectrum, VacuumModeWeights,
};

/// Smearing function of a field measurement local to `t < 0`.
#[derive(Debug, Clone)]
pub struct SmearingResult {
    /// `f(t) = [f₀e^{iφ/2}ξ(t) + c.c.]·[t < 0]`.
    pub f_signal: SampledSignal,
    pub f_spec: Spectrum,
    /// `ζ(ω) = F(ω)/𝓔*(ω)`.
    pub zeta_spec: Spectrum,
    /// `ζ(t)`, computed directly in the time domain; zero for `t ≥ 0`.
    pub zeta_signal: SampledSignal,
    /// Phase reduced to `(−π, π]`.
    pub phi: f64,
    pub f0: f64,
    pub mu: f64,
    pub nu: Complex64,
}

/// Reduces a phase to `(−π, π]`.
pub fn canonical_phase(phi: f64) -> f64 {
    let r = phi.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Phase maximizing the overlap: `φ = −arg ν`.
pub fn optimal_phase(nu: Complex64) -> f64 {
    -nu.arg()
}

pub fn build_smearing(
    xi_sig: &SampledSignal,
    phi: f64,
    weights: VacuumModeWeights,
) -> Result<SmearingResult> {
    let mu = negative_time_weight(xi_sig)?;
    if mu == 0.0 {
        return Err(Error::DegenerateMeasurement("target has no negative-time tail".into()));
    }
    let nu = nu_constant(xi_sig);
    let phi = canonical_phase(phi);
    let grid = *xi_sig.grid();
    let rot = Complex64::from_polar(1.0, phi / 2.0);

    let unit: Vec<f64> = xi_sig
        .values()
        .iter()
        .enumerate()
        .map(|(k, &v)| if grid.time(k) < 0.0 { 2.0 * (rot * v).re } else { 0.0 })
        .collect();
    let f_unit = SampledSignal::new(grid, unit.iter().map(|&r| Complex64::new(r, 0.0)).collect())?;
    let spec_unit = fourier_forward(&f_unit);
    let positive_norm = spec_unit.positive_part().norm_sqr();
    if positive_norm <= 1e-30 * mu {
        return Err(Error::DegenerateMeasurement(
            "smearing function vanishes for this phase".into(),
        ));
    }
    let f0 = 1.0 / positive_norm.sqrt();
    let scale = Complex64::new(f0, 0.0);
    let f_signal = f_unit.scaled(scale);
    let f_spec = spec_unit.scaled(scale);

    let zeta_spec = Spectrum::new(
        grid,
        f_spec
            .values()
            .iter()
            .enumerate()
            .map(|(j, &v)| v / weights.field(grid.omega(j)).conj())
            .collect(),
    )?;

    let f_real: Vec<f64> = unit.iter().map(|v| v * f0).collect();
    let zeta_t = weyl_half_integral(&f_real, &grid);
    let zeta_signal = SampledSignal::new(
        grid,
        zeta_t.iter().map(|&v| Complex64::new(-v / weights.k_const, 0.0)).collect(),
    )?;

    Ok(SmearingResult { f_signal, f_spec, zeta_spec, zeta_signal, phi, f0, mu, nu })
}

/// `c_ξ = ∫₀^∞ ξ₁*(ω) ξ(ω) dω` with `ξ₁ = 𝓔*ζ`.
pub fn spectral_overlap_c_xi(
    xi_spec: &Spectrum,
    smear: &SmearingResult,
    weights: VacuumModeWeights,
) -> Result<Complex64> {
    let grid = *xi_spec.grid();
    if !grid.same_as(smear.zeta_spec.grid()) {
        return Err(Error::GridMismatch);
    }
    if smear.f0 <= 0.0 || !smear.f0.is_finite() {
        return Err(Error::DegenerateMeasurement("smearing has no valid normalization".into()));
    }
    let s: Complex64 = (0..grid.n_samples())
        .filter(|&j| grid.omega(j) > 0.0)
        .map(|j| {
            let xi1 = weights.field(grid.omega(j)).conj() * smear.zeta_spec.values()[j];
            xi1.conj() * xi_spec.values()[j]
        })
        .sum();
    Ok(s * grid.dw())
}

/// `|c_ξ|²` from `(μ, ν, φ)`:
/// `(μ² + |ν|² + 2μ|ν|cos(φ+θ_ν)) / (μ + |ν|cos(φ+θ_ν))`.
pub fn c_xi_abs2_from_tail(mu: f64, nu: Complex64, phi: f64) -> f64 {
    let c = nu.norm() * (phi + nu.arg()).cos();
    (mu * mu + nu.norm_sqr() + 2.0 * mu * c) / (mu + c)
}

/// Right-sided fractional integral of order 1/2,
/// `(W^{1/2} f)(t) = π^{−1/2} ∫_t^0 f(s)(s−t)^{−1/2} ds` for `t < 0`, zero otherwise.
///
/// `f` is taken as piecewise linear through the negative-time samples and
/// extrapolated linearly to `t = 0⁻`. Each segment is integrated exactly against
/// the kernel; the sums over segments are evaluated as FFT correlations.
/// Under the unitary transform this is the time-domain form of division by
/// `(iω)^{1/2}`.
pub(crate) fn weyl_half_integral(f: &[f64], grid: &Grid) -> Vec<f64> {
    let n = grid.n_samples();
    let h = grid.dt();
    let mut out = vec![0.0; n];
    let neg: Vec<usize> = (0..n).filter(|&k| grid.time(k) < 0.0).collect();
    let Some(&last) = neg.last() else {
        return out;
    };
    let first = neg[0];
    let vals = &f[first..=last];
    let m = vals.len();
    let tail_len = -grid.time(last);
    let f_end = if m >= 2 {
        vals[m - 1] + (vals[m - 1] - vals[m - 2]) * tail_len / h
    } else {
        vals[m - 1]
    };

    // exact segment integrals of u^{-1/2} against the two hat functions
    let weights = |ua: f64, len: f64| -> (f64, f64) {
        let p = ua.sqrt();
        let q = (ua + len).sqrt();
        let d = len / (p + q);
        let i0 = 2.0 * d;
        let i1 = 2.0 / 3.0 * d * d * (q + 2.0 * p);
        (i0 - i1 / len, i1 / len)
    };

    let full = m - 1;
    let mut acc = vec![0.0; m];
    if full > 0 {
        let mut alpha = vec![0.0; full];
        let mut beta = vec![0.0; full];
        for j in 0..full {
            let (a, b) = weights(j as f64 * h, h);
            alpha[j] = a;
            beta[j] = b;
        }
        // acc[i] = Σ_{j < full − i} α_j vals[i+j] + β_j vals[i+j+1]
        let size = (2 * full).next_power_of_two();
        let pad = |src: &[f64]| -> Vec<Complex64> {
            let mut v = vec![Complex64::new(0.0, 0.0); size];
            for (i, &x) in src.iter().enumerate() {
                v[i] = Complex64::new(x, 0.0);
            }
            dft_in_place(&mut v, FftDirection::Forward);
            v
        };
        let rev0: Vec<f64> = (0..full).map(|k| vals[full - 1 - k]).collect();
        let rev1: Vec<f64> = (0..full).map(|k| vals[full - k]).collect();
        let (fa, fb, f0, f1) = (pad(&alpha), pad(&beta), pad(&rev0), pad(&rev1));
        let mut conv: Vec<Complex64> =
            (0..size).map(|i| fa[i] * f0[i] + fb[i] * f1[i]).collect();
        dft_in_place(&mut conv, FftDirection::Inverse);
        for (i, a) in acc.iter_mut().enumerate().take(full) {
            *a = conv[full - 1 - i].re / size as f64;
        }
    }
    for (i, a) in acc.iter_mut().enumerate() {
        let (wa, wb) = weights((full - i) as f64 * h, tail_len);
        *a += wa * vals[m - 1] + wb * f_end;
    }
    let norm = 1.0 / PI.sqrt();
    for (i, a) in acc.into_iter().enumerate() {
        out[first + i] = a * norm;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dawson's integral `e^{−x²}∫₀ˣ e^{y²}dy` by composite Simpson.
    fn dawson(x: f64) -> f64 {
        let n = 4000;
        let h = x / n as f64;
        let s: f64 = (0..=n)
            .map(|i| {
                let y = h * i as f64;
                let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
                w * (y * y - x * x).exp()
            })
            .sum();
        s * h / 3.0
    }

    fn max_error(dt: f64, f: impl Fn(f64) -> f64, exact: impl Fn(f64) -> f64) -> f64 {
        let grid = Grid::centered(1 << 13, dt).unwrap();
        let vals: Vec<f64> = grid.times().into_iter().map(&f).collect();
        let out = weyl_half_integral(&vals, &grid);
        (0..grid.n_samples())
            .filter(|&k| grid.time(k) < 0.0 && grid.time(k) > -15.0)
            .map(|k| (out[k] - exact(grid.time(k))).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn constant_input_is_integrated_exactly() {
        let err = max_error(0.01, |_| 1.0, |t| 2.0 * (-t).sqrt() / PI.sqrt());
        assert!(err < 1e-11, "err {err:e}");
    }

    #[test]
    fn exponential_tail_matches_dawson_closed_form() {
        // W^{1/2}[e^s θ(−s)](t) = (2/√π) D(√|t|)
        let exact = |t: f64| 2.0 / PI.sqrt() * dawson((-t).sqrt());
        let coarse = max_error(0.02, f64::exp, exact);
        let fine = max_error(0.01, f64::exp, exact);
        assert!(fine < 2e-5, "err {fine:e}");
        let ratio = coarse / fine;
        assert!(ratio > 3.0, "second-order convergence expected, ratio {ratio}");
    }

    #[test]
    fn output_vanishes_for_nonnegative_time() {
        let grid = Grid::centered(256, 0.1).unwrap();
        let vals: Vec<f64> = grid.times().iter().map(|t| (t * 0.7).cos()).collect();
        let out = weyl_half_integral(&vals, &grid);
        for (k, v) in out.iter().enumerate() {
            if grid.time(k) >= 0.0 {
                assert_eq!(*v, 0.0);
            }
        }
    }

    #[test]
    fn canonical_phase_range() {
        for &p in &[-7.0, -PI, 0.0, PI, 3.5, 12.0] {
            let c = canonical_phase(p);
            assert!(c > -PI && c <= PI);
            let turns = (p - c) / (2.0 * PI);
            assert!((turns - turns.round()).abs() < 1e-12);
        }
    }
}
