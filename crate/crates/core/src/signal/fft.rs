use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::{Grid, SampledSignal, Spectrum};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn dft_in_place(buf: &mut [Complex64], direction: FftDirection) {
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft(buf.len(), direction));
    fft.process(buf);
}

/// `e^{iπ p/q}` with the angle reduced in integer arithmetic.
fn pi_phase(p: i64, q: i64) -> Complex64 {
    let mut r = p.rem_euclid(2 * q);
    if r > q {
        r -= 2 * q;
    }
    Complex64::from_polar(1.0, PI * r as f64 / q as f64)
}

/// Phase `e^{iω_j t0}` for every frequency sample.
fn output_phases(grid: &Grid) -> Vec<Complex64> {
    let n = grid.n_samples() as i64;
    let shift = grid.shift_from_centered();
    (0..grid.n_samples())
        .map(|j| {
            let base = pi_phase(-(2 * j as i64 - n + 1) * (n - 1), 2 * n);
            if shift == 0.0 {
                base
            } else {
                base * Complex64::from_polar(1.0, grid.omega(j) * shift)
            }
        })
        .collect()
}

/// `G(ω) = (2π)^{-1/2} Σ_k g(t_k) e^{iωt_k} dt`.
pub fn fourier_forward(sig: &SampledSignal) -> Spectrum {
    let grid = *sig.grid();
    let n = grid.n_samples() as i64;
    let mut buf: Vec<Complex64> = sig
        .values()
        .iter()
        .enumerate()
        .map(|(k, &g)| g * pi_phase(-(n - 1) * k as i64, n))
        .collect();
    dft_in_place(&mut buf, FftDirection::Inverse);
    let scale = grid.dt() / (2.0 * PI).sqrt();
    for (v, ph) in buf.iter_mut().zip(output_phases(&grid)) {
        *v *= ph * scale;
    }
    Spectrum::from_raw(grid, buf)
}

/// `g(t) = (2π)^{-1/2} Σ_j G(ω_j) e^{−iω_j t} dω`.
pub fn fourier_inverse(spec: &Spectrum) -> SampledSignal {
    let grid = *spec.grid();
    let n = grid.n_samples() as i64;
    let mut buf: Vec<Complex64> = spec
        .values()
        .iter()
        .zip(output_phases(&grid))
        .map(|(&g, ph)| g * ph.conj())
        .collect();
    dft_in_place(&mut buf, FftDirection::Forward);
    let scale = grid.dw() / (2.0 * PI).sqrt();
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= pi_phase((n - 1) * k as i64, n) * scale;
    }
    SampledSignal::from_raw(grid, buf)
}
