use std::f64::consts::{E, FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};

/// Number of Simpson intervals on the indicator interval `[−1/√2, 1/√2]`.
pub const SIMPSON_INTERVALS: usize = 1 << 12;

/// Half-width of the indicator interval.
pub const INDICATOR_HALF_WIDTH: f64 = FRAC_1_SQRT_2;

/// `ψ_k(x)`, the normalized Hermite function, by the three-term recurrence.
pub fn hermite_psi(k: usize, x: f64) -> f64 {
    hermite_psi_all(k, x)[k]
}

/// `ψ_0(x), …, ψ_k(x)`.
pub fn hermite_psi_all(k: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if k >= 1 {
        out.push(2f64.sqrt() * x * out[0]);
    }
    for j in 1..k {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * x * out[j] - (jf / (jf + 1.0)).sqrt() * out[j - 1];
        out.push(next);
    }
    out
}

/// Hermite functions tabulated on a fixed set of points.
#[derive(Debug, Clone)]
pub struct HermiteTable {
    max_order: usize,
    xs: Vec<f64>,
    /// `values[k][i] = ψ_k(xs[i])`.
    values: Vec<Vec<f64>>,
}

impl HermiteTable {
    pub fn new(max_order: usize, xs: Vec<f64>) -> Self {
        let mut values = vec![Vec::with_capacity(xs.len()); max_order + 1];
        for &x in &xs {
            for (k, v) in hermite_psi_all(max_order, x).into_iter().enumerate() {
                values[k].push(v);
            }
        }
        Self { max_order, xs, values }
    }

    /// Table on `n + 1` equally spaced points of `[a, b]`.
    pub fn uniform(max_order: usize, a: f64, b: f64, n: usize) -> Self {
        let xs = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
        Self::new(max_order, xs)
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn psi(&self, k: usize) -> &[f64] {
        &self.values[k]
    }
}

/// Composite Simpson rule for samples on a uniform grid with an even number of intervals.
pub fn simpson(ys: &[f64], h: f64) -> f64 {
    let n = ys.len() - 1;
    debug_assert!(n.is_multiple_of(2) && n >= 2);
    let mut s = ys[0] + ys[n];
    for (i, y) in ys.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * y } else { 2.0 * y };
    }
    s * h / 3.0
}

fn binomial_weights(n: u32, p: f64) -> Vec<f64> {
    // C(n,k) pᵏ (1−p)^{n−k}, built by the ratio of consecutive terms
    let mut c = 1.0;
    (0..=n)
        .map(|k| {
            if k > 0 {
                c *= (n - k + 1) as f64 / k as f64;
            }
            c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
        })
        .collect()
}

/// Outcome density of the smeared field quadrature for the target `|n_ξ⟩`:
/// `Σ_k C(n,k)|c_ξ|^{2k}(1−|c_ξ|²)^{n−k} ψ_k(x)²`.
pub fn projector_density_n_photon(n: u32, c_xi_abs2: f64, x: f64) -> f64 {
    let psi = hermite_psi_all(n as usize, x);
    binomial_weights(n, c_xi_abs2)
        .iter()
        .zip(&psi)
        .map(|(w, p)| w * p * p)
        .sum()
}

/// `∫_{−1/√2}^{1/√2} [ψ₀² − P_n] dX`, the vacuum-versus-target difference of
/// the probability of finding the outcome inside the indicator interval.
pub fn indicator_distance(n: u32, c_xi_abs2: f64) -> f64 {
    let l = INDICATOR_HALF_WIDTH;
    let h = 2.0 * l / SIMPSON_INTERVALS as f64;
    let ys: Vec<f64> = (0..=SIMPSON_INTERVALS)
        .map(|i| {
            let x = -l + h * i as f64;
            hermite_psi(0, x).powi(2) - projector_density_n_photon(n, c_xi_abs2, x)
        })
        .collect();
    simpson(&ys, h)
}

/// `erf(1/√2) − √(2/πe)`.
pub fn hermite_integral_limit() -> f64 {
    libm::erf(FRAC_1_SQRT_2) - (2.0 / (PI * E)).sqrt()
}

/// `∫_{−1/√2}^{1/√2} ψ_k² dX` for `k = 0..=k_max`, with a Richardson estimate
/// of the Simpson error from a run at half the resolution.
pub fn hermite_interval_integrals(k_max: usize) -> (Vec<f64>, Vec<f64>) {
    let integrate = |intervals: usize| -> Vec<f64> {
        let l = INDICATOR_HALF_WIDTH;
        let table = HermiteTable::uniform(k_max, -l, l, intervals);
        let h = 2.0 * l / intervals as f64;
        (0..=k_max)
            .map(|k| {
                let sq: Vec<f64> = table.psi(k).iter().map(|v| v * v).collect();
                simpson(&sq, h)
            })
            .collect()
    };
    let fine = integrate(SIMPSON_INTERVALS);
    let coarse = integrate(SIMPSON_INTERVALS / 2);
    let err = fine.iter().zip(&coarse).map(|(a, b)| (a - b).abs() / 15.0).collect();
    (fine, err)
}

/// Slack allowed in the bound comparison. The bound is attained exactly at
/// `k = 1, 2, 3`, so the comparison has to tolerate rounding.
pub const HERMITE_BOUND_SLACK: f64 = 1e-12;

/// Checks `∫ψ_k² ≤ erf(1/√2) − √(2/πe)` on the indicator interval for `1 ≤ k ≤ k_max`.
pub fn hermite_integral_bound_check(k_max: usize) -> Result<bool> {
    if k_max < 1 {
        return Err(Error::Domain("k_max must be at least 1".into()));
    }
    let (vals, errs) = hermite_interval_integrals(k_max);
    if let Some(k) = errs.iter().position(|&e| e > 1e-9) {
        return Err(Error::Convergence(format!(
            "Simpson error estimate for k = {k} is {:.3e}",
            errs[k]
        )));
    }
    let limit = hermite_integral_limit();
    Ok(vals[1..].iter().all(|&v| v <= limit + HERMITE_BOUND_SLACK))
}

/// Local maxima of `ψ_k` on `[a, b]`, refined by golden-section search.
pub fn hermite_local_maxima(k: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let n = 4000;
    let h = (b - a) / n as f64;
    let ys: Vec<f64> = (0..=n).map(|i| hermite_psi(k, a + h * i as f64)).collect();
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut out = Vec::new();
    for i in 1..n {
        if ys[i] > ys[i - 1] && ys[i] >= ys[i + 1] {
            let (mut lo, mut hi) = (a + h * (i - 1) as f64, a + h * (i + 1) as f64);
            for _ in 0..80 {
                let c = hi - g * (hi - lo);
                let d = lo + g * (hi - lo);
                if hermite_psi(k, c) > hermite_psi(k, d) {
                    hi = d;
                } else {
                    lo = c;
                }
            }
            let x = 0.5 * (lo + hi);
            out.push((x, hermite_psi(k, x)));
        }
    }
    out
}

/// Largest `|ψ_k(x)|` over `k_min ≤ k ≤ k_max` and `x` in the indicator interval.
pub fn hermite_envelope_on_interval(k_min: usize, k_max: usize) -> f64 {
    let l = INDICATOR_HALF_WIDTH;
    let n = 8000;
    let mut best: f64 = 0.0;
    for i in 0..=n {
        let x = -l + 2.0 * l * i as f64 / n as f64;
        let psi = hermite_psi_all(k_max, x);
        for v in &psi[k_min..=k_max] {
            best = best.max(v.abs());
        }
    }
    best
}
