use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Number-basis coefficients `⟨k|X⟩`, `k ≤ trunc`, of the quadrature eigenvector
/// `|X⟩ = π^{−1/4} e^{−X²/2} e^{−a†²/2 + √2 X a†}|0⟩`.
///
/// The exponential is expanded as a power series in `A = −a†²/2 + √2 X a†`.
/// `A` only raises the occupation, so `Aᵐ|0⟩` has no weight below level `m` and
/// the first `trunc + 1` terms give the retained coefficients exactly.
pub fn eigenvector_coefficients(x: f64, trunc: usize) -> Vec<f64> {
    let dim = trunc + 1;
    let sq: Vec<f64> = (0..=dim).map(|k| (k as f64).sqrt()).collect();
    let mut term = vec![0.0; dim];
    term[0] = 1.0;
    let mut sum = term.clone();
    for m in 1..=trunc {
        let mut next = vec![0.0; dim];
        for k in 0..dim {
            let v = term[k];
            if v == 0.0 {
                continue;
            }
            // a†|k⟩ = √(k+1)|k+1⟩, a†²|k⟩ = √((k+1)(k+2))|k+2⟩
            if k + 1 < dim {
                next[k + 1] += 2f64.sqrt() * x * sq[k + 1] * v;
            }
            if k + 2 < dim {
                next[k + 2] -= 0.5 * sq[k + 1] * sq[k + 2] * v;
            }
        }
        for v in next.iter_mut() {
            *v /= m as f64;
        }
        for (s, v) in sum.iter_mut().zip(&next) {
            *s += v;
        }
        term = next;
    }
    let pref = PI.powf(-0.25) * (-0.5 * x * x).exp();
    sum.iter().map(|v| v * pref).collect()
}

/// `⟨n|X⟩` from the series expansion of the quadrature eigenvector.
pub fn eigenvector_overlap(n: usize, x: f64, trunc: usize) -> Result<f64> {
    if n > trunc {
        return Err(Error::Truncation(format!("level {n} above truncation {trunc}")));
    }
    Ok(eigenvector_coefficients(x, trunc)[n])
}

/// Largest residual `‖(a+a†)/√2 |X⟩ − X|X⟩‖` over `X ∈ {0, ±0.5}`, on levels
/// below `trunc − 1` where the truncated ladders act exactly.
pub fn position_operator_check(trunc: usize) -> Result<f64> {
    if trunc < 20 {
        return Err(Error::Truncation(format!("need trunc >= 20, got {trunc}")));
    }
    let mut worst: f64 = 0.0;
    for &x in &[0.0, 0.5, -0.5] {
        worst = worst.max(position_residual(&eigenvector_coefficients(x, trunc), x));
    }
    Ok(worst)
}

/// Residual of the quadrature eigen-equation for the coefficient vector `c`.
pub fn position_residual(c: &[f64], x: f64) -> f64 {
    let trunc = c.len() - 1;
    let mut s = 0.0;
    for k in 0..trunc.saturating_sub(1) {
        let lower = if k > 0 { (k as f64).sqrt() * c[k - 1] } else { 0.0 };
        let upper = ((k + 1) as f64).sqrt() * c[k + 1];
        let r = (lower + upper) / 2f64.sqrt() - x * c[k];
        s += r * r;
    }
    s.sqrt()
}
