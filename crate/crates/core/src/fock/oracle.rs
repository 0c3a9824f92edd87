use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::operator::{expm, FockOperator, FockTensor};
use crate::construction::gamma_from_eta_tilde;
use crate::error::{Error, Result};

/// Truncation is adequate once `tanh(γ)^N` drops below this.
pub const TRUNCATION_TOL: f64 = 1e-12;

/// Smallest `N` with `tanh(γ)^N < 1e−12`.
///
/// Unlike a fixed cap, this keeps the squeeze precondition satisfiable for
/// every `γ` (η̃ = 0.3 already needs N = 65).
pub fn default_trunc(gamma: f64) -> usize {
    let t = gamma.tanh().abs();
    if t == 0.0 {
        return 1;
    }
    (TRUNCATION_TOL.ln() / t.ln()).floor() as usize + 1
}

fn check_trunc(gamma: f64, trunc: usize) -> Result<()> {
    if gamma.tanh().abs().powi(trunc as i32) >= TRUNCATION_TOL {
        return Err(Error::Truncation(format!(
            "tanh({gamma})^{trunc} is not below {TRUNCATION_TOL:e}; use at least {}",
            default_trunc(gamma)
        )));
    }
    Ok(())
}

/// Generator `γ(a₁a₂ − a₁†a₂†)` built from the truncated ladder operators.
pub fn squeeze_generator(gamma: f64, trunc: usize) -> FockOperator {
    let a1 = FockOperator::annihilate_1(trunc);
    let a2 = FockOperator::annihilate_2(trunc);
    let down = a1.mul(&a2);
    let up = down.adjoint();
    down.sub(&up).scale(Complex64::new(gamma, 0.0))
}

/// `S = exp(γ(a₁a₂ − a₁†a₂†))` on the truncated space.
pub fn squeeze_operator(gamma: f64, trunc: usize) -> Result<FockOperator> {
    check_trunc(gamma, trunc)?;
    Ok(squeeze_generator(gamma, trunc).map_blocks(expm))
}

/// One sector block of `S`, mapping `n₁ − n₂ = d` to itself.
fn squeeze_sector(gamma: f64, trunc: usize, d: isize) -> DMatrix<Complex64> {
    // ⟨i+1|K|i⟩ = −γ√((n₁+1)(n₂+1)), ⟨i−1|K|i⟩ = γ√(n₁n₂), with (n₁, n₂) = (i + d⁺, i + d⁻)
    let dim = trunc + 1 - d.unsigned_abs();
    let (p, q) = if d >= 0 { (d as usize, 0) } else { (0, d.unsigned_abs()) };
    let mut k = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for i in 0..dim.saturating_sub(1) {
        let v = gamma * (((i + p + 1) * (i + q + 1)) as f64).sqrt();
        k[(i + 1, i)] = Complex64::new(-v, 0.0);
        k[(i, i + 1)] = Complex64::new(v, 0.0);
    }
    expm(&k)
}

/// `W^n = S†(ã₁†)ⁿS`.
pub fn licht_operator(gamma: f64, n: u32, trunc: usize) -> Result<FockOperator> {
    let s = squeeze_operator(gamma, trunc)?;
    let iso = FockOperator::isometry_1(trunc);
    let mut core = FockOperator::identity(trunc);
    for _ in 0..n {
        core = iso.mul(&core);
    }
    Ok(s.adjoint().mul(&core.mul(&s)))
}

/// Coefficients `c_k = ⟨n+k−1, k−1|Wⁿ|0,0⟩` for `k = 1, 2, …`.
///
/// Only the two sectors the vacuum passes through are exponentiated.
pub fn state_coefficients(gamma: f64, n: u32, trunc: usize) -> Result<Vec<Complex64>> {
    check_trunc(gamma, trunc)?;
    let n = n as usize;
    if n == 0 || n > trunc {
        return Err(Error::Domain(format!("photon number {n} outside 1..={trunc}")));
    }
    let s0 = squeeze_sector(gamma, trunc, 0);
    let sn = squeeze_sector(gamma, trunc, n as isize);
    // S|0,0⟩ lives on |k,k⟩; (ã₁†)ⁿ moves |k,k⟩ to |k+n,k⟩, dropping k + n > N
    let v = s0.column(0);
    let shifted = DVector::from_iterator(sn.ncols(), (0..sn.ncols()).map(|k| v[k]));
    let out = sn.adjoint() * shifted;
    Ok(out.iter().copied().collect())
}

/// Closed-form fidelity recomputed by the oracle, with adaptive truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleFidelity {
    pub value: f64,
    pub trunc: usize,
    /// Change of `|c₁|` over the last truncation doubling.
    pub change: f64,
    /// `1 − Σ|c_k|²` at the final truncation.
    pub leakage: f64,
}

/// `|c₁|` for the state `Wⁿ|0⟩` built with `tanh γ = √(η̃/(1−η̃))`, doubling the
/// truncation until `|c₁|` changes by less than `1e−12`.
pub fn oracle_fidelity(eta_tilde: f64, n: u32) -> Result<OracleFidelity> {
    if !(0.0..0.5).contains(&eta_tilde) {
        return Err(Error::Domain(format!("eta_tilde must lie in [0, 1/2), got {eta_tilde}")));
    }
    let gamma = gamma_from_eta_tilde(eta_tilde);
    let mut trunc = default_trunc(gamma).max(n as usize + 8);
    let mut prev = state_coefficients(gamma, n, trunc)?[0].norm();
    loop {
        let next_trunc = 2 * trunc;
        let coeffs = state_coefficients(gamma, n, next_trunc)?;
        let value = coeffs[0].norm();
        let change = (value - prev).abs();
        if change < 1e-12 {
            let leakage = 1.0 - coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>();
            return Ok(OracleFidelity { value, trunc: next_trunc, change, leakage });
        }
        if next_trunc > 1024 {
            return Err(Error::Truncation(format!(
                "oracle fidelity not settled at N = {next_trunc} (change {change:.3e})"
            )));
        }
        prev = value;
        trunc = next_trunc;
    }
}

/// Applies `S` through its normal-ordered factorization
/// `e^{−tanhγ a₁†a₂†} (coshγ)^{−a₁a₁† − a₂†a₂} e^{tanhγ a₁a₂}` using power series.
pub fn squeeze_factorized_apply(gamma: f64, psi: &FockTensor) -> FockTensor {
    let trunc = psi.trunc();
    let t = gamma.tanh();
    let ch = gamma.cosh();
    let a1 = FockOperator::annihilate_1(trunc);
    let a2 = FockOperator::annihilate_2(trunc);
    let down = a1.mul(&a2);
    let up = down.adjoint();

    let series = |op: &FockOperator, x: f64, v: &FockTensor| -> FockTensor {
        let mut sum = v.amps().clone();
        let mut term = v.clone();
        for m in 1..=trunc + 1 {
            term = op.apply(&term);
            let scale = Complex64::new(x / m as f64, 0.0);
            term = FockTensor::from_amps(term.amps() * scale).expect("square amplitudes");
            sum += term.amps();
        }
        FockTensor::from_amps(sum).expect("square amplitudes")
    };

    let lowered = series(&down, t, psi);
    let mut mid = lowered.amps().clone();
    for n1 in 0..=trunc {
        for n2 in 0..=trunc {
            mid[(n1, n2)] *= ch.powi(-((n1 + n2 + 1) as i32));
        }
    }
    let mid = FockTensor::from_amps(mid).expect("square amplitudes");
    series(&up, -t, &mid)
}

/// Residuals of the isometry and locality identities restricted to low levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LichtResiduals {
    pub trunc: usize,
    pub interior: usize,
    /// `‖W†W − 𝟙‖`.
    pub isometry: f64,
    /// `‖[W, B]‖` with `B = a₁ − √((1−η̃)/η̃) a₂†`.
    pub commutator_b: f64,
    /// `‖[W, B†]‖`.
    pub commutator_b_dag: f64,
    /// `‖S a₁ S† − a₁ coshγ − a₂† sinhγ‖`.
    pub squeeze_transform: f64,
}

/// Boundary reach of `S` from the interior below which the truncation is accepted.
pub const INTERIOR_LEAK_TOL: f64 = 1e-14;

/// Truncation at which `S` moves less than [`INTERIOR_LEAK_TOL`] of any interior
/// state (levels `≤ interior`) onto the top two levels.
pub fn interior_trunc(gamma: f64, interior: usize) -> Result<usize> {
    let mut trunc = default_trunc(gamma).max(interior + 8);
    loop {
        check_trunc(gamma, trunc)?;
        if interior_reach(gamma, trunc, interior) < INTERIOR_LEAK_TOL {
            return Ok(trunc);
        }
        trunc += 8;
        if trunc > 400 {
            return Err(Error::Truncation("no adequate interior truncation below 400".into()));
        }
    }
}

/// Largest `|⟨m|S|n⟩|` over interior `n` and `m` on the top two levels.
fn interior_reach(gamma: f64, trunc: usize, interior: usize) -> f64 {
    let m = interior as isize;
    let mut worst: f64 = 0.0;
    for d in -m..=m {
        let block = squeeze_sector(gamma, trunc, d);
        let (p, q) = if d >= 0 { (d as usize, 0) } else { (0, d.unsigned_abs()) };
        for i in 0..block.ncols() {
            if i + p > interior || i + q > interior {
                continue;
            }
            for r in 0..block.nrows() {
                if (r + p).max(r + q) + 2 >= trunc {
                    worst = worst.max(block[(r, i)].norm());
                }
            }
        }
    }
    worst
}

/// Frobenius residuals over basis states with `n₁, n₂ ≤ interior`.
pub fn licht_residuals(eta_tilde: f64, interior: usize) -> Result<LichtResiduals> {
    if !(eta_tilde > 0.0 && eta_tilde < 0.5) {
        return Err(Error::Domain(format!("eta_tilde must lie in (0, 1/2), got {eta_tilde}")));
    }
    let gamma = gamma_from_eta_tilde(eta_tilde);
    let trunc = interior_trunc(gamma, interior)?;
    let s = squeeze_operator(gamma, trunc)?;
    let sd = s.adjoint();
    let w = sd.mul(&FockOperator::isometry_1(trunc).mul(&s));
    let id = FockOperator::identity(trunc);

    let a1 = FockOperator::annihilate_1(trunc);
    let a2d = FockOperator::create_2(trunc);
    let c = Complex64::new(((1.0 - eta_tilde) / eta_tilde).sqrt(), 0.0);
    let b = a1.sub(&a2d.scale(c));
    let bd = b.adjoint();

    let transformed = s.mul(&a1.mul(&sd));
    let expected = a1
        .scale(Complex64::new(gamma.cosh(), 0.0))
        .add(&a2d.scale(Complex64::new(gamma.sinh(), 0.0)));

    Ok(LichtResiduals {
        trunc,
        interior,
        isometry: w.adjoint().mul(&w).sub(&id).interior_norm(interior),
        commutator_b: w.commutator(&b).interior_norm(interior),
        commutator_b_dag: w.commutator(&bd).interior_norm(interior),
        squeeze_transform: transformed.sub(&expected).interior_norm(interior),
    })
}
