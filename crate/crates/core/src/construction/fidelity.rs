use crate::error::{Error, Result};

/// Relative size of the last retained series term.
const SERIES_TOL: f64 = 1e-16;

/// Above this argument the direct series is replaced by the expansion about z = 1.
const NEAR_ONE: f64 = 0.75;

/// `Li_{−1/2}(z) = Σ_{k≥1} √k zᵏ` for `0 ≤ z < 1`.
pub fn polylog_neg_half(z: f64) -> Result<f64> {
    if !(0.0..1.0 - 1e-9).contains(&z) {
        return Err(Error::Convergence(format!("Li_(-1/2) needs 0 <= z < 1 - 1e-9, got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z > NEAR_ONE {
        return Ok(polylog_neg_half_near_one(z));
    }
    let mut sum = 0.0;
    let mut zk = 1.0;
    for k in 1..200_000u32 {
        zk *= z;
        let term = (k as f64).sqrt() * zk;
        sum += term;
        if term < SERIES_TOL * sum {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!("Li_(-1/2)({z}) series did not settle")))
}

/// Expansion of `Li_s(e^μ)` about `μ = 0` for `s = −1/2`:
/// `Γ(1−s)(−μ)^{s−1} + Σ_m ζ(s−m) μ^m / m!`.
fn polylog_neg_half_near_one(z: f64) -> f64 {
    let mu = z.ln();
    // Γ(3/2) = √π/2
    let singular = 0.5 * std::f64::consts::PI.sqrt() * (-mu).powf(-1.5);
    let mut sum = singular;
    let mut pow = 1.0;
    for m in 0..60 {
        if m > 0 {
            pow *= mu / m as f64;
        }
        let term = zeta_neg(-0.5 - m as f64) * pow;
        sum += term;
        if m > 4 && term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Riemann zeta at negative arguments through the reflection formula
/// `ζ(s) = 2ˢ π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)`.
fn zeta_neg(s: f64) -> f64 {
    use std::f64::consts::PI;
    let one_minus = 1.0 - s;
    let zeta_pos = zeta_gt_one(one_minus);
    let ln_mag = s * 2f64.ln() + (s - 1.0) * PI.ln() + libm::lgamma(one_minus);
    (PI * s / 2.0).sin() * ln_mag.exp() * zeta_pos
}

/// `ζ(s)` for `s ≥ 3/2` by direct summation with an Euler–Maclaurin tail.
fn zeta_gt_one(s: f64) -> f64 {
    let n = 20usize;
    let mut sum: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    let nf = n as f64;
    sum += nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // Bernoulli corrections B_{2j}/(2j)! · s(s+1)…(s+2j−2) · n^{−s−2j+1}
    let bern = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in bern.iter().enumerate() {
        let two_j = 2.0 * (j as f64 + 1.0);
        sum += b / fact * rising * nf.powf(-s - two_j + 1.0);
        rising *= (s + two_j - 1.0) * (s + two_j);
        fact *= (two_j + 1.0) * (two_j + 2.0);
    }
    sum
}

fn check_eta_tilde(eta_tilde: f64) -> Result<()> {
    if !(0.0..0.5).contains(&eta_tilde) {
        return Err(Error::Domain(format!("eta_tilde must lie in [0, 1/2), got {eta_tilde}")));
    }
    if 0.5 - eta_tilde < 1e-12 {
        return Err(Error::Convergence(format!("eta_tilde {eta_tilde} too close to 1/2")));
    }
    Ok(())
}

/// Below this value of η̃ the closed forms are treated as the degenerate limit F = 1.
pub const DEGENERATE_ETA_TILDE: f64 = 1e-14;

/// `F = √((1−2η̃)³/(η̃²−η̃³))·Li_{−1/2}(η̃/(1−η̃))`.
pub fn closed_form_fidelity(eta_tilde: f64) -> Result<f64> {
    check_eta_tilde(eta_tilde)?;
    if eta_tilde < DEGENERATE_ETA_TILDE {
        return Ok(1.0);
    }
    let e = eta_tilde;
    let z = e / (1.0 - e);
    let pref = ((1.0 - 2.0 * e).powi(3) / (e * e * (1.0 - e))).sqrt();
    Ok(pref * polylog_neg_half(z)?)
}

/// `F_n = ((1−2η̃)/(1−η̃))^{1+n/2} Σ_k zᵏ √C(n+k, n)` with `z = η̃/(1−η̃)`.
pub fn closed_form_fidelity_n(eta_tilde: f64, n: u32) -> Result<f64> {
    check_eta_tilde(eta_tilde)?;
    if n == 0 {
        return Err(Error::Domain("photon number must be positive".into()));
    }
    if eta_tilde < DEGENERATE_ETA_TILDE {
        return Ok(1.0);
    }
    let e = eta_tilde;
    let z = e / (1.0 - e);
    let nf = n as f64;
    // term_k = zᵏ √C(n+k, k), updated by √((n+k)/k)·z
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0u64;
    loop {
        k += 1;
        term *= z * ((nf + k as f64) / k as f64).sqrt();
        sum += term;
        if term < SERIES_TOL * sum {
            break;
        }
        if k > 10_000_000 {
            return Err(Error::Convergence(format!("F_n series at eta_tilde {e}")));
        }
    }
    Ok(((1.0 - 2.0 * e) / (1.0 - e)).powf(1.0 + nf / 2.0) * sum)
}
