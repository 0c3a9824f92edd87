use std::f64::consts::PI;

use strictloc::signal::{
    fourier_forward, fourier_inverse, negative_frequency_weight, negative_time_weight,
    nu_constant, pulse_mode_time_function, split_causal, Grid, ModeKind, SampledSignal, Spectrum,
    VacuumModeWeights,
};
use strictloc::{Complex64, Error};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit_gaussian(grid: Grid, t0: f64) -> SampledSignal {
    SampledSignal::from_fn(grid, |t| c((-(t - t0).powi(2) / 2.0).exp() * PI.powf(-0.25), 0.0))
}

#[test]
fn grid_rejects_bad_sizes() {
    assert!(matches!(Grid::centered(100, 0.1), Err(Error::InvalidGrid(_))));
    assert!(matches!(Grid::centered(1, 0.1), Err(Error::InvalidGrid(_))));
    assert!(matches!(Grid::centered(64, 0.0), Err(Error::InvalidGrid(_))));
    let g = Grid::centered(64, 0.25).unwrap();
    assert!((g.dw() - 2.0 * PI / (64.0 * 0.25)).abs() < 1e-15);
    for j in 0..64 {
        assert!((g.omega(j) + g.omega(g.mirror_index(j))).abs() < 1e-12);
    }
}

#[test]
fn forward_matches_direct_sum() {
    let grid = Grid::new(64, 0.3, -7.1).unwrap();
    let sig = SampledSignal::from_fn(grid, |t| c((-(t - 1.0).powi(2)).exp(), (0.4 * t).sin()));
    let spec = fourier_forward(&sig);
    let norm = grid.dt() / (2.0 * PI).sqrt();
    for j in 0..64 {
        let w = grid.omega(j);
        let direct: Complex64 = (0..64)
            .map(|k| sig.values()[k] * Complex64::from_polar(1.0, w * grid.time(k)))
            .sum::<Complex64>()
            * norm;
        assert!((direct - spec.values()[j]).norm() < 1e-12, "bin {j}");
    }
}

#[test]
fn gaussian_is_self_transform() {
    let grid = Grid::centered(1024, 0.05).unwrap();
    let spec = fourier_forward(&unit_gaussian(grid, 0.0));
    for (j, v) in spec.values().iter().enumerate() {
        let w = grid.omega(j);
        let expect = (-w * w / 2.0).exp() * PI.powf(-0.25);
        assert!((v - c(expect, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn delay_becomes_linear_phase() {
    let grid = Grid::centered(1024, 0.05).unwrap();
    let tau = 40.0 * grid.dt();
    let g0 = fourier_forward(&unit_gaussian(grid, 0.0));
    let g1 = fourier_forward(&unit_gaussian(grid, tau));
    for j in 0..1024 {
        let expect = g0.values()[j] * Complex64::from_polar(1.0, grid.omega(j) * tau);
        assert!((g1.values()[j] - expect).norm() < 1e-12);
    }
}

#[test]
fn one_sided_exponential_spectrum() {
    // θ(t)e^{−t} has G(ω) = (2π)^{−1/2}/(1 − iω)
    let grid = Grid::centered(1 << 16, 2e-3).unwrap();
    let sig = SampledSignal::from_fn(grid, |t| if t >= 0.0 { c((-t).exp(), 0.0) } else { c(0.0, 0.0) });
    let spec = fourier_forward(&sig);
    for target in [0.0, 1.0, -1.0] {
        let j = (0..grid.n_samples())
            .min_by(|&a, &b| {
                (grid.omega(a) - target).abs().total_cmp(&(grid.omega(b) - target).abs())
            })
            .unwrap();
        let w = grid.omega(j);
        let exact = c(1.0, 0.0) / (c(1.0, -w) * (2.0 * PI).sqrt());
        assert!((spec.values()[j] - exact).norm() < 1e-6, "omega {w}");
    }
}

#[test]
fn flat_phase_gaussian_spectrum_is_centered() {
    let grid = Grid::centered(512, 0.1).unwrap();
    let spec = Spectrum::from_fn(grid, |w| c((-(w - 2.0).powi(2)).exp(), 0.0));
    let sig = fourier_inverse(&spec);
    let peak = (0..512).max_by(|&a, &b| sig.values()[a].norm().total_cmp(&sig.values()[b].norm())).unwrap();
    assert!(grid.time(peak).abs() <= grid.dt());
}

#[test]
fn positive_frequency_spectrum_leaks_into_negative_time() {
    let grid = Grid::centered(1 << 14, 0.05).unwrap();
    let spec = Spectrum::from_fn(grid, |w| {
        if w > 0.0 {
            c((-(w - 1.0).powi(2) * 4.0).exp(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
    .normalized()
    .unwrap();
    let sig = fourier_inverse(&spec);
    let mu = negative_time_weight(&sig).unwrap();
    assert!(mu > 1e-14);
    assert!(sig.max_abs_negative() > 0.0);
}

#[test]
fn tail_weights_trivial_cases() {
    let grid = Grid::centered(4096, 0.01).unwrap();
    let causal = SampledSignal::from_fn(grid, |t| {
        if t > 0.0 {
            c(t * (-t).exp(), 0.3 * t * t * (-t).exp())
        } else {
            c(0.0, 0.0)
        }
    })
    .normalized()
    .unwrap();
    assert_eq!(negative_time_weight(&causal).unwrap(), 0.0);
    assert_eq!(nu_constant(&causal), c(0.0, 0.0));

    let sym = unit_gaussian(grid, 0.0).normalized().unwrap();
    assert!((negative_time_weight(&sym).unwrap() - 0.5).abs() < 1e-12);
    // real tail: ν = μ
    let nu = nu_constant(&sym);
    assert!((nu - c(negative_time_weight(&sym).unwrap(), 0.0)).norm() < 1e-14);

    // a real pulse has exactly half of its weight at negative frequencies
    let real = SampledSignal::from_fn(grid, |t| c((-(t - 3.0).powi(2)).exp() * (5.0 * t).cos(), 0.0))
        .normalized()
        .unwrap();
    assert!((negative_frequency_weight(&fourier_forward(&real)).unwrap() - 0.5).abs() < 1e-12);

    let pos = Spectrum::from_fn(grid, |w| if w > 0.0 { c((-(w - 9.0).powi(2)).exp(), 0.0) } else { c(0.0, 0.0) })
        .normalized()
        .unwrap();
    assert_eq!(negative_frequency_weight(&pos).unwrap(), 0.0);
}

#[test]
fn unnormalized_input_is_rejected() {
    let grid = Grid::centered(256, 0.1).unwrap();
    let sig = unit_gaussian(grid, 0.0).scaled(c(1.1, 0.0));
    assert!(matches!(negative_time_weight(&sig), Err(Error::Normalization { .. })));
}

#[test]
fn gaussian_eta_matches_erfc() {
    // the ω = 0 cut falls on a bin edge, so the error is the midpoint-rule O(dω²) term
    let grid = Grid::centered(1 << 18, 0.05).unwrap();
    let sig = SampledSignal::from_fn(grid, |t| Complex64::from_polar((-t * t / 2.0).exp(), -t))
        .normalized()
        .unwrap();
    let eta = negative_frequency_weight(&fourier_forward(&sig)).unwrap();
    assert!((eta - 0.078_649_603_525_142_58).abs() < 1e-8, "eta {eta}");
}

#[test]
fn split_causal_halves() {
    let grid = Grid::centered(1024, 0.02).unwrap();
    let sym = unit_gaussian(grid, 0.0).normalized().unwrap();
    let (plus, minus) = split_causal(&sym);
    assert!((plus.norm_sqr() - 0.5).abs() < 1e-12);
    assert!((minus.norm_sqr() - 0.5).abs() < 1e-12);

    let causal = SampledSignal::from_fn(grid, |t| if t > 0.0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
    let (p, m) = split_causal(&causal);
    assert_eq!(p.values(), causal.values());
    assert!(m.values().iter().all(|v| *v == c(0.0, 0.0)));
    let anti = SampledSignal::from_fn(grid, |t| if t < 0.0 { c(0.0, 1.0) } else { c(0.0, 0.0) });
    let (p, m) = split_causal(&anti);
    assert!(p.values().iter().all(|v| *v == c(0.0, 0.0)));
    assert_eq!(m.values(), anti.values());
}

fn positive_mode(grid: Grid) -> Spectrum {
    Spectrum::from_fn(grid, |w| {
        if w > 0.0 {
            c((-(w - 3.0).powi(2)).exp(), 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
    .normalized()
    .unwrap()
}

#[test]
fn pulse_mode_functions() {
    let grid = Grid::centered(4096, 0.02).unwrap();
    let weights = VacuumModeWeights::default();
    let mode = positive_mode(grid);

    let e = pulse_mode_time_function(&mode, weights, ModeKind::Field).unwrap();
    assert!(e.max_abs_negative() > 0.0);

    let a = pulse_mode_time_function(&mode, weights, ModeKind::Potential).unwrap();
    let (fe, fa) = (fourier_forward(&e), fourier_forward(&a));
    for j in 0..grid.n_samples() {
        let w = grid.omega(j);
        if w > 0.0 && fa.values()[j].norm() > 1e-6 {
            let ratio = fe.values()[j] / fa.values()[j];
            assert!((ratio - c(0.0, w)).norm() < 1e-8 * w.max(1.0));
        }
    }

    let phase = Complex64::from_polar(1.0, 0.7);
    let rotated = pulse_mode_time_function(&mode.scaled(phase), weights, ModeKind::Field).unwrap();
    for (r, v) in rotated.values().iter().zip(e.values()) {
        assert!((r - v * phase).norm() < 1e-12);
    }

    let two_sided = Spectrum::from_fn(grid, |w| c((-(w * w)).exp(), 0.0)).normalized().unwrap();
    assert!(matches!(
        pulse_mode_time_function(&two_sided, weights, ModeKind::Field),
        Err(Error::Domain(_))
    ));
}

#[test]
fn vacuum_weights() {
    let k = VacuumModeWeights::new(2.0).unwrap();
    for w in [-3.0, -0.5, 0.25, 4.0] {
        assert!((k.field(w).norm_sqr() - 4.0 * f64::abs(w)).abs() < 1e-12);
        assert!((k.field(w) - c(0.0, w) * k.potential(w)).norm() < 1e-14);
    }
    assert!(VacuumModeWeights::new(0.0).is_err());
}
