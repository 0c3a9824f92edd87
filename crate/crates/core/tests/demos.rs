use strictloc::demos::{
    coherent_localization_check, instantaneous_localization_demo, min_window_max,
    photon_energy_envelope,
};
use strictloc::signal::{fourier_inverse, Grid, SampledSignal, Spectrum, VacuumModeWeights};
use strictloc::{Complex64, Error};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn x_grid() -> Grid {
    Grid::centered(1 << 14, 0.005).unwrap()
}

#[test]
fn right_moving_photon_translates_rigidly() {
    let grid = x_grid();
    let g = Spectrum::from_fn(grid, |k| if k > 0.0 { c((-(k - 20.0).powi(2) / 8.0).exp()) } else { c(0.0) })
        .normalized()
        .unwrap();
    let steps = [0usize, 40, 200];
    let ts: Vec<f64> = steps.iter().map(|&s| s as f64 * grid.dt()).collect();
    let field = photon_energy_envelope(&g, VacuumModeWeights::default(), &ts).unwrap();
    assert!(field.v0.iter().all(|v| *v == c(0.0)));
    let peak = field.peak(0);
    for (i, &s) in steps.iter().enumerate() {
        for m in s..grid.n_samples() / 2 {
            let d = (field.s_values[i][m] - field.s_values[0][m - s]).norm();
            assert!(d < 1e-10 * peak, "t = {}, m = {m}", ts[i]);
        }
    }
    assert!(field.decomposition_residual() < 1e-10);
}

#[test]
fn one_sided_spectrum_leaves_no_empty_interval() {
    let grid = x_grid();
    let g = Spectrum::from_fn(grid, |k| if k > 0.0 { c((-(k - 4.0).powi(2) / 8.0).exp()) } else { c(0.0) })
        .normalized()
        .unwrap();
    let field = photon_energy_envelope(&g, VacuumModeWeights::default(), &[0.0]).unwrap();
    let floor = min_window_max(&field.s_values[0], 400) / field.peak(0);
    assert!(floor > 1e-6, "{floor}");
}

#[test]
fn instantaneous_support_is_lost_immediately() {
    let grid = x_grid();
    let (l, k0) = (1.0, 20.0);
    let w = VacuumModeWeights::default();
    let g = instantaneous_localization_demo(l, k0, &grid, w).unwrap();
    let ts: Vec<f64> = [0usize, 2, 10, 40, 200].iter().map(|&s| s as f64 * grid.dt()).collect();
    let field = photon_energy_envelope(&g, w, &ts).unwrap();
    let peak = field.peak(0);
    assert!(field.outside_sup(0, 0.5 * l) < 1e-6 * peak);
    let leaks: Vec<f64> = (0..ts.len()).map(|i| field.outside_sup(i, 0.5 * l) / peak).collect();
    assert!(leaks[1] > 1e-6, "{leaks:?}");
    assert!(leaks.windows(2).all(|p| p[1] > p[0]), "{leaks:?}");
    // at t = l the field already reaches beyond the light cone of the initial support
    let beyond = field.outside_sup(4, 0.5 * l + ts[4]) / peak;
    assert!(beyond > 1e-4, "{beyond}");
    assert!(field.decomposition_residual() < 1e-10);
}

#[test]
fn demo_needs_room() {
    let small = Grid::centered(256, 0.005).unwrap();
    assert!(matches!(
        instantaneous_localization_demo(1.0, 20.0, &small, VacuumModeWeights::default()),
        Err(Error::Coverage(_))
    ));
}

#[test]
fn envelope_requires_normalized_spectrum() {
    let grid = Grid::centered(256, 0.1).unwrap();
    let g = Spectrum::from_fn(grid, |k| c((-k * k).exp()));
    assert!(matches!(
        photon_energy_envelope(&g, VacuumModeWeights::default(), &[0.0]),
        Err(Error::Normalization { .. })
    ));
}

#[test]
fn window_maximum() {
    let v: Vec<Complex64> = [3.0, 0.0, 0.0, 1.0, 0.0, 2.0].iter().map(|&x| c(x)).collect();
    assert_eq!(min_window_max(&v, 2), 0.0);
    assert_eq!(min_window_max(&v, 3), 1.0);
    assert_eq!(min_window_max(&v, 6), 3.0);
    assert_eq!(min_window_max(&v, 7), 0.0);
}

fn causal_profile(grid: Grid) -> SampledSignal {
    SampledSignal::from_fn(grid, |t| if t > 0.0 { c(t * t * (-t).exp()) } else { c(0.0) })
}

#[test]
fn coherent_state_can_be_localized() {
    let grid = Grid::centered(1 << 14, 0.01).unwrap();
    let w = VacuumModeWeights::default();
    let alpha = Complex64::from_polar(2.0, 0.4);
    let xi = coherent_localization_check(&causal_profile(grid), alpha, w).unwrap();
    assert!((xi.norm_sqr() - 1.0).abs() < 1e-12);
    assert_eq!(xi.negative_weight_raw(), 0.0);
    // the photon mode itself is not causal
    assert!(fourier_inverse(&xi).max_abs_negative() > 1e-6 * fourier_inverse(&xi).peak_abs());
}

#[test]
fn coherent_check_rejects_bad_profiles() {
    let grid = Grid::centered(1 << 12, 0.01).unwrap();
    let w = VacuumModeWeights::default();
    let a = c(1.0);
    let z = causal_profile(grid);
    assert!(matches!(
        coherent_localization_check(&z.scaled(Complex64::new(1.0, 1.0)), a, w),
        Err(Error::Precondition(_))
    ));
    let early = SampledSignal::from_fn(grid, |t| c((-(t * t)).exp()));
    assert!(matches!(coherent_localization_check(&early, a, w), Err(Error::Precondition(_))));
    assert!(matches!(
        coherent_localization_check(&SampledSignal::zeros(grid), a, w),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(coherent_localization_check(&z, c(0.0), w), Err(Error::Domain(_))));
}
