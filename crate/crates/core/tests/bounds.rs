use strictloc::bounds::{
    bounds_causal_target, bounds_physical_target, causal_lower, causal_lower_first_order,
    causal_lower_worst_case, causal_upper, causal_upper_first_order, first_order_check,
    physical_lower, physical_lower_first_order, physical_lower_worst_case, physical_upper,
    physical_upper_first_order, physical_upper_single, TargetKind, FIRST_ORDER_LIMIT,
};
use strictloc::construction::{closed_form_fidelity, closed_form_fidelity_n, eta_tilde_from_relation};
use strictloc::pulses::{gaussian_pulse, physical_target_from_seed, GaussianSpec};
use strictloc::signal::{Grid, Spectrum};
use strictloc::{Complex64, Error};

fn causal_report(omega0_sigma: f64, tau_over_sigma: f64, n: u32) -> strictloc::bounds::BoundReport {
    let spec = GaussianSpec::dimensionless(omega0_sigma, tau_over_sigma, true).unwrap();
    let g = gaussian_pulse(&spec, &spec.default_grid(1 << 15).unwrap()).unwrap();
    bounds_causal_target(&g, n).unwrap()
}

#[test]
fn perfect_targets_reach_one() {
    for n in 1..4 {
        assert_eq!(causal_upper(0.0, n), 1.0);
        assert_eq!(causal_lower(0.0, 1.0, 1.0, n), 1.0);
        assert_eq!(physical_upper(0.0, 0.0, n), 1.0);
        assert_eq!(physical_lower(0.0, 0.0, 1.0, 1.0, n), 1.0);
    }
}

#[test]
fn zero_overlap_seed_values() {
    let eta = 0.04;
    assert!((causal_upper(eta, 1) - 0.96f64.sqrt()).abs() < 1e-15);
    let f = closed_form_fidelity(eta).unwrap();
    assert!((causal_lower(eta, 1.0, f, 1) - f * 0.96f64.sqrt()).abs() < 1e-15);
}

#[test]
fn single_photon_forms() {
    for (mu, nu) in [(0.01, 0.0), (0.05, 0.02), (0.2, 0.1)] {
        assert!((physical_upper(mu, nu, 1) - physical_upper_single(mu, nu)).abs() < 1e-15);
    }
    assert!((causal_lower_first_order(0.01, 1) - (1.0 - (2.0 - 2f64.sqrt()) * 0.01)).abs() < 1e-15);
    assert!((causal_upper_first_order(0.01, 1) - 0.995).abs() < 1e-15);
}

#[test]
fn first_order_residuals_are_quadratic() {
    for n in 1..=3u32 {
        for eta in [1e-2, 1e-3, 1e-4] {
            let r = first_order_check(causal_upper(eta, n), causal_upper_first_order(eta, n), eta);
            assert!(r < 1.0, "causal upper n = {n}, eta = {eta}: {r}");
            let worst = causal_lower_worst_case(eta, n).unwrap();
            let r = first_order_check(worst, causal_lower_first_order(eta, n), eta);
            assert!(r < 10.0, "causal lower n = {n}, eta = {eta}: {r}");
        }
        for mu in [1e-2, 1e-3] {
            let exact = physical_upper(mu, 0.0, n);
            let r = (exact - physical_upper_first_order(mu, n)).abs() / mu.powi(3);
            assert!(r < 10.0, "physical upper n = {n}, mu = {mu}: {r}");
            let worst = physical_lower_worst_case(mu, n).unwrap();
            let r = first_order_check(worst, physical_lower_first_order(mu, n), mu);
            assert!(r < 10.0, "physical lower n = {n}, mu = {mu}: {r}");
        }
    }
}

#[test]
fn worst_case_is_below_every_admissible_seed() {
    for n in [1, 3] {
        for eta in [0.01, 0.05, 0.2] {
            let worst = causal_lower_worst_case(eta, n).unwrap();
            for i in 0..=50 {
                let j = 1.0 - 2.0 * eta * i as f64 / 50.0;
                let et = eta_tilde_from_relation(eta, j).max(0.0);
                let v = causal_lower(eta, j, closed_form_fidelity_n(et, n).unwrap(), n);
                assert!(worst <= v + 1e-12, "n = {n}, eta = {eta}, J = {j}");
            }
        }
    }
}

#[test]
fn causal_report_fields() {
    let r = causal_report(2.0, 3.0, 1);
    assert_eq!(r.target_kind, TargetKind::CausalG);
    assert!(r.invariants_hold());
    assert!(r.inputs.eta < FIRST_ORDER_LIMIT);
    assert!(r.upper_first_order.is_some() && r.lower_first_order.is_some());
    assert!(r.upper_single_photon.is_none() && r.inputs.mu.is_none());
    assert!((r.upper - (1.0 - r.inputs.eta).sqrt()).abs() < 1e-15);

    let wide = causal_report(0.3, 3.0, 1);
    assert!(wide.inputs.eta > FIRST_ORDER_LIMIT);
    assert!(wide.upper_first_order.is_none() && wide.lower_first_order.is_none());
    assert!(wide.invariants_hold());
}

#[test]
fn causal_bounds_tighten_with_narrower_bandwidth() {
    let uppers: Vec<f64> = [0.5, 1.0, 2.0, 4.0].iter().map(|&w| causal_report(w, 3.0, 1).upper).collect();
    assert!(uppers.windows(2).all(|w| w[1] > w[0]), "{uppers:?}");
}

#[test]
fn more_photons_lower_both_bounds() {
    let (a, b) = (causal_report(1.0, 3.0, 1), causal_report(1.0, 3.0, 3));
    assert!(b.upper < a.upper && b.lower < a.lower);
    assert!(b.invariants_hold());
}

#[test]
fn physical_end_to_end() {
    let pre = GaussianSpec::dimensionless(1.0, 3.0, false).unwrap();
    let xi = physical_target_from_seed(&pre, &pre.default_grid(1 << 16).unwrap()).unwrap();
    let r = bounds_physical_target(&xi, 1).unwrap();
    assert_eq!(r.target_kind, TargetKind::PhysicalXi);
    let (mu, nu) = (r.inputs.mu.unwrap(), r.inputs.nu_abs.unwrap());
    assert!(mu > 0.0 && mu < 0.5 && nu <= mu);
    assert!(r.inputs.eta < mu / (1.0 - mu));
    assert!(r.invariants_hold());
    assert!((r.upper_single_photon.unwrap() - r.upper).abs() < 1e-15);

    let r3 = bounds_physical_target(&xi, 3).unwrap();
    assert!(r3.upper_single_photon.is_none());
    assert!(r3.upper < r.upper && r3.lower < r.lower);
}

#[test]
fn input_errors() {
    let spec = GaussianSpec::dimensionless(1.0, 3.0, true).unwrap();
    let g = gaussian_pulse(&spec, &spec.default_grid(1 << 14).unwrap()).unwrap();
    assert!(matches!(bounds_causal_target(&g, 0), Err(Error::Domain(_))));

    let grid = Grid::centered(1 << 12, 0.05).unwrap();
    let two_sided = Spectrum::from_fn(grid, |w| Complex64::new((-(w - 1.0).powi(2)).exp(), 0.0))
        .normalized()
        .unwrap();
    assert!(matches!(bounds_physical_target(&two_sided, 1), Err(Error::Domain(_))));
    assert!(matches!(
        bounds_physical_target(&two_sided.scaled(Complex64::new(2.0, 0.0)), 1),
        Err(Error::Normalization { .. })
    ));
}
