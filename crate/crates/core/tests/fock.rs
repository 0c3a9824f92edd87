use nalgebra::DMatrix;
use strictloc::construction::{closed_form_fidelity_n, gamma_from_eta_tilde};
use strictloc::fock::{
    default_trunc, eigenvector_coefficients, eigenvector_overlap, expm, licht_operator,
    licht_residuals, oracle_fidelity, position_operator_check, position_residual,
    squeeze_factorized_apply, squeeze_generator, squeeze_operator, state_coefficients,
    FockOperator, FockTensor,
};
use strictloc::measurement::hermite_psi;
use strictloc::{Complex64, Error};

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

#[test]
fn unsqueezed_operators_are_trivial() {
    let trunc = 8;
    let s = squeeze_operator(0.0, trunc).unwrap();
    assert!(max_diff(&s.to_dense(), &FockOperator::identity(trunc).to_dense()) < 1e-15);
    let w = licht_operator(0.0, 1, trunc).unwrap();
    let out = w.apply(&FockTensor::vacuum(trunc));
    assert!(max_diff(out.amps(), FockTensor::basis(trunc, 1, 0).amps()) < 1e-15);
    assert_eq!(default_trunc(0.0), 1);
}

#[test]
fn canonical_commutator_below_the_edge() {
    let trunc = 12;
    for (a, ad) in [
        (FockOperator::annihilate_1(trunc), FockOperator::create_1(trunc)),
        (FockOperator::annihilate_2(trunc), FockOperator::create_2(trunc)),
    ] {
        let r = a.commutator(&ad).sub(&FockOperator::identity(trunc));
        assert!(r.interior_norm(trunc - 1) < 1e-13);
        assert!(r.to_dense().iter().any(|v| v.norm() > 1.0));
    }
}

#[test]
fn expm_against_eigendecomposition() {
    // within a sector K is tridiagonal with real antisymmetric couplings, so with
    // D = diag(iʳ) one has D⁻¹KD = iT for real symmetric T and exp(K) = D·V e^{iΛ} Vᵀ·D⁻¹
    let (gamma, trunc) = (0.4, 30);
    let k = squeeze_generator(gamma, trunc);
    let s = squeeze_operator(gamma, trunc).unwrap();
    for sector in -(trunc as isize)..=trunc as isize {
        let kb = k.block(sector);
        let m = kb.nrows();
        let d = DMatrix::from_fn(m, m, |r, c| {
            if r == c { Complex64::new(0.0, 1.0).powu(r as u32) } else { Complex64::new(0.0, 0.0) }
        });
        let d_inv = d.adjoint();
        let it = &d_inv * kb * &d;
        assert!(it.iter().all(|v| v.re.abs() < 1e-15));
        let eig = it.map(|v| v.im).symmetric_eigen();
        let v = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, l)));
        let oracle = &d * (&v * phases * v.transpose()) * &d_inv;
        assert!(max_diff(&expm(kb), &oracle) < 1e-12, "sector {sector}");
        assert!(max_diff(s.block(sector), &oracle) < 1e-12, "sector {sector}");
    }

    // the sector-blocked exponential agrees with the dense one
    let (g_small, small) = (0.05, 10);
    let dense_k = squeeze_generator(g_small, small).to_dense();
    let s_small = squeeze_operator(g_small, small).unwrap().to_dense();
    assert!(max_diff(&expm(&dense_k), &s_small) < 1e-14);
    let dense = squeeze_operator(gamma, default_trunc(gamma)).unwrap().to_dense();
    let id = DMatrix::identity(dense.nrows(), dense.ncols());
    assert!(max_diff(&(dense.adjoint() * &dense), &id) < 1e-12);
}

#[test]
fn factorized_squeeze_matches_exponential() {
    let gamma = 0.3;
    let trunc = 60;
    let s = squeeze_operator(gamma, trunc).unwrap();
    for (n1, n2) in [(0, 0), (1, 0), (1, 2), (3, 1)] {
        let psi = FockTensor::basis(trunc, n1, n2);
        let a = s.apply(&psi);
        let b = squeeze_factorized_apply(gamma, &psi);
        assert!(max_diff(a.amps(), b.amps()) < 1e-10, "({n1}, {n2})");
    }
}

#[test]
fn oracle_reproduces_closed_form() {
    for (eta_tilde, n) in [(0.05, 2), (0.1, 1), (0.2, 3)] {
        let o = oracle_fidelity(eta_tilde, n).unwrap();
        let f = closed_form_fidelity_n(eta_tilde, n).unwrap();
        assert!((o.value - f).abs() < 1e-12, "{eta_tilde}, {n}: {} vs {f}", o.value);
        assert!(o.change < 1e-12 && o.leakage.abs() < 1e-10);
    }
    assert!(matches!(oracle_fidelity(0.5, 1), Err(Error::Domain(_))));
}

#[test]
fn coefficients_are_stable_under_doubling() {
    let gamma = gamma_from_eta_tilde(0.15);
    let n0 = default_trunc(gamma);
    let a = state_coefficients(gamma, 1, n0).unwrap();
    let b = state_coefficients(gamma, 1, 2 * n0).unwrap();
    for k in 0..10 {
        assert!((a[k] - b[k]).norm() < 1e-9, "k = {k}");
    }
}

#[test]
fn truncation_preconditions() {
    assert!(matches!(squeeze_operator(0.5, 5), Err(Error::Truncation(_))));
    let gamma = gamma_from_eta_tilde(0.01);
    let trunc = default_trunc(gamma);
    assert!(matches!(state_coefficients(gamma, 0, trunc), Err(Error::Domain(_))));
    assert!(matches!(
        state_coefficients(gamma, trunc as u32 + 1, trunc),
        Err(Error::Domain(_))
    ));
}

#[test]
fn licht_identities_on_low_levels() {
    let r = licht_residuals(0.1, 4).unwrap();
    assert!(r.isometry < 1e-10, "{r:?}");
    assert!(r.commutator_b < 1e-10 && r.commutator_b_dag < 1e-10, "{r:?}");
    assert!(r.squeeze_transform < 1e-10, "{r:?}");
    assert!(matches!(licht_residuals(0.0, 4), Err(Error::Domain(_))));
}

#[test]
fn quadrature_eigenvectors() {
    let trunc = 60;
    for x in [-1.2, 0.0, 0.35, 1.5] {
        let c = eigenvector_coefficients(x, trunc);
        for (n, cn) in c.iter().enumerate().take(11) {
            assert!((cn - hermite_psi(n, x)).abs() < 1e-12, "x = {x}, n = {n}");
        }
        assert!(position_residual(&c, x) < 1e-8);
    }
    assert!(position_operator_check(40).unwrap() < 1e-8);
    assert!(matches!(position_operator_check(10), Err(Error::Truncation(_))));
    assert!(matches!(eigenvector_overlap(5, 0.1, 4), Err(Error::Truncation(_))));
}
