use super::*;
use crate::susceptibility::{
    chi_from_correlation, chi_multilevel, chi_tls_thermal, InverseTemperature, TlsEnsemble,
    Transition,
};
use approx::assert_relative_eq;
use proptest::prelude::*;

fn grid(a: f64, b: f64, n: usize) -> FrequencyGrid {
    FrequencyGrid::new(a, b, n).unwrap()
}

fn set(ts: &[(f64, f64, f64, f64, f64)]) -> TransitionSet {
    TransitionSet::new(
        ts.iter()
            .map(|&(w, wt, py, pz, g)| Transition::new(w, wt, py, pz, g).unwrap())
            .collect(),
    )
    .unwrap()
}

fn thermal_tls(beta: f64, omega: f64, gamma: f64) -> TlsEnsemble {
    TlsEnsemble::new(
        4.0,
        1.0,
        omega,
        InverseTemperature::new(beta).unwrap(),
        gamma,
    )
    .unwrap()
}

#[test]
fn single_uphill_correlation() {
    let tg = TimeGrid::new(10.0, 101).unwrap();
    let c2 = correlation_from_transitions(&set(&[(1.3, 2.0, 1.0, 0.0, 0.4)]), &tg).unwrap();
    for (t, c) in tg.points().zip(c2.values()) {
        let expected = 2.0 * Complex64::new(-0.2 * t, -1.3 * t).exp();
        assert!((c - expected).norm() < 1e-14);
        assert_relative_eq!(c.norm(), 2.0 * (-0.2 * t).exp(), max_relative = 1e-13);
    }
}

#[test]
fn two_level_correlation_has_both_directions() {
    let (pg, pe, w0, weight, gamma) = (0.8, 0.2, 0.9, 3.0, 0.1);
    let tg = TimeGrid::new(20.0, 201).unwrap();
    let c2 = correlation_from_transitions(&set(&[(w0, weight, pg, pe, gamma)]), &tg).unwrap();
    for (t, c) in tg.points().zip(c2.values()) {
        let expected = weight
            * (pg * Complex64::cis(-w0 * t) + pe * Complex64::cis(w0 * t))
            * (-0.5 * gamma * t).exp();
        assert!((c - expected).norm() < 1e-13);
    }
    assert_relative_eq!(c2.values()[0].re, weight, max_relative = 1e-15);
    assert_eq!(c2.values()[0].im, 0.0);
}

#[test]
fn correlation_rejects_mismatched_lengths() {
    let tg = TimeGrid::new(1.0, 3).unwrap();
    assert!(CorrelationFunction::new(tg, vec![Complex64::new(1.0, 0.0); 2]).is_err());
}

#[test]
fn spectral_density_from_chi_definition() {
    let g = grid(-0.5, 0.5, 3);
    let chi = ComplexSpectrum::new(
        g,
        vec![
            Complex64::new(1.0, 5.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.3, 26.6667),
        ],
    )
    .unwrap();
    let j = spectral_density_from_chi(&chi);
    assert_eq!(j.values(), &[0.0, 1.0, 26.6667]);
}

#[test]
fn thermal_line_peak_height() {
    let (beta, w0, gamma) = (1.2, 1.0, 0.2);
    let m = thermal_tls(beta, w0, gamma);
    let g = grid(0.0, 2.0, 201);
    let j = spectral_density_from_chi(&chi_tls_thermal(&m, &g).unwrap());
    let peak = j.values()[100];
    assert_relative_eq!(
        peak,
        4.0 * 2.0 / gamma * (0.5 * beta * w0).tanh(),
        max_relative = 1e-12
    );
}

#[test]
fn sine_transform_matches_correlation_chi() {
    let m = thermal_tls(1.5, 1.0, 0.3);
    let tg = TimeGrid::new(120.0, 12001).unwrap();
    let c2 = correlation_from_transitions(&m.transitions(), &tg).unwrap();
    let g = grid(0.0, 3.0, 61);
    let j = spectral_density_from_correlation(&c2, &g).unwrap();
    let chi = chi_from_correlation(&c2, &g).unwrap().chi;
    let jmax = j.max();
    for (a, c) in j.values().iter().zip(chi.values()) {
        assert!((a - c.im).abs() < 1e-8 * jmax);
    }
    // And with the closed-form line, up to quadrature error.
    let direct = spectral_density_from_chi(
        &chi_multilevel(&m.transitions().with_reverse_transitions(), &g).unwrap(),
    );
    for (a, b) in j.values().iter().zip(direct.values()) {
        assert!((a - b).abs() < 1e-6 * jmax);
    }
}

#[test]
fn sine_transform_weight_approaches_delta_limit() {
    let (beta, gamma) = (2.0, 0.02);
    let m = thermal_tls(beta, 1.0, gamma);
    let tg = TimeGrid::new(2000.0, 200_001).unwrap();
    let c2 = correlation_from_transitions(&m.transitions(), &tg).unwrap();
    let g = grid(0.0, 2.0, 4001);
    let j = spectral_density_from_correlation(&c2, &g).unwrap();
    let expected = PI * 4.0 * (0.5 * beta).tanh();
    // Lorentzian tails beyond the window carry about 2 gamma / pi of the weight.
    assert_relative_eq!(j.integral(), expected, max_relative = 2.0 * gamma);
}

#[test]
fn zero_correlation_and_negative_frequencies() {
    let tg = TimeGrid::new(5.0, 51).unwrap();
    let zero = CorrelationFunction::new(tg, vec![Complex64::new(0.0, 0.0); 51]).unwrap();
    let g = grid(-1.0, 1.0, 21);
    assert!(spectral_density_from_correlation(&zero, &g)
        .unwrap()
        .values()
        .iter()
        .all(|v| *v == 0.0));

    let tg = TimeGrid::new(60.0, 6001).unwrap();
    let c2 = correlation_from_transitions(&set(&[(0.5, 1.0, 1.0, 0.0, 0.5)]), &tg).unwrap();
    let j = spectral_density_from_correlation(&c2, &g).unwrap();
    assert!(j.values()[..10].iter().all(|v| *v == 0.0));
    assert!(j.values()[15] > 0.0);
}

#[test]
fn inverted_correlation_is_rejected() {
    let tg = TimeGrid::new(60.0, 6001).unwrap();
    let c2 = correlation_from_transitions(&set(&[(1.0, 1.0, 0.2, 0.8, 0.5)]), &tg).unwrap();
    let err = spectral_density_from_correlation(&c2, &grid(0.0, 2.0, 41)).unwrap_err();
    assert!(matches!(err, Error::PopulationInversion { .. }));
    assert!(err.to_string().contains("population inversion"));
}

#[test]
fn thermal_sets_have_constant_temperature() {
    let beta = 1.3;
    let pops = |w: f64| {
        let z = 1.0 + (-beta * w).exp();
        (1.0 / z, (-beta * w).exp() / z)
    };
    let (a, b) = pops(1.0);
    let (c, d) = pops(2.5);
    let ts = set(&[
        (1.0, 2.0, a, b, 0.2),
        (2.5, 0.7, c, d, 0.5),
        (-1.7, 1.0, pops(1.7).1, pops(1.7).0, 0.1),
    ]);
    let g = grid(0.05, 6.0, 120);
    let b_eff = effective_temperature(&ts, &g).unwrap();
    for v in b_eff.values() {
        assert!((v - beta).abs() < 1e-9, "{v}");
    }
}

#[test]
fn temperature_examples() {
    let g = grid(1.0, 2.0, 2);
    let b = effective_temperature(&set(&[(1.0, 1.0, 0.7, 0.3, 0.1)]), &g).unwrap();
    assert_relative_eq!(b.values()[0], (7.0f64 / 3.0).ln(), max_relative = 1e-14);
    assert_relative_eq!(b.values()[0], 0.847_297_860_387_203_8, max_relative = 1e-12);

    let b = effective_temperature(&set(&[(1.0, 1.0, 0.5, 0.5, 0.1)]), &g).unwrap();
    assert_eq!(b.values()[0], 0.0);

    let b = effective_temperature(&set(&[(1.0, 1.0, 1.0, 0.0, 0.1)]), &g).unwrap();
    assert!(b.values().iter().all(|v| *v == f64::INFINITY));
    assert_eq!(b.coth_half(0), 1.0);
}

#[test]
fn temperature_rejects_inversion_and_bad_grid() {
    let err =
        effective_temperature(&set(&[(1.0, 1.0, 0.3, 0.7, 0.1)]), &grid(0.5, 1.5, 11)).unwrap_err();
    assert!(matches!(err, Error::PopulationInversion { .. }));
    assert!(
        effective_temperature(&set(&[(1.0, 1.0, 1.0, 0.0, 0.1)]), &grid(0.0, 1.0, 11)).is_err()
    );
}

#[test]
fn reconstruction_edge_cases() {
    let g = grid(0.1, 3.0, 30);
    let tg = TimeGrid::new(5.0, 11).unwrap();
    let cold = effective_temperature(&set(&[(1.0, 1.0, 1.0, 0.0, 0.3)]), &g).unwrap();
    let zero = reconstruct_correlation(&RealSpectrum::zeros(g), &cold, &tg).unwrap();
    assert!(zero.values().iter().all(|c| c.norm() == 0.0));

    let j = RealSpectrum::from_fn(g, |w| (-(w - 1.0) * (w - 1.0)).exp()).unwrap();
    let c2 = reconstruct_correlation(&j, &cold, &tg).unwrap();
    assert_relative_eq!(c2.values()[0].re, j.integral() / PI, max_relative = 1e-14);
    assert_eq!(c2.values()[0].im, 0.0);

    let other =
        effective_temperature(&set(&[(1.0, 1.0, 1.0, 0.0, 0.3)]), &grid(0.1, 3.0, 31)).unwrap();
    assert!(reconstruct_correlation(&j, &other, &tg).is_err());
}

#[test]
fn reconstruction_recovers_thermal_correlation() {
    let (beta, w0, gamma) = (2.0, 1.0, 0.05);
    let m = thermal_tls(beta, w0, gamma);
    let ts = m.transitions();
    let g = grid(0.25 * gamma, 4.0, 8000);
    let j = spectral_density_from_chi(&chi_multilevel(&ts.with_reverse_transitions(), &g).unwrap());
    let b = effective_temperature(&ts, &g).unwrap();
    let tg = TimeGrid::new(3.0 / gamma, 61).unwrap();
    let rebuilt = reconstruct_correlation(&j, &b, &tg).unwrap();
    let original = correlation_from_transitions(&ts, &tg).unwrap();
    // Finite-linewidth mismatch of order gamma.
    assert!(original.max_relative_deviation(&rebuilt, tg.t_max()) < gamma);
}

#[test]
fn spike_discretizes_to_collective_coupling() {
    let g = grid(-4.0, 4.0, 4001);
    let ts = set(&[(0.0, 4.0, 1.0, 0.0, 0.3)]);
    let j = line_spectral_density(&ts, &g).unwrap();
    assert_relative_eq!(j.integral(), PI * 4.0, max_relative = 1e-14);
    let bath = discretize_bath(&j, 1, 0.3).unwrap();
    assert_eq!(bath.len(), 1);
    assert_relative_eq!(bath.modes()[0].coupling, 2.0, max_relative = 1e-14);
    assert_eq!(bath.modes()[0].omega, 0.0);
    assert_eq!(bath.modes()[0].gamma, 0.3);
}

#[test]
fn line_deposits_at_grid_edges_and_outside() {
    let g = grid(0.0, 1.0, 11);
    let j = line_spectral_density(
        &set(&[(0.0, 1.0, 1.0, 0.0, 0.1), (0.95, 2.0, 1.0, 0.0, 0.1)]),
        &g,
    )
    .unwrap();
    assert_relative_eq!(j.integral(), 3.0 * PI, max_relative = 1e-14);
    assert!(line_spectral_density(&set(&[(2.0, 1.0, 1.0, 0.0, 0.1)]), &g).is_err());
}

#[test]
fn discretization_validation() {
    let g = grid(0.0, 1.0, 11);
    assert!(discretize_bath(&RealSpectrum::zeros(g), 4, 0.1).is_err());
    let j = RealSpectrum::from_fn(g, |w| w).unwrap();
    assert!(discretize_bath(&j, 0, 0.1).is_err());
    assert!(discretize_bath(&j, 3, 0.0).is_err());
    assert!(DiscretizedBath::new(vec![]).is_err());
}

#[test]
fn single_mode_from_broad_density() {
    let g = grid(0.5, 1.5, 1001);
    let j = RealSpectrum::from_fn(g, |w| 1.0 - (w - 1.0).abs()).unwrap();
    let bath = discretize_bath(&j, 1, 0.01).unwrap();
    assert_relative_eq!(
        bath.total_coupling(),
        j.integral() / PI,
        max_relative = 1e-14
    );
    assert_relative_eq!(bath.modes()[0].omega, 1.0, epsilon = 1e-15);
}

proptest! {
    #[test]
    fn coupling_sum_independent_of_mode_count(
        n in 1usize..300,
        center in 0.5..3.5f64,
        width in 0.05..2.0f64,
    ) {
        let g = grid(0.0, 4.0, 801);
        let j = RealSpectrum::from_fn(g, |w| width / ((w - center).powi(2) + width * width)).unwrap();
        let bath = discretize_bath(&j, n, 0.1).unwrap();
        prop_assert_eq!(bath.len(), n);
        let expected = j.integral() / PI;
        prop_assert!((bath.total_coupling() - expected).abs() <= 1e-12 * expected);
    }
}
