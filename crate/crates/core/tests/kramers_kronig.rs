use polarispec_core::{
    chi_tls_thermal, kramers_kronig_real, make_grid, ComplexSpectrum, TlsEnsemble,
};

fn relative_error(chi: &ComplexSpectrum, margin: f64) -> f64 {
    let re = kramers_kronig_real(chi).unwrap();
    let g = chi.grid();
    let interior: Vec<usize> = (0..g.len())
        .filter(|&i| g.point(i) - g.omega_min() >= margin && g.omega_max() - g.point(i) >= margin)
        .collect();
    let scale = interior
        .iter()
        .map(|&i| chi.values()[i].re.abs())
        .fold(0.0, f64::max);
    interior
        .iter()
        .map(|&i| (re.values()[i] - chi.values()[i].re).abs() / scale)
        .fold(0.0, f64::max)
}

#[test]
fn recovers_real_part_of_a_line() {
    let grid = make_grid(-4.0, 4.0, 4001).unwrap();
    let m = TlsEnsemble::with_collective_coupling(2.0, 0.0, 0.3).unwrap();
    let chi = chi_tls_thermal(&m, &grid).unwrap();
    assert!(relative_error(&chi, 3.0 * 0.3) < 0.02);
    assert!(relative_error(&chi, 10.0 * 0.3) < 0.02);
}

#[test]
fn narrow_line_on_a_wide_grid() {
    let grid = make_grid(-20.0, 20.0, 8001).unwrap();
    let m = TlsEnsemble::with_collective_coupling(1.0, 1.0, 0.05).unwrap();
    let chi = chi_tls_thermal(&m, &grid).unwrap();
    assert!(relative_error(&chi, 0.5) < 0.02);
}

#[test]
fn too_short_grid_rejected() {
    let grid = make_grid(0.0, 1.0, 2).unwrap();
    assert!(kramers_kronig_real(&ComplexSpectrum::zeros(grid)).is_err());
}
