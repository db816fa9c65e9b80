use num_complex::Complex64;
use polarispec_core::io::{read_chi, write_chi, write_correlation, write_tra};
use polarispec_core::{
    chi_tls_thermal, correlation_from_transitions, make_grid, spectra_harmonic, CavityParams,
    InverseTemperature, TimeGrid, TlsEnsemble,
};

#[test]
fn chi_round_trip_is_exact() {
    let grid = make_grid(-4.0, 4.0, 401).unwrap();
    let m = TlsEnsemble::new(7.0, 0.3, 0.2, InverseTemperature::new(1.1).unwrap(), 0.13).unwrap();
    let chi = chi_tls_thermal(&m, &grid).unwrap();
    let mut buf = Vec::new();
    write_chi(&mut buf, &chi).unwrap();
    let back = read_chi(buf.as_slice()).unwrap();
    assert_eq!(back.values(), chi.values());
    assert_eq!(back.grid().len(), 401);
    let cav = CavityParams::new(0.0, 0.05, 0.05).unwrap();
    let a = spectra_harmonic(&chi, &cav).unwrap();
    let b = spectra_harmonic(&back, &cav).unwrap();
    assert!(a.max_abs_deviation(&b) <= 1e-12);
}

#[test]
fn headers_and_formatting() {
    let grid = make_grid(0.0, 1.0, 2).unwrap();
    let m = TlsEnsemble::with_collective_coupling(1.0, 0.5, 0.1).unwrap();
    let s = spectra_harmonic(
        &chi_tls_thermal(&m, &grid).unwrap(),
        &CavityParams::new(0.5, 0.05, 0.05).unwrap(),
    )
    .unwrap();
    let mut buf = Vec::new();
    write_tra(&mut buf, &s).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("omega,T,R,A"));
    assert!(lines.next().unwrap().starts_with("0.0000000000000000e0,"));

    let tg = TimeGrid::new(1.0, 2).unwrap();
    let c2 = correlation_from_transitions(&m.transitions(), &tg).unwrap();
    let mut buf = Vec::new();
    write_correlation(&mut buf, &c2).unwrap();
    assert!(String::from_utf8(buf)
        .unwrap()
        .starts_with("t,re_c2,im_c2\n"));
}

#[test]
fn malformed_tables_rejected() {
    assert!(read_chi("omega,re,im\n0,1,2\n1,1,2\n".as_bytes()).is_err());
    assert!(read_chi("omega,re_chi,im_chi\n0,1,2\n".as_bytes()).is_err());
    assert!(read_chi("omega,re_chi,im_chi\n0,1,2\n1,x,2\n".as_bytes()).is_err());
    assert!(read_chi("omega,re_chi,im_chi\n0,1,2\n1,1,2\n3,1,2\n".as_bytes()).is_err());
    let ok = read_chi("omega,re_chi,im_chi\n0,1,2\n0.5,1,2\n1,1,-2\n".as_bytes()).unwrap();
    assert_eq!(ok.values()[2], Complex64::new(1.0, -2.0));
}
