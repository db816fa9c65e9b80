"""Smoke test for the installed extension module.

    maturin build --release -o dist && pip install dist/polarispec-*.whl
    python python/smoke_test.py
"""

import math

import polarispec as ps


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    grid = ps.FrequencyGrid(-4.0, 4.0, 4001)
    cav = ps.CavityParams(0.0, 0.05, 0.05)

    tls = ps.TlsEnsemble(1.0, 2.0, 0.0, 0.3)
    chi = ps.chi_tls_thermal(tls, grid)
    assert close(chi[2000], 4.0j / 0.15, 1e-12)

    s = ps.spectra_harmonic(chi, grid, cav)
    assert s.max_energy_defect() < 1e-12
    peaks = ps.local_maxima(s.transmission, grid)
    assert [round(w, 1) for w, _ in peaks] == [-2.0, 2.0], peaks
    print(f"Rabi splitting {s.peak_splitting():.3f}")

    d = ps.photon_green_function(chi, grid, cav)
    via_green = ps.spectra_from_green(d, grid, cav)
    assert max(abs(a - b) for a, b in zip(via_green.transmission, s.transmission)) < 1e-12

    hot = ps.TlsEnsemble(1.0, 2.0, 1.0, 0.3, beta=1.0)
    cold = ps.TlsEnsemble(1.0, 2.0, 1.0, 0.3)
    factor = math.tanh(0.5)
    for a, b in zip(hot.chi(grid), cold.chi(grid)):
        assert close(a, factor * b, 1e-12)

    wide = ps.chi_disordered(tls, "lorentzian", 0.0, 1.0, grid)
    widened = ps.chi_tls_thermal(ps.TlsEnsemble(1.0, 2.0, 0.0, 1.3), grid)
    assert max(abs(a - b) for a, b in zip(wide, widened)) < 1e-12

    weights = ps.franck_condon_weights(3.0, None)
    assert close(sum(weights), 1.0, 1e-12)
    vib = ps.chi_vibronic(1.0, 1.0, 0.0, 0.3, 3.0, 0.1, grid)
    assert len(ps.local_maxima([c.imag for c in vib], grid)) >= 7

    third = 1.0 / 3.0
    saturated = ps.chi_multilevel_model(
        [(0.0, third), (1.0, third), (3.0, third)],
        [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)],
        1.0, 1.0, 0.3, grid,
    )
    assert all(c == 0 for c in saturated)

    j = ps.line_spectral_density(tls.transitions(), grid)
    bath = ps.discretize_bath(j, grid, 64, 0.3)
    finite = ps.spectra_from_green(ps.green_finite_n(bath, cav, grid), grid, cav)
    dev = max(abs(a - b) for a, b in zip(finite.transmission, s.transmission))
    assert dev < 1e-3, dev
    print(f"64-mode bath vs susceptibility path: max |dT| = {dev:.1e}")

    kk = ps.kramers_kronig_real(chi, grid)
    scale = max(abs(c.real) for c in chi)
    inner = [i for i, w in enumerate(grid.points()) if abs(w) <= 3.1]
    assert max(abs(kk[i] - chi[i].real) for i in inner) < 0.02 * scale

    thermal = ps.TlsEnsemble(1.0, 2.0, 1.0, 0.05, beta=2.0)
    beta = ps.effective_temperature(thermal.transitions(), ps.FrequencyGrid(0.5, 2.0, 4))
    assert all(close(b, 2.0, 1e-9) for b in beta), beta

    try:
        ps.CavityParams(0.0, 0.0, 0.0)
    except ValueError as e:
        print(f"lossless cavity rejected: {e}")
    else:
        raise AssertionError("lossless cavity accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
