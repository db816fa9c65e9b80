//! Principal-value Hilbert transform used to check causality of a tabulated
//! susceptibility.

use crate::error::{validation, Result};
use crate::spectrum::{ComplexSpectrum, RealSpectrum};

/// Real part implied by the imaginary part of a causal response that decays
/// at large `|omega|`:
/// `Re chi(w) = (1/pi) PV integral Im chi(w') / (w' - w) dw'` over the grid.
///
/// The singularity is subtracted: the smooth remainder
/// `(f(w') - f(w)) / (w' - w)` is integrated by the trapezoidal rule (using
/// the local derivative at `w' = w`) and the subtracted term is integrated
/// exactly, `f(w) ln((b - w) / (w - a))`. Endpoints return the one-sided
/// estimate and are not meaningful.
pub fn kramers_kronig_real(chi: &ComplexSpectrum) -> Result<RealSpectrum> {
    let grid = *chi.grid();
    let n = grid.len();
    if n < 3 {
        return validation("Kramers-Kronig transform needs at least 3 grid points");
    }
    let f: Vec<f64> = chi.values().iter().map(|c| c.im).collect();
    let x = grid.to_vec();
    let h = grid.spacing();
    let (a, b) = (grid.omega_min(), grid.omega_max());
    let values = (0..n)
        .map(|i| {
            let derivative = if i == 0 {
                (f[1] - f[0]) / h
            } else if i == n - 1 {
                (f[n - 1] - f[n - 2]) / h
            } else {
                (f[i + 1] - f[i - 1]) / (2.0 * h)
            };
            let mut acc = 0.0;
            for k in 0..n {
                let g = if k == i {
                    derivative
                } else {
                    (f[k] - f[i]) / (x[k] - x[i])
                };
                let wt = if k == 0 || k == n - 1 { 0.5 * h } else { h };
                acc += wt * g;
            }
            let log_term = if i == 0 || i == n - 1 {
                0.0
            } else {
                f[i] * ((b - x[i]) / (x[i] - a)).ln()
            };
            (acc + log_term) / std::f64::consts::PI
        })
        .collect();
    RealSpectrum::new(grid, values)
}
