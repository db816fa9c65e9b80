//! Susceptibility from a spectral density or from a dipole correlation function.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bathmap::CorrelationFunction;
use crate::error::{validation, Result};
use crate::grid::{FrequencyGrid, TimeGrid};
use crate::spectrum::{ComplexSpectrum, RealSpectrum};

/// `ln((c - x0) / (c - x1))` for `Im c > 0`, accurate when the ratio is near 1.
fn log_ratio(c: Complex64, x0: f64, x1: f64) -> Complex64 {
    let u = (x1 - x0) / (c - x1);
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    let im = u.im.atan2(1.0 + u.re);
    Complex64::new(re, im)
}

/// `-(1/pi) * integral J(w') / (omega - w' + i eta) dw'` with `J` linear
/// between grid points, integrated exactly panel by panel.
fn regularized_hilbert(j: &RealSpectrum, omega: f64, eta: f64) -> Complex64 {
    let grid = j.grid();
    let values = j.values();
    let c = Complex64::new(omega, eta);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..values.len() - 1 {
        let (j0, j1) = (values[k], values[k + 1]);
        if j0 == 0.0 && j1 == 0.0 {
            continue;
        }
        let (x0, x1) = (grid.point(k), grid.point(k + 1));
        let slope = (j1 - j0) / (x1 - x0);
        let j_at_c = j0 + slope * (c - x0);
        acc += j_at_c * log_ratio(c, x0, x1) - slope * (x1 - x0);
    }
    -acc / PI
}

/// Susceptibility from a spectral density.
///
/// For `omega >= 0` the broadened Hilbert integral
/// `-(1/pi) * integral J(w') / (omega - w' + i gamma_reg / 2)` is evaluated with
/// `J` interpolated linearly between its grid points; negative frequencies use
/// `chi(-omega) = conj(chi(omega))`. `gamma_reg` defaults to twice the spacing
/// of `J`'s grid.
pub fn chi_from_spectral_density(
    j: &RealSpectrum,
    grid: &FrequencyGrid,
    gamma_reg: Option<f64>,
) -> Result<ComplexSpectrum> {
    if let Some((i, v)) = j.values().iter().enumerate().find(|(_, v)| **v < 0.0) {
        return validation(format!(
            "spectral density must be non-negative (J = {v} at omega = {})",
            j.grid().point(i)
        ));
    }
    let gamma_reg = gamma_reg.unwrap_or(2.0 * j.grid().spacing());
    if !(gamma_reg.is_finite() && gamma_reg > 0.0) {
        return validation(format!(
            "regularization gamma must be > 0 (got {gamma_reg})"
        ));
    }
    let eta = 0.5 * gamma_reg;
    let values: Vec<Complex64> = grid
        .to_vec()
        .into_par_iter()
        .map(|w| {
            let chi = regularized_hilbert(j, w.abs(), eta);
            if w >= 0.0 {
                chi
            } else {
                chi.conj()
            }
        })
        .collect();
    ComplexSpectrum::new(*grid, values)
}

/// Relative size of `|C2(t_max)| / |C2(0)|` above which a correlation
/// function is considered not to have decayed within its window.
pub const UNDAMPED_THRESHOLD: f64 = 1e-3;

/// Non-fatal accuracy problems found while transforming sampled data.
#[derive(Debug, Clone, PartialEq)]
pub enum AccuracyWarning {
    /// The correlation function has not decayed over the time window, so the
    /// truncated Fourier transform is unreliable.
    UndampedCorrelation { ratio: f64 },
}

impl fmt::Display for AccuracyWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UndampedCorrelation { ratio } => write!(
                f,
                "correlation function has not decayed over the time window \
                 (|C2(t_max)|/|C2(0)| = {ratio:.3e} > {UNDAMPED_THRESHOLD:e}); \
                 the susceptibility may be inaccurate"
            ),
        }
    }
}

/// Susceptibility computed from a correlation function, with any accuracy warning.
#[derive(Debug, Clone)]
pub struct CorrelationChi {
    pub chi: ComplexSpectrum,
    pub warning: Option<AccuracyWarning>,
}

/// Trapezoid weights with third-order Gregory end corrections.
pub(crate) fn gregory_weights(tg: &TimeGrid) -> Vec<f64> {
    let n = tg.len();
    let h = tg.step();
    let mut w = vec![h; n];
    if n >= 6 {
        for (k, c) in [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0].into_iter().enumerate() {
            w[k] = c * h;
            w[n - 1 - k] = c * h;
        }
    } else {
        w[0] = 0.5 * h;
        w[n - 1] = 0.5 * h;
    }
    w
}

/// Unit phasors `exp(i omega t_k)` for every time point, reseeded periodically
/// to keep the recurrence error at rounding level.
pub(crate) fn phasors(omega: f64, tg: &TimeGrid) -> impl Iterator<Item = Complex64> + '_ {
    const RESEED: usize = 256;
    let step = Complex64::cis(omega * tg.step());
    let mut current = Complex64::new(1.0, 0.0);
    (0..tg.len()).map(move |k| {
        if k % RESEED == 0 {
            current = Complex64::cis(omega * tg.point(k));
        }
        let out = current;
        current *= step;
        out
    })
}

pub(crate) fn damping_warning(c2: &CorrelationFunction) -> Option<AccuracyWarning> {
    let values = c2.values();
    let first = values[0].norm();
    let last = values[values.len() - 1].norm();
    if first == 0.0 {
        return (last > 0.0).then_some(AccuracyWarning::UndampedCorrelation {
            ratio: f64::INFINITY,
        });
    }
    let ratio = last / first;
    (ratio > UNDAMPED_THRESHOLD).then_some(AccuracyWarning::UndampedCorrelation { ratio })
}

/// Susceptibility `chi(omega) = -[C2(omega) + conj(C2(-omega))]` from a
/// correlation function sampled for `t >= 0`, using the one-sided transform
/// `f(omega) = -i * integral_0^inf exp(i omega t) f(t) dt`.
///
/// The result contains both resonant and anti-resonant poles of every
/// transition, i.e. it equals `chi_multilevel` of the set extended by
/// `TransitionSet::with_reverse_transitions`.
pub fn chi_from_correlation(
    c2: &CorrelationFunction,
    grid: &FrequencyGrid,
) -> Result<CorrelationChi> {
    let tg = *c2.grid();
    let weights = gregory_weights(&tg);
    let samples = c2.values();
    let values: Vec<Complex64> = grid
        .to_vec()
        .into_par_iter()
        .map(|w| {
            // -i * sum exp(+-i w t) C(t) dt, accumulated in time order
            let mut forward = Complex64::new(0.0, 0.0);
            let mut backward = Complex64::new(0.0, 0.0);
            for ((p, c), wt) in phasors(w, &tg).zip(samples).zip(&weights) {
                let term = c * wt;
                forward += p * term;
                backward += p.conj() * term;
            }
            let i = Complex64::i();
            let c_plus = -i * forward;
            let c_minus = -i * backward;
            -(c_plus + c_minus.conj())
        })
        .collect();
    Ok(CorrelationChi {
        chi: ComplexSpectrum::new(*grid, values)?,
        warning: damping_warning(c2),
    })
}
