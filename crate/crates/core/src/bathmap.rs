//! Surrogate harmonic bath for the molecular ensemble: dipole correlation
//! functions, effective spectral density, frequency-resolved effective
//! temperature, and discretization into a finite set of bath modes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{validation, Error, Result};
use crate::grid::{FrequencyGrid, TimeGrid};
use crate::spectrum::{ComplexSpectrum, RealSpectrum};
use crate::susceptibility::conversions::{gregory_weights, phasors};
use crate::susceptibility::{AccuracyWarning, TransitionSet};

/// Two-point dipole correlation function `C2(t)` sampled for `t >= 0`,
/// including the squared coupling prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationFunction {
    grid: TimeGrid,
    values: Vec<Complex64>,
}

impl CorrelationFunction {
    pub fn new(grid: TimeGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return validation(format!(
                "correlation function has {} samples but the time grid has {} points",
                values.len(),
                grid.len()
            ));
        }
        if let Some(i) = values
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return validation(format!(
                "non-finite correlation sample at t = {}",
                grid.point(i)
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest `|C(t) - other(t)|` relative to `|C(0)|`, over samples with `t <= t_limit`.
    pub fn max_relative_deviation(&self, other: &CorrelationFunction, t_limit: f64) -> f64 {
        let scale = self.values[0].norm().max(f64::MIN_POSITIVE);
        self.grid
            .points()
            .zip(self.values.iter().zip(&other.values))
            .filter(|(t, _)| *t <= t_limit)
            .map(|(_, (a, b))| (a - b).norm() / scale)
            .fold(0.0, f64::max)
    }

    /// Warning if the samples have not decayed over the window.
    pub fn damping_warning(&self) -> Option<AccuracyWarning> {
        crate::susceptibility::conversions::damping_warning(self)
    }
}

/// Eigenstate expansion of the correlation function. Each listed `y -> z`
/// pair contributes in both directions:
/// `weight * exp(-gamma t / 2) * (p_y exp(-i omega_zy t) + p_z exp(+i omega_zy t))`.
pub fn correlation_from_transitions(
    ts: &TransitionSet,
    tg: &TimeGrid,
) -> Result<CorrelationFunction> {
    let values = tg
        .points()
        .map(|t| {
            ts.iter()
                .map(|tr| {
                    let damp = (-0.5 * tr.gamma * t).exp();
                    let phase = Complex64::cis(-tr.omega_zy * t);
                    tr.weight * damp * (tr.p_y * phase + tr.p_z * phase.conj())
                })
                .sum()
        })
        .collect();
    CorrelationFunction::new(*tg, values)
}

/// Negative spectral-density values smaller than this fraction of the
/// maximum are treated as quadrature noise and zeroed; larger ones signal
/// population inversion.
pub const NEGATIVE_DENSITY_TOLERANCE: f64 = 1e-6;

fn clip_negative_density(grid: &FrequencyGrid, mut values: Vec<f64>) -> Result<Vec<f64>> {
    let max = values.iter().copied().fold(0.0, f64::max);
    for (i, v) in values.iter_mut().enumerate() {
        if *v < 0.0 {
            if -*v <= NEGATIVE_DENSITY_TOLERANCE * max {
                *v = 0.0;
            } else {
                return Err(Error::PopulationInversion {
                    omega: grid.point(i),
                });
            }
        }
    }
    Ok(values)
}

/// Effective spectral density from a correlation function,
/// `J(omega) = i Theta(omega) * integral C2(t) sin(omega t) dt` over all `t`,
/// using `C2(-t) = conj(C2(t))`, which reduces to
/// `-2 * integral_0^inf Im C2(t) sin(omega t) dt`.
pub fn spectral_density_from_correlation(
    c2: &CorrelationFunction,
    grid: &FrequencyGrid,
) -> Result<RealSpectrum> {
    let tg = *c2.grid();
    let weights = gregory_weights(&tg);
    let values: Vec<f64> = grid
        .to_vec()
        .into_par_iter()
        .map(|w| {
            if w < 0.0 {
                return 0.0;
            }
            let s: f64 = phasors(w, &tg)
                .zip(c2.values())
                .zip(&weights)
                .map(|((p, c), wt)| c.im * p.im * wt)
                .sum();
            -2.0 * s
        })
        .collect();
    RealSpectrum::new(*grid, clip_negative_density(grid, values)?)
}

/// `J(omega) = Theta(omega) Im chi(omega)`.
pub fn spectral_density_from_chi(chi: &ComplexSpectrum) -> RealSpectrum {
    let grid = *chi.grid();
    let values = grid
        .points()
        .zip(chi.values())
        .map(|(w, c)| if w >= 0.0 { c.im } else { 0.0 })
        .collect();
    RealSpectrum::new(grid, values).expect("finite chi gives finite J")
}

/// Fraction of the total line weight allowed to fall outside the grid
/// (e.g. the far tail of a vibronic progression) before
/// [`line_spectral_density`] refuses.
pub const LINE_WEIGHT_OUTSIDE_TOLERANCE: f64 = 1e-6;

/// Spectral density of the infinitely narrow lines of a transition set:
/// each transition deposits a discrete delta of weight
/// `pi * (p_y - p_z) * weight` at `omega_zy`, split linearly between the two
/// nearest grid points so that the trapezoidal integral and first moment are
/// preserved. Transitions are treated as absorption lines regardless of the
/// sign of `omega_zy`, which lets rotating-frame scenarios (e.g. a line at
/// `omega = 0`) be discretized.
pub fn line_spectral_density(ts: &TransitionSet, grid: &FrequencyGrid) -> Result<RealSpectrum> {
    let h = grid.spacing();
    let n = grid.len();
    let mut values = vec![0.0; n];
    let mut total = 0.0;
    let mut dropped = 0.0;
    for tr in ts.iter() {
        let strength = PI * tr.population_difference() * tr.weight;
        if strength == 0.0 {
            continue;
        }
        total += strength.abs();
        let u = (tr.omega_zy - grid.omega_min()) / h;
        if u < 0.0 || u > (n - 1) as f64 {
            dropped += strength.abs();
            continue;
        }
        let i = (u.floor() as usize).min(n - 2);
        let frac = u - i as f64;
        for (idx, share) in [(i, 1.0 - frac), (i + 1, frac)] {
            if share == 0.0 {
                continue;
            }
            let end_factor = if idx == 0 || idx == n - 1 { 2.0 } else { 1.0 };
            values[idx] += end_factor * share * strength / h;
        }
    }
    if total > 0.0 && dropped > LINE_WEIGHT_OUTSIDE_TOLERANCE * total {
        return validation(format!(
            "{:.3e} of the line weight lies outside the grid [{}, {}]",
            dropped / total,
            grid.omega_min(),
            grid.omega_max()
        ));
    }
    RealSpectrum::new(*grid, values)
}

/// Frequency-resolved inverse temperature of the surrogate bath; `+inf`
/// where the emission side vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveTemperature {
    grid: FrequencyGrid,
    values: Vec<f64>,
}

impl EffectiveTemperature {
    pub fn new(grid: FrequencyGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return validation("effective temperature length does not match its grid");
        }
        if grid.omega_min() <= 0.0 {
            return validation("effective temperature is defined on positive frequencies only");
        }
        if let Some(v) = values.iter().find(|v| v.is_nan() || **v < 0.0) {
            return validation(format!(
                "effective inverse temperature must be >= 0 (got {v})"
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `coth(beta_eff(omega_i) * omega_i / 2)`, exactly 1 at infinite `beta_eff`.
    pub fn coth_half(&self, i: usize) -> f64 {
        let beta = self.values[i];
        if beta.is_infinite() {
            1.0
        } else {
            1.0 / (0.5 * beta * self.grid.point(i)).tanh()
        }
    }
}

struct Line {
    omega: f64,
    weight: f64,
    gamma: f64,
    ln_lower: f64,
    // ln(p_upper / p_lower) / omega, or -inf when the upper level is empty
    neg_beta: f64,
}

fn lorentzian(x: f64, gamma: f64) -> f64 {
    gamma / (x * x + 0.25 * gamma * gamma)
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Effective inverse temperature `beta_eff(omega) = ln[C2(omega) / C2(-omega)] / omega`.
///
/// Each transition is mapped to its uphill orientation with level
/// populations `(p_lower, p_upper)`. Its absorption side is broadened into
/// `p_lower * weight * L(omega - omega_line)` and its emission side into
/// `p_lower * weight * L(omega - omega_line) * (p_upper / p_lower)^(omega / omega_line)`,
/// so an isolated line reproduces the ratio of its delta-peak weights and a
/// Boltzmann-populated set gives `beta_eff(omega) = beta` at every frequency.
pub fn effective_temperature(
    ts: &TransitionSet,
    grid: &FrequencyGrid,
) -> Result<EffectiveTemperature> {
    if grid.omega_min() <= 0.0 {
        return validation(format!(
            "effective temperature needs a positive-frequency grid (omega_min = {})",
            grid.omega_min()
        ));
    }
    let mut lines = Vec::new();
    for tr in ts.iter() {
        let (omega, lower, upper) = if tr.omega_zy > 0.0 {
            (tr.omega_zy, tr.p_y, tr.p_z)
        } else if tr.omega_zy < 0.0 {
            (-tr.omega_zy, tr.p_z, tr.p_y)
        } else {
            continue;
        };
        if tr.weight == 0.0 || (lower == 0.0 && upper == 0.0) {
            continue;
        }
        if upper > lower {
            return Err(Error::PopulationInversion { omega });
        }
        let neg_beta = if upper == 0.0 {
            f64::NEG_INFINITY
        } else {
            (upper / lower).ln() / omega
        };
        lines.push(Line {
            omega,
            weight: tr.weight,
            gamma: tr.gamma,
            ln_lower: lower.ln(),
            neg_beta,
        });
    }
    let mut absorb = Vec::with_capacity(lines.len());
    let mut emit = Vec::with_capacity(lines.len());
    let mut values = Vec::with_capacity(grid.len());
    for w in grid.points() {
        absorb.clear();
        emit.clear();
        for l in &lines {
            let base = l.ln_lower + (l.weight * lorentzian(w - l.omega, l.gamma)).ln();
            absorb.push(base);
            emit.push(base + l.neg_beta * w);
        }
        let ln_absorb = log_sum_exp(&absorb);
        let ln_emit = log_sum_exp(&emit);
        let beta = if ln_emit == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            (ln_absorb - ln_emit) / w
        };
        if beta < 0.0 {
            return Err(Error::PopulationInversion { omega: w });
        }
        values.push(beta);
    }
    EffectiveTemperature::new(*grid, values)
}

/// Correlation function of a harmonic bath with spectral density `J` and
/// frequency-dependent inverse temperature:
/// `C2(t) = (1/pi) * integral J(w) [coth(beta_eff(w) w / 2) cos(w t) - i sin(w t)] dw`,
/// by the trapezoidal rule on `J`'s grid.
pub fn reconstruct_correlation(
    j: &RealSpectrum,
    beta_eff: &EffectiveTemperature,
    tg: &TimeGrid,
) -> Result<CorrelationFunction> {
    if j.grid() != beta_eff.grid() {
        return validation("spectral density and effective temperature must share a grid");
    }
    let grid = *j.grid();
    let h = grid.spacing();
    let n = grid.len();
    let mut even = Vec::with_capacity(n);
    let mut odd = Vec::with_capacity(n);
    for (i, (w, jv)) in grid.points().zip(j.values()).enumerate() {
        let wt = if i == 0 || i == n - 1 { 0.5 * h } else { h } / PI;
        if *jv == 0.0 {
            even.push(0.0);
            odd.push(0.0);
            continue;
        }
        let coth = beta_eff.coth_half(i);
        if !coth.is_finite() {
            return Err(Error::Numerical(format!(
                "J > 0 at omega = {w} where beta_eff = 0 makes the correlation diverge"
            )));
        }
        even.push(wt * jv * coth);
        odd.push(wt * jv);
    }
    let omegas = grid.to_vec();
    let values: Vec<Complex64> = tg
        .points()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for ((w, e), o) in omegas.iter().zip(&even).zip(&odd) {
                if *o == 0.0 {
                    continue;
                }
                let (s, c) = (w * t).sin_cos();
                acc += Complex64::new(e * c, -o * s);
            }
            acc
        })
        .collect();
    CorrelationFunction::new(*tg, values)
}

/// One surrogate bath mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode {
    pub omega: f64,
    /// Coupling to the photon, `|c_j|`; stored non-negative.
    pub coupling: f64,
    /// Non-Hermitian broadening of the mode.
    pub gamma: f64,
}

/// Finite set of surrogate modes coupled to the cavity photon.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedBath {
    modes: Vec<BathMode>,
}

impl DiscretizedBath {
    pub fn new(modes: Vec<BathMode>) -> Result<Self> {
        if modes.is_empty() {
            return validation("discretized bath needs at least one mode");
        }
        for m in &modes {
            if !m.omega.is_finite() {
                return validation("bath mode frequency must be finite");
            }
            if !(m.coupling.is_finite() && m.coupling >= 0.0) {
                return validation(format!("bath coupling must be >= 0 (got {})", m.coupling));
            }
            if !(m.gamma.is_finite() && m.gamma > 0.0) {
                return validation(format!("bath mode linewidth must be > 0 (got {})", m.gamma));
            }
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[BathMode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// `sum |c_j|^2`.
    pub fn total_coupling(&self) -> f64 {
        self.modes.iter().map(|m| m.coupling * m.coupling).sum()
    }

    /// Self-energy of the photon from this bath,
    /// `sum |c_j|^2 / (omega - omega_j + i gamma_j / 2)`.
    pub fn self_energy(&self, omega: f64) -> Complex64 {
        self.modes
            .iter()
            .map(|m| m.coupling * m.coupling / Complex64::new(omega - m.omega, 0.5 * m.gamma))
            .sum()
    }
}

/// Integral of the piecewise-linear interpolant of `values` from the grid
/// start to `x`.
fn cumulative_integral(grid: &FrequencyGrid, values: &[f64], prefix: &[f64], x: f64) -> f64 {
    let h = grid.spacing();
    let n = values.len();
    let u = ((x - grid.omega_min()) / h).clamp(0.0, (n - 1) as f64);
    let i = (u.floor() as usize).min(n - 2);
    let d = (u - i as f64) * h;
    let slope = (values[i + 1] - values[i]) / h;
    prefix[i] + values[i] * d + 0.5 * slope * d * d
}

/// Splits `J`'s grid span into `n_modes` equal bins and places one mode at
/// each bin midpoint with `|c_j|^2 = (1/pi) * integral_bin J`. The bin
/// integrals partition the trapezoidal integral of `J`, so the total coupling
/// does not depend on `n_modes`.
pub fn discretize_bath(
    j: &RealSpectrum,
    n_modes: usize,
    gamma_mode: f64,
) -> Result<DiscretizedBath> {
    if n_modes == 0 {
        return validation("n_modes must be >= 1");
    }
    if !(gamma_mode.is_finite() && gamma_mode > 0.0) {
        return validation(format!("mode linewidth must be > 0 (got {gamma_mode})"));
    }
    if let Some(v) = j.values().iter().find(|v| **v < 0.0) {
        return validation(format!("spectral density must be non-negative (found {v})"));
    }
    if j.values().iter().all(|v| *v == 0.0) {
        return validation("spectral density is identically zero; nothing to discretize");
    }
    let grid = *j.grid();
    let values = j.values();
    let h = grid.spacing();
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    prefix.push(0.0);
    for k in 0..values.len() - 1 {
        acc += 0.5 * h * (values[k] + values[k + 1]);
        prefix.push(acc);
    }
    let (lo, hi) = (grid.omega_min(), grid.omega_max());
    let width = (hi - lo) / n_modes as f64;
    let edge = |k: usize| {
        if k == n_modes {
            hi
        } else {
            lo + k as f64 * width
        }
    };
    let mut previous = cumulative_integral(&grid, values, &prefix, edge(0));
    let mut modes = Vec::with_capacity(n_modes);
    for k in 0..n_modes {
        let next = cumulative_integral(&grid, values, &prefix, edge(k + 1));
        let weight = ((next - previous) / PI).max(0.0);
        previous = next;
        modes.push(BathMode {
            omega: 0.5 * (edge(k) + edge(k + 1)),
            coupling: weight.sqrt(),
            gamma: gamma_mode,
        });
    }
    DiscretizedBath::new(modes)
}

#[cfg(test)]
mod tests;
