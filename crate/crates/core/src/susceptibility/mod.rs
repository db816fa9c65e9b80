//! Molecular linear susceptibilities chi(omega).
//!
//! Every model reduces to a sum of broadened poles
//! `chi(omega) = -sum (p_y - p_z) * weight / (omega - omega_zy + i gamma / 2)`.
//! Couplings are bookkept as `weight = N g^2 |mu|^2` with hbar = 1.

pub(crate) mod conversions;
mod faddeeva;

pub use conversions::{
    chi_from_correlation, chi_from_spectral_density, AccuracyWarning, CorrelationChi,
};
pub use faddeeva::faddeeva;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{validation, Result};
use crate::grid::FrequencyGrid;
use crate::spectrum::ComplexSpectrum;

/// Tail probability below which the Franck-Condon ladder is truncated.
pub const FRANCK_CONDON_TAIL: f64 = 1e-12;
/// Upper bound on the number of vibronic replicas.
pub const FRANCK_CONDON_MAX_ORDER: usize = 200;

/// Inverse temperature; `Infinite` is zero temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InverseTemperature {
    Finite(f64),
    Infinite,
}

impl InverseTemperature {
    /// Accepts any `beta >= 0`; `f64::INFINITY` maps to `Infinite`.
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_nan() || beta < 0.0 {
            return validation(format!(
                "inverse temperature must be >= 0 (got {beta}); population inversion is not a \
                 built-in model"
            ));
        }
        Ok(if beta.is_infinite() {
            Self::Infinite
        } else {
            Self::Finite(beta)
        })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }

    pub fn value(&self) -> f64 {
        match *self {
            Self::Finite(b) => b,
            Self::Infinite => f64::INFINITY,
        }
    }

    /// `tanh(beta * omega / 2)`, the population difference of a thermal
    /// two-level system. At zero temperature the lower state is fully
    /// occupied, so the factor is 1 for `omega >= 0`.
    pub fn thermal_factor(&self, omega: f64) -> f64 {
        match *self {
            Self::Finite(b) => (0.5 * b * omega).tanh(),
            Self::Infinite => {
                if omega >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            }
        }
    }

    /// Boltzmann populations `(p_lower, p_upper)` of a two-level system split by `omega`.
    pub fn two_level_populations(&self, omega: f64) -> (f64, f64) {
        match *self {
            Self::Infinite => {
                if omega >= 0.0 {
                    (1.0, 0.0)
                } else {
                    (0.0, 1.0)
                }
            }
            Self::Finite(b) => {
                let x = b * omega;
                if x >= 0.0 {
                    let e = (-x).exp();
                    (1.0 / (1.0 + e), e / (1.0 + e))
                } else {
                    let e = x.exp();
                    (e / (1.0 + e), 1.0 / (1.0 + e))
                }
            }
        }
    }
}

/// A single `y -> z` transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    /// `omega_z - omega_y`; may have either sign.
    pub omega_zy: f64,
    /// Squared coupling `|lambda <z|mu|y>|^2`.
    pub weight: f64,
    pub p_y: f64,
    pub p_z: f64,
    /// Linewidth (FWHM of the Lorentzian line).
    pub gamma: f64,
}

impl Transition {
    pub fn new(omega_zy: f64, weight: f64, p_y: f64, p_z: f64, gamma: f64) -> Result<Self> {
        let t = Self {
            omega_zy,
            weight,
            p_y,
            p_z,
            gamma,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.omega_zy.is_finite() {
            return validation(format!(
                "transition frequency must be finite (got {})",
                self.omega_zy
            ));
        }
        if !(self.weight.is_finite() && self.weight >= 0.0) {
            return validation(format!(
                "transition weight must be >= 0 (got {})",
                self.weight
            ));
        }
        for (name, p) in [("p_y", self.p_y), ("p_z", self.p_z)] {
            if !(0.0..=1.0).contains(&p) {
                return validation(format!("{name} must lie in [0, 1] (got {p})"));
            }
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return validation(format!("linewidth gamma must be > 0 (got {})", self.gamma));
        }
        Ok(())
    }

    pub fn population_difference(&self) -> f64 {
        self.p_y - self.p_z
    }

    /// The reverse `z -> y` transition.
    pub fn reversed(&self) -> Self {
        Self {
            omega_zy: -self.omega_zy,
            weight: self.weight,
            p_y: self.p_z,
            p_z: self.p_y,
            gamma: self.gamma,
        }
    }

    /// This transition's term of chi at `omega`.
    #[inline]
    pub fn chi_term(&self, omega: f64) -> Complex64 {
        let diff = self.population_difference();
        if diff == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        -diff * self.weight / Complex64::new(omega - self.omega_zy, 0.5 * self.gamma)
    }
}

/// A list of transitions, each `y -> z` pair listed once.
///
/// Under the rotating-wave approximation the model builders emit only uphill
/// transitions. Correlation functions expand every pair into both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionSet {
    transitions: Vec<Transition>,
}

impl TransitionSet {
    pub fn new(transitions: Vec<Transition>) -> Result<Self> {
        if transitions.is_empty() {
            return validation("transition set must not be empty");
        }
        for t in &transitions {
            t.validate()?;
        }
        Ok(Self { transitions })
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Transition> {
        self.transitions.iter()
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    /// Appends the reverse of every transition, giving the full
    /// (non-rotating-wave) set whose susceptibility satisfies
    /// `chi(-omega) = conj(chi(omega))`.
    pub fn with_reverse_transitions(&self) -> Self {
        let mut all = self.transitions.clone();
        all.extend(self.transitions.iter().map(Transition::reversed));
        Self { transitions: all }
    }

    /// Multiplies every weight by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.transitions
                .iter()
                .map(|t| Transition {
                    weight: t.weight * factor,
                    ..*t
                })
                .collect(),
        )
    }

    /// True when some transition has a larger population in its upper level.
    pub fn has_inversion(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| (t.omega_zy > 0.0 && t.p_z > t.p_y) || (t.omega_zy < 0.0 && t.p_y > t.p_z))
    }

    pub fn chi_at(&self, omega: f64) -> Complex64 {
        self.transitions.iter().map(|t| t.chi_term(omega)).sum()
    }
}

/// Generic susceptibility of an arbitrary transition set.
pub fn chi_multilevel(ts: &TransitionSet, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    ComplexSpectrum::from_fn(*grid, |w| ts.chi_at(w))
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return validation(format!("{name} must be > 0 (got {value})"));
    }
    Ok(())
}

fn check_nonnegative(name: &str, value: f64) -> Result<()> {
    if !(value.is_finite() && value >= 0.0) {
        return validation(format!("{name} must be >= 0 (got {value})"));
    }
    Ok(())
}

/// Ensemble of N identical two-level systems at inverse temperature `beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TlsEnsemble {
    pub n_emitters: f64,
    /// Single-emitter coupling; the collective coupling is `sqrt(N) g`.
    pub g: f64,
    pub omega_exc: f64,
    pub beta: InverseTemperature,
    pub gamma: f64,
}

impl TlsEnsemble {
    pub fn new(
        n_emitters: f64,
        g: f64,
        omega_exc: f64,
        beta: InverseTemperature,
        gamma: f64,
    ) -> Result<Self> {
        let m = Self {
            n_emitters,
            g,
            omega_exc,
            beta,
            gamma,
        };
        m.validate()?;
        Ok(m)
    }

    /// Zero-temperature ensemble with collective coupling `sqrt(N) g = collective`.
    pub fn with_collective_coupling(collective: f64, omega_exc: f64, gamma: f64) -> Result<Self> {
        Self::new(
            1.0,
            collective,
            omega_exc,
            InverseTemperature::Infinite,
            gamma,
        )
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("n_emitters", self.n_emitters)?;
        check_nonnegative("g", self.g)?;
        if !self.omega_exc.is_finite() {
            return validation("omega_exc must be finite");
        }
        if let InverseTemperature::Finite(b) = self.beta {
            check_nonnegative("beta", b)?;
        }
        check_positive("gamma", self.gamma)
    }

    /// `N g^2`.
    pub fn collective_weight(&self) -> f64 {
        self.n_emitters * self.g * self.g
    }

    /// The single uphill transition with Boltzmann populations.
    pub fn transitions(&self) -> TransitionSet {
        let (p_g, p_e) = self.beta.two_level_populations(self.omega_exc);
        TransitionSet {
            transitions: vec![Transition {
                omega_zy: self.omega_exc,
                weight: self.collective_weight(),
                p_y: p_g,
                p_z: p_e,
                gamma: self.gamma,
            }],
        }
    }
}

/// Thermal two-level ensemble: `-N g^2 tanh(beta omega_exc / 2) / (omega - omega_exc + i gamma/2)`.
pub fn chi_tls_thermal(m: &TlsEnsemble, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    m.validate()?;
    let prefactor = m.collective_weight() * m.beta.thermal_factor(m.omega_exc);
    ComplexSpectrum::from_fn(*grid, |w| {
        if prefactor == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        -prefactor / Complex64::new(w - m.omega_exc, 0.5 * m.gamma)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisorderKind {
    Gaussian,
    Lorentzian,
}

/// Distribution of excitation energies. For the Gaussian `sigma` is the
/// standard deviation, for the Lorentzian it is the FWHM.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DisorderSpec {
    pub kind: DisorderKind,
    pub center: f64,
    pub sigma: f64,
}

impl DisorderSpec {
    pub fn new(kind: DisorderKind, center: f64, sigma: f64) -> Result<Self> {
        let d = Self {
            kind,
            center,
            sigma,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.center.is_finite() {
            return validation("disorder center must be finite");
        }
        check_positive("disorder sigma", self.sigma)
    }

    /// Normalized probability density of excitation energies.
    pub fn density(&self, omega_exc: f64) -> f64 {
        let x = omega_exc - self.center;
        match self.kind {
            DisorderKind::Gaussian => {
                (-x * x / (2.0 * self.sigma * self.sigma)).exp() / ((2.0 * PI).sqrt() * self.sigma)
            }
            DisorderKind::Lorentzian => {
                let hw = 0.5 * self.sigma;
                hw / (PI * (x * x + hw * hw))
            }
        }
    }
}

/// Zero-temperature two-level ensemble averaged over a distribution of
/// excitation energies. The ensemble's own `omega_exc` is replaced by the
/// distribution center.
pub fn chi_disordered(
    m: &TlsEnsemble,
    d: &DisorderSpec,
    grid: &FrequencyGrid,
) -> Result<ComplexSpectrum> {
    m.validate()?;
    d.validate()?;
    if !m.beta.is_infinite() {
        return validation(
            "disorder averaging is defined for zero-temperature ensembles (beta = inf)",
        );
    }
    let weight = m.collective_weight();
    match d.kind {
        DisorderKind::Lorentzian => {
            let half_width = 0.5 * (m.gamma + d.sigma);
            ComplexSpectrum::from_fn(*grid, |w| {
                -weight / Complex64::new(w - d.center, half_width)
            })
        }
        DisorderKind::Gaussian => {
            let scale = (2.0f64).sqrt() * d.sigma;
            let prefactor = Complex64::new(0.0, weight * (PI / 2.0).sqrt() / d.sigma);
            ComplexSpectrum::from_fn(*grid, |w| {
                let z = Complex64::new(w - d.center, 0.5 * m.gamma) / scale;
                prefactor * faddeeva::faddeeva_uhp(z)
            })
        }
    }
}

/// Two-level molecules with one displaced harmonic vibration at zero temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VibronicModel {
    pub n_emitters: f64,
    pub g: f64,
    /// Vertical transition frequency.
    pub omega_exc: f64,
    pub omega_v: f64,
    pub huang_rhys: f64,
    pub gamma: f64,
    /// Highest vibronic replica; chosen from the Poisson tail when `None`.
    pub m_max: Option<usize>,
}

impl VibronicModel {
    pub fn validate(&self) -> Result<()> {
        check_positive("n_emitters", self.n_emitters)?;
        check_nonnegative("g", self.g)?;
        if !self.omega_exc.is_finite() {
            return validation("omega_exc must be finite");
        }
        check_positive("omega_v", self.omega_v)?;
        check_nonnegative("huang_rhys", self.huang_rhys)?;
        check_positive("gamma", self.gamma)
    }

    /// Frequency of the `0 -> m'` line.
    pub fn line_frequency(&self, m: usize) -> f64 {
        self.omega_exc - self.huang_rhys * self.omega_v + m as f64 * self.omega_v
    }

    pub fn transitions(&self) -> Result<TransitionSet> {
        self.validate()?;
        let weights = franck_condon_weights(self.huang_rhys, self.m_max);
        let nw = self.n_emitters * self.g * self.g;
        TransitionSet::new(
            weights
                .iter()
                .enumerate()
                .map(|(m, fc)| Transition {
                    omega_zy: self.line_frequency(m),
                    weight: nw * fc,
                    p_y: 1.0,
                    p_z: 0.0,
                    gamma: self.gamma,
                })
                .collect(),
        )
    }
}

fn ln_factorial(m: usize) -> f64 {
    (2..=m).map(|k| (k as f64).ln()).sum()
}

/// Poisson weight `exp(-S) S^m / m!`.
pub fn franck_condon_factor(huang_rhys: f64, m: usize) -> f64 {
    if huang_rhys == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    (-huang_rhys + m as f64 * huang_rhys.ln() - ln_factorial(m)).exp()
}

/// Franck-Condon weights for `m = 0..=m_max`. Without an explicit order the
/// ladder stops at the first `m` whose remaining Poisson tail is below
/// `FRANCK_CONDON_TAIL`, capped at `FRANCK_CONDON_MAX_ORDER`.
pub fn franck_condon_weights(huang_rhys: f64, m_max: Option<usize>) -> Vec<f64> {
    if let Some(m_max) = m_max {
        return (0..=m_max)
            .map(|m| franck_condon_factor(huang_rhys, m))
            .collect();
    }
    let mut weights = Vec::new();
    let mut cumulative = 0.0;
    for m in 0..=FRANCK_CONDON_MAX_ORDER {
        let w = franck_condon_factor(huang_rhys, m);
        weights.push(w);
        cumulative += w;
        if 1.0 - cumulative < FRANCK_CONDON_TAIL {
            break;
        }
    }
    weights
}

/// Vibronic progression `-sum_m N g^2 FC_m / (omega - (omega_exc - S omega_v + m omega_v) + i gamma/2)`.
pub fn chi_vibronic(m: &VibronicModel, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    let ts = m.transitions()?;
    chi_multilevel(&ts, grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub omega: f64,
    pub population: f64,
}

/// Transition dipole amplitude between two levels (indices into `levels`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole {
    pub from: usize,
    pub to: usize,
    pub amplitude: f64,
}

/// Ensemble of identical multilevel emitters with fixed level populations.
#[derive(Debug, Clone, PartialEq)]
pub struct MultilevelModel {
    pub levels: Vec<Level>,
    pub dipoles: Vec<Dipole>,
    pub n_emitters: f64,
    pub g: f64,
    pub gamma: f64,
}

/// Allowed deviation of the summed level populations from 1.
pub const POPULATION_SUM_TOLERANCE: f64 = 1e-12;

impl MultilevelModel {
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return validation("multilevel model needs at least one level");
        }
        check_positive("n_emitters", self.n_emitters)?;
        check_nonnegative("g", self.g)?;
        check_positive("gamma", self.gamma)?;
        for (i, l) in self.levels.iter().enumerate() {
            if !l.omega.is_finite() {
                return validation(format!("level {i} frequency must be finite"));
            }
            if !(0.0..=1.0).contains(&l.population) {
                return validation(format!(
                    "level {i} population must lie in [0, 1] (got {})",
                    l.population
                ));
            }
        }
        let total: f64 = self.levels.iter().map(|l| l.population).sum();
        if (total - 1.0).abs() > POPULATION_SUM_TOLERANCE {
            return validation(format!("level populations must sum to 1 (got {total})"));
        }
        let mut seen = Vec::new();
        for d in &self.dipoles {
            if d.from >= self.levels.len() || d.to >= self.levels.len() || d.from == d.to {
                return validation(format!(
                    "dipole ({}, {}) must connect two distinct existing levels",
                    d.from, d.to
                ));
            }
            if !d.amplitude.is_finite() {
                return validation(format!(
                    "dipole ({}, {}) amplitude must be finite",
                    d.from, d.to
                ));
            }
            let key = (d.from.min(d.to), d.from.max(d.to));
            if seen.contains(&key) {
                return validation(format!("dipole ({}, {}) listed twice", d.from, d.to));
            }
            seen.push(key);
        }
        Ok(())
    }

    /// Uphill transitions (positive `omega_zy`) for every dipole-connected pair.
    pub fn transitions(&self) -> Result<TransitionSet> {
        self.validate()?;
        let nw = self.n_emitters * self.g * self.g;
        let transitions: Vec<Transition> = self
            .dipoles
            .iter()
            .filter_map(|d| {
                let (a, b) = (self.levels[d.from], self.levels[d.to]);
                let (lower, upper) = if a.omega <= b.omega { (a, b) } else { (b, a) };
                let omega_zy = upper.omega - lower.omega;
                (omega_zy > 0.0).then_some(Transition {
                    omega_zy,
                    weight: nw * d.amplitude * d.amplitude,
                    p_y: lower.population,
                    p_z: upper.population,
                    gamma: self.gamma,
                })
            })
            .collect();
        if transitions.is_empty() {
            return validation("multilevel model has no dipole-allowed transitions");
        }
        TransitionSet::new(transitions)
    }
}

/// Generic multilevel ensemble susceptibility (any number of levels).
pub fn chi_multilevel_model(m: &MultilevelModel, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    chi_multilevel(&m.transitions()?, grid)
}

/// Three-level ensemble susceptibility.
pub fn chi_three_level(m: &MultilevelModel, grid: &FrequencyGrid) -> Result<ComplexSpectrum> {
    if m.levels.len() != 3 {
        return validation(format!(
            "three-level model requires exactly 3 levels (got {})",
            m.levels.len()
        ));
    }
    chi_multilevel_model(m, grid)
}
