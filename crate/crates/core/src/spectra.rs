//! Photon retarded Green function and transmission/reflection/absorption,
//! along the N -> infinity susceptibility route and along the finite-N
//! arrowhead route.
//!
//! The molecular self-energy is never stored: the photon denominator always
//! carries `+chi(omega)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bathmap::DiscretizedBath;
use crate::error::{validation, Error, Result};
use crate::grid::FrequencyGrid;
use crate::spectrum::{ComplexSpectrum, RealSpectrum, TraSpectra};

/// Denominators below this magnitude are treated as a real-axis pole.
pub const MIN_DENOMINATOR: f64 = 1e-14;

/// Single cavity mode coupled to left and right ports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    pub omega_ph: f64,
    pub kappa_l: f64,
    pub kappa_r: f64,
}

impl CavityParams {
    pub fn new(omega_ph: f64, kappa_l: f64, kappa_r: f64) -> Result<Self> {
        let c = Self {
            omega_ph,
            kappa_l,
            kappa_r,
        };
        c.validate()?;
        Ok(c)
    }

    /// Symmetric cavity with `kappa_l = kappa_r = kappa / 2`.
    pub fn symmetric(omega_ph: f64, kappa: f64) -> Result<Self> {
        Self::new(omega_ph, 0.5 * kappa, 0.5 * kappa)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.omega_ph.is_finite() {
            return validation(format!("omega_ph must be finite (got {})", self.omega_ph));
        }
        for (name, k) in [("kappa_L", self.kappa_l), ("kappa_R", self.kappa_r)] {
            if !(k.is_finite() && k >= 0.0) {
                return validation(format!("{name} must be >= 0 (got {k})"));
            }
        }
        if self.kappa() <= 0.0 {
            return validation("total cavity loss kappa = kappa_L + kappa_R must be > 0");
        }
        Ok(())
    }

    pub fn kappa(&self) -> f64 {
        self.kappa_l + self.kappa_r
    }

    /// `omega - omega_ph + i kappa / 2`.
    #[inline]
    pub fn bare_inverse(&self, omega: f64) -> Complex64 {
        Complex64::new(omega - self.omega_ph, 0.5 * self.kappa())
    }
}

/// Photon retarded Green function `D^R(omega)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenFunction {
    spectrum: ComplexSpectrum,
}

impl GreenFunction {
    pub fn new(spectrum: ComplexSpectrum) -> Self {
        Self { spectrum }
    }

    pub fn spectrum(&self) -> &ComplexSpectrum {
        &self.spectrum
    }

    pub fn grid(&self) -> &FrequencyGrid {
        self.spectrum.grid()
    }

    pub fn values(&self) -> &[Complex64] {
        self.spectrum.values()
    }

    /// Largest `|D1 - D2|` over a shared grid.
    pub fn max_abs_deviation(&self, other: &GreenFunction) -> f64 {
        self.values()
            .iter()
            .zip(other.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn checked_denominator(den: Complex64, omega: f64) -> Result<Complex64> {
    if den.norm() < MIN_DENOMINATOR {
        return Err(Error::Numerical(format!(
            "photon Green function denominator vanishes at omega = {omega}"
        )));
    }
    Ok(den)
}

/// `D^R(omega) = 1 / (omega - omega_ph + i kappa / 2 + chi(omega))`.
pub fn photon_green_function(chi: &ComplexSpectrum, cav: &CavityParams) -> Result<GreenFunction> {
    cav.validate()?;
    let grid = *chi.grid();
    let values = grid
        .points()
        .zip(chi.values())
        .map(|(w, c)| checked_denominator(cav.bare_inverse(w) + c, w).map(|d| d.inv()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GreenFunction::new(ComplexSpectrum::new(grid, values)?))
}

/// Transmission, reflection and absorption from `D^R`:
/// `T = kL kR |D|^2`, `R = 1 + 2 kL Im D + kL^2 |D|^2`, `A = -kL (k |D|^2 + 2 Im D)`.
pub fn spectra_from_green(d: &GreenFunction, cav: &CavityParams) -> Result<TraSpectra> {
    let (kl, kr, k) = (cav.kappa_l, cav.kappa_r, cav.kappa());
    let n = d.values().len();
    let (mut t, mut r, mut a) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for dv in d.values() {
        let abs2 = dv.norm_sqr();
        t.push(kl * kr * abs2);
        r.push(1.0 + 2.0 * kl * dv.im + kl * kl * abs2);
        a.push(-kl * (k * abs2 + 2.0 * dv.im));
    }
    let grid = *d.grid();
    TraSpectra::new(
        RealSpectrum::new(grid, t)?,
        RealSpectrum::new(grid, r)?,
        RealSpectrum::new(grid, a)?,
    )
}

/// Closed forms for a harmonic (or N -> infinity) medium:
/// `T = kL kR / |den|^2`, `A = 2 kL Im chi / |den|^2`, `R = 1 - T - A`
/// with `den = omega - omega_ph + i kappa / 2 + chi`.
pub fn spectra_harmonic(chi: &ComplexSpectrum, cav: &CavityParams) -> Result<TraSpectra> {
    cav.validate()?;
    let grid = *chi.grid();
    let n = grid.len();
    let (mut t, mut r, mut a) = (
        Vec::with_capacity(n),
        Vec::with_capacity(n),
        Vec::with_capacity(n),
    );
    for (w, c) in grid.points().zip(chi.values()) {
        let abs2 = checked_denominator(cav.bare_inverse(w) + c, w)?.norm_sqr();
        let tv = cav.kappa_l * cav.kappa_r / abs2;
        let av = 2.0 * cav.kappa_l * c.im / abs2;
        t.push(tv);
        a.push(av);
        r.push(1.0 - tv - av);
    }
    TraSpectra::new(
        RealSpectrum::new(grid, t)?,
        RealSpectrum::new(grid, r)?,
        RealSpectrum::new(grid, a)?,
    )
}

/// Non-Hermitian single-excitation Hamiltonian `H` (photon first, then the
/// bath modes): diagonal `omega_ph - i kappa / 2`, `omega_j - i gamma_j / 2`,
/// photon-mode couplings `-c_j`.
pub fn arrowhead_hamiltonian(bath: &DiscretizedBath, cav: &CavityParams) -> DMatrix<Complex64> {
    let m = bath.len();
    let mut h = DMatrix::from_element(m + 1, m + 1, Complex64::new(0.0, 0.0));
    h[(0, 0)] = Complex64::new(cav.omega_ph, -0.5 * cav.kappa());
    for (j, mode) in bath.modes().iter().enumerate() {
        h[(j + 1, j + 1)] = Complex64::new(mode.omega, -0.5 * mode.gamma);
        h[(0, j + 1)] = Complex64::new(-mode.coupling, 0.0);
        h[(j + 1, 0)] = Complex64::new(-mode.coupling, 0.0);
    }
    h
}

fn resolvent_matrix(h: &DMatrix<Complex64>, omega: f64) -> DMatrix<Complex64> {
    let n = h.nrows();
    DMatrix::from_fn(n, n, |i, j| {
        let diag = if i == j {
            Complex64::new(omega, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        diag - h[(i, j)]
    })
}

/// `D^R(omega) = [(omega - H)^-1]_00` for the arrowhead Hamiltonian, one LU
/// solve per frequency.
pub fn green_finite_n(
    bath: &DiscretizedBath,
    cav: &CavityParams,
    grid: &FrequencyGrid,
) -> Result<GreenFunction> {
    cav.validate()?;
    let h = arrowhead_hamiltonian(bath, cav);
    let n = h.nrows();
    let values = grid
        .to_vec()
        .into_par_iter()
        .map(|w| {
            let mut rhs = DVector::from_element(n, Complex64::new(0.0, 0.0));
            rhs[0] = Complex64::new(1.0, 0.0);
            resolvent_matrix(&h, w)
                .lu()
                .solve(&rhs)
                .map(|x| x[0])
                .ok_or_else(|| Error::Numerical(format!("singular resolvent at omega = {w}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GreenFunction::new(ComplexSpectrum::new(*grid, values)?))
}

/// `D^R` of the arrowhead model through its photon self-energy,
/// `1 / (omega - omega_ph + i kappa / 2 - sum c_j^2 / (omega - omega_j + i gamma_j / 2))`.
pub fn green_self_energy(
    bath: &DiscretizedBath,
    cav: &CavityParams,
    grid: &FrequencyGrid,
) -> Result<GreenFunction> {
    cav.validate()?;
    let values = grid
        .points()
        .map(|w| checked_denominator(cav.bare_inverse(w) - bath.self_energy(w), w).map(|d| d.inv()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GreenFunction::new(ComplexSpectrum::new(*grid, values)?))
}

/// Transmission through the rank-one port couplings,
/// `T = kL kR |D^R|^2`.
pub fn landauer_transmission(d: &GreenFunction, cav: &CavityParams) -> Result<RealSpectrum> {
    let values = d
        .values()
        .iter()
        .map(|dv| cav.kappa_l * cav.kappa_r * dv.norm_sqr())
        .collect();
    RealSpectrum::new(*d.grid(), values)
}

/// Landauer transmission `Tr[Gamma_L G^dagger Gamma_R G]` evaluated with the
/// full matrix `G = (omega - H)^-1` of the arrowhead model. Independent of
/// [`green_finite_n`] and used to cross-check it.
pub fn landauer_transmission_matrix(
    bath: &DiscretizedBath,
    cav: &CavityParams,
    grid: &FrequencyGrid,
) -> Result<RealSpectrum> {
    cav.validate()?;
    let h = arrowhead_hamiltonian(bath, cav);
    let n = h.nrows();
    let mut gamma_l = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    let mut gamma_r = gamma_l.clone();
    gamma_l[(0, 0)] = Complex64::new(cav.kappa_l, 0.0);
    gamma_r[(0, 0)] = Complex64::new(cav.kappa_r, 0.0);
    let values = grid
        .to_vec()
        .into_par_iter()
        .map(|w| {
            let g = resolvent_matrix(&h, w)
                .try_inverse()
                .ok_or_else(|| Error::Numerical(format!("singular resolvent at omega = {w}")))?;
            let product = &gamma_l * g.adjoint() * &gamma_r * &g;
            Ok(product.trace().re)
        })
        .collect::<Result<Vec<_>>>()?;
    RealSpectrum::new(*grid, values)
}
