//! Linear optics of molecular microcavities.
//!
//! Transmission, reflection and absorption of a single-mode cavity filled
//! with a molecular ensemble, computed from the ensemble's linear
//! susceptibility, plus the mapping of the ensemble onto a surrogate
//! harmonic bath and a finite-mode Green-function route used to cross-check
//! the closed forms. Units: hbar = 1, all frequencies and rates in one
//! arbitrary unit.

pub mod bathmap;
pub mod error;
pub mod grid;
pub mod io;
pub mod kramers_kronig;
pub mod spectra;
pub mod spectrum;
pub mod susceptibility;

pub use bathmap::{
    correlation_from_transitions, discretize_bath, effective_temperature, line_spectral_density,
    reconstruct_correlation, spectral_density_from_chi, spectral_density_from_correlation,
    BathMode, CorrelationFunction, DiscretizedBath, EffectiveTemperature,
};
pub use error::{Error, Result};
pub use grid::{make_grid, FrequencyGrid, TimeGrid};
pub use kramers_kronig::kramers_kronig_real;
pub use spectra::{
    green_finite_n, green_self_energy, landauer_transmission, landauer_transmission_matrix,
    photon_green_function, spectra_from_green, spectra_harmonic, CavityParams, GreenFunction,
};
pub use spectrum::{local_maxima, peak_splitting, ComplexSpectrum, RealSpectrum, TraSpectra};
pub use susceptibility::{
    chi_disordered, chi_from_correlation, chi_from_spectral_density, chi_multilevel,
    chi_multilevel_model, chi_three_level, chi_tls_thermal, chi_vibronic, franck_condon_factor,
    franck_condon_weights, Dipole, DisorderKind, DisorderSpec, InverseTemperature, Level,
    MultilevelModel, TlsEnsemble, Transition, TransitionSet, VibronicModel,
};
