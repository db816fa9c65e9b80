//! Python bindings. Spectra cross the boundary as lists of floats or
//! complex numbers paired with a `FrequencyGrid`.

use num_complex::Complex64;
use polarispec_core as ps;
use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: ps::Error) -> PyErr {
    match e {
        ps::Error::Validation(_) | ps::Error::PopulationInversion { .. } => {
            PyValueError::new_err(e.to_string())
        }
        ps::Error::Numerical(_) => PyArithmeticError::new_err(e.to_string()),
        ps::Error::Io(_) | ps::Error::Csv(_) => PyOSError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for ps::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

#[pyclass(name = "FrequencyGrid", frozen, from_py_object)]
#[derive(Clone, Copy)]
pub struct Grid(ps::FrequencyGrid);

#[pymethods]
impl Grid {
    #[new]
    fn new(omega_min: f64, omega_max: f64, n_points: usize) -> PyResult<Self> {
        ps::make_grid(omega_min, omega_max, n_points).py().map(Self)
    }

    #[getter]
    fn omega_min(&self) -> f64 {
        self.0.omega_min()
    }

    #[getter]
    fn omega_max(&self) -> f64 {
        self.0.omega_max()
    }

    #[getter]
    fn spacing(&self) -> f64 {
        self.0.spacing()
    }

    fn points(&self) -> Vec<f64> {
        self.0.to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "FrequencyGrid({}, {}, {})",
            self.0.omega_min(),
            self.0.omega_max(),
            self.0.len()
        )
    }
}

#[pyclass(name = "CavityParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
pub struct Cavity(ps::CavityParams);

#[pymethods]
impl Cavity {
    #[new]
    fn new(omega_ph: f64, kappa_l: f64, kappa_r: f64) -> PyResult<Self> {
        ps::CavityParams::new(omega_ph, kappa_l, kappa_r)
            .py()
            .map(Self)
    }

    #[getter]
    fn omega_ph(&self) -> f64 {
        self.0.omega_ph
    }

    #[getter]
    fn kappa_l(&self) -> f64 {
        self.0.kappa_l
    }

    #[getter]
    fn kappa_r(&self) -> f64 {
        self.0.kappa_r
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.0.kappa()
    }

    fn __repr__(&self) -> String {
        format!(
            "CavityParams({}, {}, {})",
            self.0.omega_ph, self.0.kappa_l, self.0.kappa_r
        )
    }
}

#[pyclass(name = "Transition", frozen, from_py_object)]
#[derive(Clone, Copy)]
pub struct PyTransition(ps::Transition);

#[pymethods]
impl PyTransition {
    #[new]
    fn new(omega_zy: f64, weight: f64, p_y: f64, p_z: f64, gamma: f64) -> PyResult<Self> {
        ps::Transition::new(omega_zy, weight, p_y, p_z, gamma)
            .py()
            .map(Self)
    }

    #[getter]
    fn omega_zy(&self) -> f64 {
        self.0.omega_zy
    }

    #[getter]
    fn weight(&self) -> f64 {
        self.0.weight
    }

    #[getter]
    fn p_y(&self) -> f64 {
        self.0.p_y
    }

    #[getter]
    fn p_z(&self) -> f64 {
        self.0.p_z
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma
    }

    fn __repr__(&self) -> String {
        let t = &self.0;
        format!(
            "Transition({}, {}, {}, {}, {})",
            t.omega_zy, t.weight, t.p_y, t.p_z, t.gamma
        )
    }
}

fn transition_set(ts: Vec<PyTransition>) -> PyResult<ps::TransitionSet> {
    ps::TransitionSet::new(ts.into_iter().map(|t| t.0).collect()).py()
}

/// Ensemble of identical two-level emitters. `beta = None` means zero temperature.
#[pyclass(name = "TlsEnsemble", frozen, from_py_object)]
#[derive(Clone, Copy)]
pub struct Tls(ps::TlsEnsemble);

#[pymethods]
impl Tls {
    #[new]
    #[pyo3(signature = (n_emitters, g, omega_exc, gamma, beta = None))]
    fn new(
        n_emitters: f64,
        g: f64,
        omega_exc: f64,
        gamma: f64,
        beta: Option<f64>,
    ) -> PyResult<Self> {
        let beta = ps::InverseTemperature::new(beta.unwrap_or(f64::INFINITY)).py()?;
        ps::TlsEnsemble::new(n_emitters, g, omega_exc, beta, gamma)
            .py()
            .map(Self)
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta.value()
    }

    fn transitions(&self) -> Vec<PyTransition> {
        self.0
            .transitions()
            .iter()
            .copied()
            .map(PyTransition)
            .collect()
    }

    fn chi(&self, grid: Grid) -> PyResult<Vec<Complex64>> {
        values(ps::chi_tls_thermal(&self.0, &grid.0))
    }
}

#[pyclass(name = "Spectra", frozen, skip_from_py_object)]
pub struct Spectra(ps::TraSpectra);

#[pymethods]
impl Spectra {
    #[getter]
    fn omega(&self) -> Vec<f64> {
        self.0.grid().to_vec()
    }

    #[getter]
    fn transmission(&self) -> Vec<f64> {
        self.0.transmission.values().to_vec()
    }

    #[getter]
    fn reflection(&self) -> Vec<f64> {
        self.0.reflection.values().to_vec()
    }

    #[getter]
    fn absorption(&self) -> Vec<f64> {
        self.0.absorption.values().to_vec()
    }

    /// Largest `|T + R + A - 1|` on the grid.
    fn max_energy_defect(&self) -> f64 {
        self.0.max_energy_defect()
    }

    fn peak_splitting(&self) -> f64 {
        ps::peak_splitting(&self.0.transmission)
    }
}

#[pyclass(name = "DiscretizedBath", frozen, from_py_object)]
#[derive(Clone)]
pub struct Bath(ps::DiscretizedBath);

#[pymethods]
impl Bath {
    #[new]
    fn new(modes: Vec<(f64, f64, f64)>) -> PyResult<Self> {
        let modes = modes
            .into_iter()
            .map(|(omega, coupling, gamma)| ps::BathMode {
                omega,
                coupling,
                gamma,
            })
            .collect();
        ps::DiscretizedBath::new(modes).py().map(Self)
    }

    /// `(omega, coupling, gamma)` per mode.
    #[getter]
    fn modes(&self) -> Vec<(f64, f64, f64)> {
        self.0
            .modes()
            .iter()
            .map(|m| (m.omega, m.coupling, m.gamma))
            .collect()
    }

    fn total_coupling(&self) -> f64 {
        self.0.total_coupling()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

fn values(chi: ps::Result<ps::ComplexSpectrum>) -> PyResult<Vec<Complex64>> {
    chi.py().map(ps::ComplexSpectrum::into_values)
}

fn complex_spectrum(v: Vec<Complex64>, grid: Grid) -> PyResult<ps::ComplexSpectrum> {
    ps::ComplexSpectrum::new(grid.0, v).py()
}

fn real_spectrum(v: Vec<f64>, grid: Grid) -> PyResult<ps::RealSpectrum> {
    ps::RealSpectrum::new(grid.0, v).py()
}

fn green(d: Vec<Complex64>, grid: Grid) -> PyResult<ps::GreenFunction> {
    complex_spectrum(d, grid).map(ps::GreenFunction::new)
}

#[pyfunction]
fn chi_multilevel(transitions: Vec<PyTransition>, grid: Grid) -> PyResult<Vec<Complex64>> {
    values(ps::chi_multilevel(&transition_set(transitions)?, &grid.0))
}

#[pyfunction]
fn chi_tls_thermal(tls: Tls, grid: Grid) -> PyResult<Vec<Complex64>> {
    tls.chi(grid)
}

/// `kind` is `"gaussian"` or `"lorentzian"`.
#[pyfunction]
fn chi_disordered(
    tls: Tls,
    kind: &str,
    center: f64,
    sigma: f64,
    grid: Grid,
) -> PyResult<Vec<Complex64>> {
    let kind = match kind {
        "gaussian" => ps::DisorderKind::Gaussian,
        "lorentzian" => ps::DisorderKind::Lorentzian,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown disorder kind {other:?}"
            )))
        }
    };
    let d = ps::DisorderSpec::new(kind, center, sigma).py()?;
    values(ps::chi_disordered(&tls.0, &d, &grid.0))
}

#[pyfunction]
#[pyo3(signature = (n_emitters, g, omega_exc, omega_v, huang_rhys, gamma, grid, m_max = None))]
#[allow(clippy::too_many_arguments)]
fn chi_vibronic(
    n_emitters: f64,
    g: f64,
    omega_exc: f64,
    omega_v: f64,
    huang_rhys: f64,
    gamma: f64,
    grid: Grid,
    m_max: Option<usize>,
) -> PyResult<Vec<Complex64>> {
    let m = ps::VibronicModel {
        n_emitters,
        g,
        omega_exc,
        omega_v,
        huang_rhys,
        gamma,
        m_max,
    };
    values(ps::chi_vibronic(&m, &grid.0))
}

/// `levels` are `(omega, population)` pairs, `dipoles` are `(from, to, amplitude)`.
#[pyfunction]
fn chi_multilevel_model(
    levels: Vec<(f64, f64)>,
    dipoles: Vec<(usize, usize, f64)>,
    n_emitters: f64,
    g: f64,
    gamma: f64,
    grid: Grid,
) -> PyResult<Vec<Complex64>> {
    let m = ps::MultilevelModel {
        levels: levels
            .into_iter()
            .map(|(omega, population)| ps::Level { omega, population })
            .collect(),
        dipoles: dipoles
            .into_iter()
            .map(|(from, to, amplitude)| ps::Dipole {
                from,
                to,
                amplitude,
            })
            .collect(),
        n_emitters,
        g,
        gamma,
    };
    values(ps::chi_multilevel_model(&m, &grid.0))
}

#[pyfunction]
fn franck_condon_weights(huang_rhys: f64, m_max: Option<usize>) -> Vec<f64> {
    ps::franck_condon_weights(huang_rhys, m_max)
}

#[pyfunction]
fn spectra_harmonic(chi: Vec<Complex64>, grid: Grid, cavity: Cavity) -> PyResult<Spectra> {
    ps::spectra_harmonic(&complex_spectrum(chi, grid)?, &cavity.0)
        .py()
        .map(Spectra)
}

#[pyfunction]
fn photon_green_function(
    chi: Vec<Complex64>,
    grid: Grid,
    cavity: Cavity,
) -> PyResult<Vec<Complex64>> {
    let d = ps::photon_green_function(&complex_spectrum(chi, grid)?, &cavity.0).py()?;
    Ok(d.values().to_vec())
}

#[pyfunction]
fn spectra_from_green(d: Vec<Complex64>, grid: Grid, cavity: Cavity) -> PyResult<Spectra> {
    ps::spectra_from_green(&green(d, grid)?, &cavity.0)
        .py()
        .map(Spectra)
}

#[pyfunction]
fn landauer_transmission(d: Vec<Complex64>, grid: Grid, cavity: Cavity) -> PyResult<Vec<f64>> {
    let t = ps::landauer_transmission(&green(d, grid)?, &cavity.0).py()?;
    Ok(t.into_values())
}

#[pyfunction]
fn kramers_kronig_real(chi: Vec<Complex64>, grid: Grid) -> PyResult<Vec<f64>> {
    Ok(ps::kramers_kronig_real(&complex_spectrum(chi, grid)?)
        .py()?
        .into_values())
}

#[pyfunction]
fn line_spectral_density(transitions: Vec<PyTransition>, grid: Grid) -> PyResult<Vec<f64>> {
    Ok(
        ps::line_spectral_density(&transition_set(transitions)?, &grid.0)
            .py()?
            .into_values(),
    )
}

#[pyfunction]
fn spectral_density_from_chi(chi: Vec<Complex64>, grid: Grid) -> PyResult<Vec<f64>> {
    Ok(ps::spectral_density_from_chi(&complex_spectrum(chi, grid)?).into_values())
}

/// Requires a grid with `omega_min > 0`.
#[pyfunction]
fn effective_temperature(transitions: Vec<PyTransition>, grid: Grid) -> PyResult<Vec<f64>> {
    let b = ps::effective_temperature(&transition_set(transitions)?, &grid.0).py()?;
    Ok(b.values().to_vec())
}

#[pyfunction]
fn correlation_from_transitions(
    transitions: Vec<PyTransition>,
    t_max: f64,
    n_points: usize,
) -> PyResult<Vec<Complex64>> {
    let tg = ps::TimeGrid::new(t_max, n_points).py()?;
    let c2 = ps::correlation_from_transitions(&transition_set(transitions)?, &tg).py()?;
    Ok(c2.values().to_vec())
}

#[pyfunction]
fn reconstruct_correlation(
    j: Vec<f64>,
    beta_eff: Vec<f64>,
    grid: Grid,
    t_max: f64,
    n_points: usize,
) -> PyResult<Vec<Complex64>> {
    let tg = ps::TimeGrid::new(t_max, n_points).py()?;
    let b = ps::EffectiveTemperature::new(grid.0, beta_eff).py()?;
    let c2 = ps::reconstruct_correlation(&real_spectrum(j, grid)?, &b, &tg).py()?;
    Ok(c2.values().to_vec())
}

#[pyfunction]
fn discretize_bath(j: Vec<f64>, grid: Grid, n_modes: usize, gamma_mode: f64) -> PyResult<Bath> {
    ps::discretize_bath(&real_spectrum(j, grid)?, n_modes, gamma_mode)
        .py()
        .map(Bath)
}

#[pyfunction]
fn green_finite_n(bath: Bath, cavity: Cavity, grid: Grid) -> PyResult<Vec<Complex64>> {
    Ok(ps::green_finite_n(&bath.0, &cavity.0, &grid.0)
        .py()?
        .values()
        .to_vec())
}

#[pyfunction]
fn landauer_transmission_matrix(bath: Bath, cavity: Cavity, grid: Grid) -> PyResult<Vec<f64>> {
    Ok(
        ps::landauer_transmission_matrix(&bath.0, &cavity.0, &grid.0)
            .py()?
            .into_values(),
    )
}

/// `(omega, height)` of each local maximum; the prominence threshold
/// defaults to 1e-3 of the maximum.
#[pyfunction]
#[pyo3(signature = (values, grid, min_prominence = None))]
fn local_maxima(
    values: Vec<f64>,
    grid: Grid,
    min_prominence: Option<f64>,
) -> PyResult<Vec<(f64, f64)>> {
    let s = real_spectrum(values, grid)?;
    let p = min_prominence.unwrap_or_else(|| ps::spectrum::default_prominence(&s));
    Ok(ps::local_maxima(&s, p))
}

#[pymodule]
pub fn polarispec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Grid>()?;
    m.add_class::<Cavity>()?;
    m.add_class::<PyTransition>()?;
    m.add_class::<Tls>()?;
    m.add_class::<Spectra>()?;
    m.add_class::<Bath>()?;
    m.add_function(wrap_pyfunction!(chi_multilevel, m)?)?;
    m.add_function(wrap_pyfunction!(chi_tls_thermal, m)?)?;
    m.add_function(wrap_pyfunction!(chi_disordered, m)?)?;
    m.add_function(wrap_pyfunction!(chi_vibronic, m)?)?;
    m.add_function(wrap_pyfunction!(chi_multilevel_model, m)?)?;
    m.add_function(wrap_pyfunction!(franck_condon_weights, m)?)?;
    m.add_function(wrap_pyfunction!(spectra_harmonic, m)?)?;
    m.add_function(wrap_pyfunction!(photon_green_function, m)?)?;
    m.add_function(wrap_pyfunction!(spectra_from_green, m)?)?;
    m.add_function(wrap_pyfunction!(landauer_transmission, m)?)?;
    m.add_function(wrap_pyfunction!(kramers_kronig_real, m)?)?;
    m.add_function(wrap_pyfunction!(line_spectral_density, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_density_from_chi, m)?)?;
    m.add_function(wrap_pyfunction!(effective_temperature, m)?)?;
    m.add_function(wrap_pyfunction!(correlation_from_transitions, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(discretize_bath, m)?)?;
    m.add_function(wrap_pyfunction!(green_finite_n, m)?)?;
    m.add_function(wrap_pyfunction!(landauer_transmission_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(local_maxima, m)?)?;
    Ok(())
}
