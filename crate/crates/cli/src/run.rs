//! Scenario evaluation and file output.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use polarispec_core::{
    chi_disordered, chi_multilevel, chi_tls_thermal, discretize_bath, effective_temperature,
    green_finite_n, io, line_spectral_density, peak_splitting, photon_green_function,
    spectra_from_green, spectra_harmonic, spectral_density_from_chi, ComplexSpectrum,
    DiscretizedBath, FrequencyGrid, RealSpectrum, TraSpectra, TransitionSet,
};
use rayon::prelude::*;

use crate::config::{MethodConfig, Model, Scenario, Sweep};
use crate::error::{CliError, CliResult};
use crate::svg;

/// Everything computed for one scenario.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub grid: FrequencyGrid,
    pub chi: ComplexSpectrum,
    pub transitions: Option<TransitionSet>,
    pub spectra: TraSpectra,
}

fn resolve(base_dir: &Path, path: &str) -> PathBuf {
    let p = Path::new(path);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base_dir.join(p)
    }
}

fn model_chi(
    model: &Model,
    grid: &FrequencyGrid,
    base_dir: &Path,
) -> CliResult<(ComplexSpectrum, Option<TransitionSet>)> {
    let at = |e: polarispec_core::Error| CliError::from(e).at("model");
    Ok(match model {
        Model::Tls(m) => (chi_tls_thermal(m, grid).map_err(at)?, Some(m.transitions())),
        Model::Disordered(m, d) => (chi_disordered(m, d, grid).map_err(at)?, None),
        Model::Vibronic(m) => {
            let ts = m.transitions().map_err(at)?;
            (chi_multilevel(&ts, grid).map_err(at)?, Some(ts))
        }
        Model::Multilevel(m) => {
            let ts = m.transitions().map_err(at)?;
            (chi_multilevel(&ts, grid).map_err(at)?, Some(ts))
        }
        Model::Tabulated(path) => {
            let full = resolve(base_dir, path);
            let file =
                File::open(&full).map_err(|e| CliError::Io(format!("{}: {e}", full.display())))?;
            let chi = io::read_chi(file).map_err(|e| CliError::from(e).at("model.path"))?;
            if !chi.grid().same_as(grid) {
                return Err(CliError::Config(format!(
                    "grid: does not match the grid of tabulated chi {} ([{}, {}] x {})",
                    full.display(),
                    chi.grid().omega_min(),
                    chi.grid().omega_max(),
                    chi.grid().len()
                )));
            }
            (chi, None)
        }
    })
}

/// Spectral density fed to the finite-mode method, and the default mode
/// linewidth that goes with it.
fn bath_density(
    chi: &ComplexSpectrum,
    transitions: Option<&TransitionSet>,
    grid: &FrequencyGrid,
    n_modes: usize,
) -> CliResult<(RealSpectrum, f64)> {
    match transitions {
        Some(ts) => {
            let j = line_spectral_density(ts, grid)?;
            Ok((j, ts.transitions()[0].gamma))
        }
        None => {
            let j = RealSpectrum::new(*grid, chi.values().iter().map(|c| c.im).collect())?;
            let bin = (grid.omega_max() - grid.omega_min()) / n_modes as f64;
            Ok((j, bin))
        }
    }
}

/// Surrogate bath of an evaluated scenario with `n_modes` modes, as used by
/// the `finite_n` method.
pub fn scenario_bath(
    ev: &Evaluation,
    n_modes: usize,
    gamma_mode: Option<f64>,
) -> CliResult<DiscretizedBath> {
    let (j, default_gamma) = bath_density(&ev.chi, ev.transitions.as_ref(), &ev.grid, n_modes)
        .map_err(|e| e.at("method"))?;
    discretize_bath(&j, n_modes, gamma_mode.unwrap_or(default_gamma))
        .map_err(|e| CliError::from(e).at("method"))
}

pub fn evaluate(s: &Scenario, base_dir: &Path) -> CliResult<Evaluation> {
    s.validate()?;
    let grid = s.grid.build()?;
    let cav = s.cavity.build()?;
    let (chi, transitions) = match &s.model {
        Some(m) => model_chi(&m.build()?, &grid, base_dir)?,
        None => (ComplexSpectrum::zeros(grid), None),
    };
    let harmonic = spectra_harmonic(&chi, &cav)?;
    let mut ev = Evaluation {
        grid,
        chi,
        transitions,
        spectra: harmonic,
    };
    if let MethodConfig::FiniteN {
        n_modes,
        gamma_mode,
    } = &s.method
    {
        let bath = scenario_bath(&ev, *n_modes, *gamma_mode)?;
        ev.spectra = spectra_from_green(&green_finite_n(&bath, &cav, &grid)?, &cav)?;
    }
    Ok(ev)
}

/// Writes `path` through a temporary file in the same directory, so readers
/// never see a partial file.
pub fn write_atomic(
    path: &Path,
    fill: impl FnOnce(&mut dyn Write) -> CliResult<()>,
) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut builder = tempfile::Builder::new();
    builder.prefix(".polarispec-");
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(fs::Permissions::from_mode(0o644));
    }
    let tmp = builder
        .tempfile_in(&dir)
        .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        fill(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path)
        .map_err(|e| CliError::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

fn write_spectra_files(
    spectra: &TraSpectra,
    csv: &Path,
    svg_path: Option<&Path>,
    title: &str,
) -> CliResult<()> {
    write_atomic(csv, |w| Ok(io::write_tra(w, spectra)?))?;
    if let Some(p) = svg_path {
        let doc = svg::render(spectra, title);
        write_atomic(p, |w| Ok(w.write_all(doc.as_bytes())?))?;
    }
    Ok(())
}

/// Evaluates a scenario and writes its configured outputs (paths relative
/// to `base_dir`).
pub fn run_scenario(s: &Scenario, base_dir: &Path) -> CliResult<TraSpectra> {
    let ev = evaluate(s, base_dir)?;
    let title = s.description.as_deref().unwrap_or("spectra");
    for out in &s.outputs {
        let svg_path = out.svg_path.as_ref().map(|p| resolve(base_dir, p));
        write_spectra_files(
            &ev.spectra,
            &resolve(base_dir, &out.csv_path),
            svg_path.as_deref(),
            title,
        )?;
    }
    Ok(ev.spectra)
}

/// Writes spectra to explicit paths, ignoring the scenario's outputs.
pub fn write_spectra(
    spectra: &TraSpectra,
    csv: &Path,
    svg_path: Option<&Path>,
    title: &str,
) -> CliResult<()> {
    write_spectra_files(spectra, csv, svg_path, title)
}

fn indexed_path(path: &str, index: usize) -> String {
    let p = Path::new(path);
    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match p.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{index}.{ext}"),
        None => format!("{stem}_{index}"),
    };
    p.with_file_name(name).to_string_lossy().into_owned()
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub value: serde_json::Value,
    pub spectra: TraSpectra,
    pub peak_splitting: f64,
}

pub fn format_value(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Number(n) => n
            .as_f64()
            .map(io::format_number)
            .unwrap_or_else(|| n.to_string()),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs every value of the sweep (in parallel) and writes per-value outputs
/// with the value index appended to each file name, plus the summary table.
pub fn run_sweep(sw: &Sweep, base_dir: &Path) -> CliResult<Vec<SweepRow>> {
    if sw.values.is_empty() {
        return Err(CliError::Config(
            "values: sweep needs at least one value".into(),
        ));
    }
    let base = sw.base_scenario()?;
    let scenarios = sw
        .values
        .iter()
        .map(|v| sw.scenario_for(&base, v))
        .collect::<CliResult<Vec<_>>>()?;
    let rows = scenarios
        .par_iter()
        .enumerate()
        .map(|(k, s)| {
            let mut s = s.clone();
            for out in &mut s.outputs {
                out.csv_path = indexed_path(&out.csv_path, k);
                out.svg_path = out.svg_path.as_ref().map(|p| indexed_path(p, k));
            }
            let spectra = run_scenario(&s, base_dir)?;
            let split = peak_splitting(&spectra.transmission);
            Ok(SweepRow {
                value: sw.values[k].clone(),
                spectra,
                peak_splitting: split,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    match &sw.summary_path {
        Some(p) => write_atomic(&resolve(base_dir, p), |w| write_summary(w, &rows))?,
        None => write_summary(&mut std::io::stdout().lock(), &rows)?,
    }
    Ok(rows)
}

pub fn write_summary(w: &mut dyn Write, rows: &[SweepRow]) -> CliResult<()> {
    writeln!(w, "value,peak_splitting")?;
    for r in rows {
        let v = format_value(&r.value);
        let v = if v.contains(',') {
            format!("\"{}\"", v.replace('"', "\"\""))
        } else {
            v
        };
        writeln!(w, "{v},{}", io::format_number(r.peak_splitting))?;
    }
    Ok(())
}

/// Files written by [`export_bundle`].
pub const BUNDLE_FILES: [&str; 4] = ["chi.csv", "j_eff.csv", "beta_eff.csv", "spectra.csv"];

/// The positive-frequency part of a grid, if it has at least two points.
fn positive_part(grid: &FrequencyGrid) -> Option<FrequencyGrid> {
    let first = (0..grid.len()).find(|&i| grid.point(i) > 0.0)?;
    if grid.len() - first < 2 {
        return None;
    }
    FrequencyGrid::new(grid.point(first), grid.omega_max(), grid.len() - first).ok()
}

/// Writes chi, J_eff, beta_eff (transition-based models only) and the
/// spectra into `outdir`. Returns the paths written.
pub fn export_bundle(s: &Scenario, base_dir: &Path, outdir: &Path) -> CliResult<Vec<PathBuf>> {
    let ev = evaluate(s, base_dir)?;
    fs::create_dir_all(outdir).map_err(|e| CliError::Io(format!("{}: {e}", outdir.display())))?;
    let mut written = Vec::new();

    let path = outdir.join(BUNDLE_FILES[0]);
    write_atomic(&path, |w| Ok(io::write_chi(w, &ev.chi)?))?;
    written.push(path);

    let j = spectral_density_from_chi(&ev.chi);
    let path = outdir.join(BUNDLE_FILES[1]);
    write_atomic(&path, |w| Ok(io::write_spectral_density(w, &j)?))?;
    written.push(path);

    match (&ev.transitions, positive_part(&ev.grid)) {
        (Some(ts), Some(pos)) => match effective_temperature(ts, &pos) {
            Ok(beta) => {
                let path = outdir.join(BUNDLE_FILES[2]);
                write_atomic(&path, |w| Ok(io::write_effective_temperature(w, &beta)?))?;
                written.push(path);
            }
            Err(e) => eprintln!("notice: beta_eff.csv omitted: {e}"),
        },
        (Some(_), None) => {
            eprintln!("notice: beta_eff.csv omitted: grid has no positive frequencies")
        }
        (None, _) => eprintln!("notice: beta_eff.csv omitted: model has no transition data"),
    }

    let path = outdir.join(BUNDLE_FILES[3]);
    write_atomic(&path, |w| Ok(io::write_tra(w, &ev.spectra)?))?;
    written.push(path);
    Ok(written)
}

/// Photon Green function of a scenario along the susceptibility route.
pub fn green_function(s: &Scenario, base_dir: &Path) -> CliResult<polarispec_core::GreenFunction> {
    let ev = evaluate(s, base_dir)?;
    Ok(photon_green_function(&ev.chi, &s.cavity.build()?)?)
}
