//! CSV import/export of spectra. Numbers are written with 17 significant
//! digits so that output is byte-reproducible and re-ingestible.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::bathmap::{CorrelationFunction, EffectiveTemperature};
use crate::error::{validation, Result};
use crate::grid::FrequencyGrid;
use crate::spectrum::{ComplexSpectrum, RealSpectrum, TraSpectra};

pub const TRA_HEADER: [&str; 4] = ["omega", "T", "R", "A"];
pub const CHI_HEADER: [&str; 3] = ["omega", "re_chi", "im_chi"];
pub const J_HEADER: [&str; 2] = ["omega", "j_eff"];
pub const BETA_HEADER: [&str; 2] = ["omega", "beta_eff"];
pub const C2_HEADER: [&str; 3] = ["t", "re_c2", "im_c2"];

pub fn format_number(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn write_rows<W: Write>(
    out: W,
    header: &[&str],
    rows: impl Iterator<Item = Vec<f64>>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.into_iter().map(format_number))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_tra<W: Write>(out: W, s: &TraSpectra) -> Result<()> {
    let rows = s.grid().points().enumerate().map(|(i, w)| {
        vec![
            w,
            s.transmission.values()[i],
            s.reflection.values()[i],
            s.absorption.values()[i],
        ]
    });
    write_rows(out, &TRA_HEADER, rows)
}

pub fn write_chi<W: Write>(out: W, chi: &ComplexSpectrum) -> Result<()> {
    let rows = chi
        .grid()
        .points()
        .zip(chi.values())
        .map(|(w, c)| vec![w, c.re, c.im]);
    write_rows(out, &CHI_HEADER, rows)
}

pub fn write_spectral_density<W: Write>(out: W, j: &RealSpectrum) -> Result<()> {
    let rows = j.grid().points().zip(j.values()).map(|(w, v)| vec![w, *v]);
    write_rows(out, &J_HEADER, rows)
}

pub fn write_effective_temperature<W: Write>(out: W, b: &EffectiveTemperature) -> Result<()> {
    let rows = b.grid().points().zip(b.values()).map(|(w, v)| vec![w, *v]);
    write_rows(out, &BETA_HEADER, rows)
}

pub fn write_correlation<W: Write>(out: W, c2: &CorrelationFunction) -> Result<()> {
    let rows = c2
        .grid()
        .points()
        .zip(c2.values())
        .map(|(t, c)| vec![t, c.re, c.im]);
    write_rows(out, &C2_HEADER, rows)
}

/// Reads a `omega,re_chi,im_chi` table. The frequencies must form a uniform
/// grid (checked against the reconstructed grid to 1e-9 of the spacing).
pub fn read_chi<R: Read>(input: R) -> Result<ComplexSpectrum> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != CHI_HEADER {
        return validation(format!(
            "susceptibility table must have header {}, found {}",
            CHI_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        ));
    }
    let mut omegas = Vec::new();
    let mut values = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        let parse = |k: usize| -> Result<f64> {
            record
                .get(k)
                .and_then(|s| s.trim().parse::<f64>().ok())
                .ok_or_else(|| {
                    crate::error::Error::Validation(format!(
                        "row {}: column {} is not a number",
                        line + 2,
                        CHI_HEADER[k]
                    ))
                })
        };
        omegas.push(parse(0)?);
        values.push(Complex64::new(parse(1)?, parse(2)?));
    }
    if omegas.len() < 2 {
        return validation("susceptibility table needs at least two rows");
    }
    let grid = FrequencyGrid::new(omegas[0], omegas[omegas.len() - 1], omegas.len())?;
    let tol = 1e-9 * grid.spacing();
    if let Some((i, w)) = omegas
        .iter()
        .enumerate()
        .find(|(i, w)| (grid.point(*i) - **w).abs() > tol)
    {
        return validation(format!(
            "susceptibility table row {} (omega = {w}) breaks the uniform grid",
            i + 2
        ));
    }
    ComplexSpectrum::new(grid, values)
}
