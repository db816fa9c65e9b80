//! Spectra on a frequency grid and peak finding.

use num_complex::Complex64;

use crate::error::{validation, Result};
use crate::grid::FrequencyGrid;

/// Complex values sampled on a frequency grid, e.g. a susceptibility or a
/// Green function.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return validation(format!(
                "spectrum has {} values but the grid has {} points",
                values.len(),
                grid.len()
            ));
        }
        if let Some(i) = values
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return validation(format!(
                "non-finite spectrum value at omega = {}",
                grid.point(i)
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: FrequencyGrid) -> Self {
        Self {
            grid,
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Evaluates `f` at every grid point.
    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn real_part(&self) -> RealSpectrum {
        RealSpectrum {
            grid: self.grid,
            values: self.values.iter().map(|v| v.re).collect(),
        }
    }

    pub fn imag_part(&self) -> RealSpectrum {
        RealSpectrum {
            grid: self.grid,
            values: self.values.iter().map(|v| v.im).collect(),
        }
    }

    /// Multiplies every value by a real factor.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|v| v * factor).collect())
    }
}

/// Real values sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSpectrum {
    grid: FrequencyGrid,
    values: Vec<f64>,
}

impl RealSpectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return validation(format!(
                "spectrum has {} values but the grid has {} points",
                values.len(),
                grid.len()
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return validation(format!(
                "non-finite spectrum value at omega = {}",
                grid.point(i)
            ));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: FrequencyGrid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Trapezoidal integral over the whole grid.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.values, self.grid.spacing())
    }
}

pub(crate) fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            h * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Transmission, reflection and absorption on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TraSpectra {
    pub transmission: RealSpectrum,
    pub reflection: RealSpectrum,
    pub absorption: RealSpectrum,
}

impl TraSpectra {
    pub fn new(
        transmission: RealSpectrum,
        reflection: RealSpectrum,
        absorption: RealSpectrum,
    ) -> Result<Self> {
        if transmission.grid() != reflection.grid() || transmission.grid() != absorption.grid() {
            return validation("transmission, reflection and absorption must share a grid");
        }
        Ok(Self {
            transmission,
            reflection,
            absorption,
        })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        self.transmission.grid()
    }

    /// Largest pointwise |T + R + A - 1|.
    pub fn max_energy_defect(&self) -> f64 {
        self.transmission
            .values()
            .iter()
            .zip(self.reflection.values())
            .zip(self.absorption.values())
            .map(|((t, r), a)| (t + r + a - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest pointwise deviation from another set of spectra over all three channels.
    pub fn max_abs_deviation(&self, other: &TraSpectra) -> f64 {
        let pairs = [
            (&self.transmission, &other.transmission),
            (&self.reflection, &other.reflection),
            (&self.absorption, &other.absorption),
        ];
        pairs
            .iter()
            .flat_map(|(a, b)| {
                a.values()
                    .iter()
                    .zip(b.values())
                    .map(|(x, y)| (x - y).abs())
            })
            .fold(0.0, f64::max)
    }

    /// True when any absorption value is negative, which signals gain.
    pub fn has_gain(&self) -> bool {
        self.absorption.values().iter().any(|&a| a < 0.0)
    }
}

/// Relative prominence used when no explicit threshold is given.
pub const DEFAULT_PROMINENCE_FRACTION: f64 = 1e-3;

/// `DEFAULT_PROMINENCE_FRACTION` times the spectrum maximum.
pub fn default_prominence(s: &RealSpectrum) -> f64 {
    DEFAULT_PROMINENCE_FRACTION * s.max().abs()
}

/// Interior strict local maxima whose height above the higher of the two
/// adjacent local minima exceeds `min_prominence`, sorted by frequency.
pub fn local_maxima(s: &RealSpectrum, min_prominence: f64) -> Vec<(f64, f64)> {
    let y = s.values();
    let n = y.len();
    let mut peaks = Vec::new();
    if n < 3 {
        return peaks;
    }
    for i in 1..n - 1 {
        if !(y[i] > y[i - 1] && y[i] > y[i + 1]) {
            continue;
        }
        let mut left = i;
        while left > 0 && y[left - 1] <= y[left] {
            left -= 1;
        }
        let mut right = i;
        while right < n - 1 && y[right + 1] <= y[right] {
            right += 1;
        }
        let prominence = y[i] - y[left].max(y[right]);
        if prominence > min_prominence {
            peaks.push((s.grid().point(i), y[i]));
        }
    }
    peaks
}

/// Separation between the two highest prominent maxima, or 0 when fewer than
/// two are found.
pub fn peak_splitting(s: &RealSpectrum) -> f64 {
    let mut peaks = local_maxima(s, default_prominence(s));
    if peaks.len() < 2 {
        return 0.0;
    }
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1));
    (peaks[0].0 - peaks[1].0).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use proptest::prelude::*;

    fn lorentzian(x: f64, x0: f64, hwhm: f64) -> f64 {
        hwhm * hwhm / ((x - x0).powi(2) + hwhm * hwhm)
    }

    #[test]
    fn rejects_mismatched_or_non_finite_values() {
        let g = make_grid(0.0, 1.0, 3).unwrap();
        assert!(RealSpectrum::new(g, vec![0.0; 2]).is_err());
        assert!(RealSpectrum::new(g, vec![0.0, f64::NAN, 0.0]).is_err());
        assert!(ComplexSpectrum::new(g, vec![Complex64::new(0.0, f64::INFINITY); 3]).is_err());
    }

    #[test]
    fn constant_spectrum_has_no_peaks() {
        let g = make_grid(-1.0, 1.0, 101).unwrap();
        let s = RealSpectrum::new(g, vec![3.0; 101]).unwrap();
        assert!(local_maxima(&s, 0.0).is_empty());
    }

    #[test]
    fn single_lorentzian_on_grid_point() {
        let g = make_grid(-2.0, 2.0, 401).unwrap();
        let s = RealSpectrum::from_fn(g, |x| lorentzian(x, 0.5, 0.1)).unwrap();
        let peaks = local_maxima(&s, default_prominence(&s));
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].0 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn two_lorentzians_match_dense_scan() {
        let f = |x: f64| lorentzian(x, -0.73, 0.2) + 0.6 * lorentzian(x, 1.118, 0.15);
        // dense brute-force scan for the true maxima
        let dense = make_grid(-3.0, 3.0, 600_001).unwrap();
        let d = RealSpectrum::from_fn(dense, f).unwrap();
        let oracle = local_maxima(&d, 0.0);
        assert_eq!(oracle.len(), 2);

        let g = make_grid(-3.0, 3.0, 301).unwrap();
        let s = RealSpectrum::from_fn(g, f).unwrap();
        let peaks = local_maxima(&s, default_prominence(&s));
        assert_eq!(peaks.len(), 2);
        for (p, o) in peaks.iter().zip(&oracle) {
            assert!((p.0 - o.0).abs() <= g.spacing());
        }
        assert!((peak_splitting(&s) - (oracle[1].0 - oracle[0].0)).abs() <= 2.0 * g.spacing());
    }

    #[test]
    fn energy_defect_and_gain_flag() {
        let g = make_grid(0.0, 1.0, 2).unwrap();
        let t = RealSpectrum::new(g, vec![0.5, 0.2]).unwrap();
        let r = RealSpectrum::new(g, vec![0.5, 0.9]).unwrap();
        let a = RealSpectrum::new(g, vec![0.0, -0.1]).unwrap();
        let tra = TraSpectra::new(t, r, a).unwrap();
        assert!(tra.max_energy_defect() < 1e-15);
        assert!(tra.has_gain());
    }

    proptest! {
        #[test]
        fn peaks_invariant_under_offset_and_scale(
            c1 in -2.0f64..-0.5, c2 in 0.5f64..2.0, w1 in 0.05f64..0.3, a2 in 0.2f64..2.0,
            offset in -10.0f64..10.0, scale in 0.01f64..100.0,
        ) {
            let g = make_grid(-3.0, 3.0, 601).unwrap();
            let f = |x: f64| lorentzian(x, c1, w1) + a2 * lorentzian(x, c2, 0.2);
            let base = RealSpectrum::from_fn(g, f).unwrap();
            let prom = 1e-3;
            let p0 = local_maxima(&base, prom);

            let shifted = RealSpectrum::from_fn(g, |x| f(x) + offset).unwrap();
            let p1 = local_maxima(&shifted, prom);
            prop_assert_eq!(p0.len(), p1.len());
            for (a, b) in p0.iter().zip(&p1) {
                prop_assert_eq!(a.0, b.0);
            }

            let scaled = RealSpectrum::from_fn(g, |x| scale * f(x)).unwrap();
            prop_assert_eq!(local_maxima(&scaled, scale * prom).len(), p0.len());
        }
    }
}
