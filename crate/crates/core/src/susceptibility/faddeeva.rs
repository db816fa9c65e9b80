//! Faddeeva function w(z) = exp(-z^2) erfc(-iz) on the closed upper half plane.
//!
//! Weideman's rational series with 40 terms is used for |z| <= 8 and the
//! Laplace continued fraction beyond; both stay near 1e-14 relative error.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{validation, Result};

const N_TERMS: usize = 40;
const CF_RADIUS: f64 = 8.0;
const CF_DEPTH: usize = 60;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

struct Weideman {
    l: f64,
    coeffs: [f64; N_TERMS],
}

fn weideman() -> &'static Weideman {
    static TABLE: OnceLock<Weideman> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m = 2 * N_TERMS;
        let m2 = 2 * m;
        let l = (N_TERMS as f64 / 2f64.sqrt()).sqrt();
        // samples f_k for k = -m+1..m-1, preceded by a zero, then fft-shifted
        let mut samples = vec![0.0; m2];
        for (idx, k) in (-(m as i64) + 1..m as i64).enumerate() {
            let theta = k as f64 * PI / m as f64;
            let t = l * (theta / 2.0).tan();
            samples[idx + 1] = (-t * t).exp() * (l * l + t * t);
        }
        let shifted: Vec<f64> = (0..m2).map(|j| samples[(j + m2 / 2) % m2]).collect();
        let mut coeffs = [0.0; N_TERMS];
        for (n, c) in coeffs.iter_mut().enumerate() {
            let freq = (n + 1) as f64;
            let re: f64 = shifted
                .iter()
                .enumerate()
                .map(|(j, v)| v * (2.0 * PI * j as f64 * freq / m2 as f64).cos())
                .sum();
            *c = re / m2 as f64;
        }
        Weideman { l, coeffs }
    })
}

fn weideman_series(z: Complex64) -> Complex64 {
    let table = weideman();
    let iz = Complex64::i() * z;
    let denom = table.l - iz;
    let zeta = (table.l + iz) / denom;
    let mut p = Complex64::new(0.0, 0.0);
    for c in table.coeffs.iter().rev() {
        p = p * zeta + c;
    }
    2.0 * p / (denom * denom) + FRAC_1_SQRT_PI / denom
}

fn continued_fraction(z: Complex64) -> Complex64 {
    let mut r = Complex64::new(0.0, 0.0);
    for k in (1..=CF_DEPTH).rev() {
        r = (k as f64 / 2.0) / (z - r);
    }
    Complex64::i() * FRAC_1_SQRT_PI / (z - r)
}

/// Evaluates w(z) for `Im z >= 0` without validation.
pub(crate) fn faddeeva_uhp(z: Complex64) -> Complex64 {
    if z.norm() > CF_RADIUS {
        continued_fraction(z)
    } else {
        weideman_series(z)
    }
}

/// Faddeeva (scaled complex error) function for arguments in the closed
/// upper half plane.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return validation(format!("faddeeva argument must be finite (got {z})"));
    }
    if z.im < 0.0 {
        return validation(format!(
            "faddeeva is only implemented for Im z >= 0 (got {z})"
        ));
    }
    Ok(faddeeva_uhp(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Power series w(z) = sum (iz)^n / Gamma(n/2 + 1); reliable for |z| <~ 3.
    fn series_oracle(z: Complex64) -> Complex64 {
        let iz = Complex64::i() * z;
        // Gamma(n/2 + 1) for n = 0, 1 seeds the two interleaved recurrences
        let mut gamma = [1.0, PI.sqrt() / 2.0];
        let mut power = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 0..200 {
            let g = gamma[n % 2];
            sum += power / g;
            power *= iz;
            gamma[n % 2] = g * (n as f64 / 2.0 + 1.0);
        }
        sum
    }

    fn rel_err(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn value_at_origin() {
        let w = faddeeva(Complex64::new(0.0, 0.0)).unwrap();
        assert!((w - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn value_at_i_matches_e_erfc_one() {
        let w = faddeeva(Complex64::new(0.0, 1.0)).unwrap();
        let oracle = series_oracle(Complex64::new(0.0, 1.0));
        // e * erfc(1)
        assert!((oracle.re - 0.427_583_576_155_807).abs() < 1e-13);
        assert!(rel_err(w, oracle) < 1e-12);
        assert!(w.im.abs() < 1e-14);
    }

    #[test]
    fn matches_series_near_origin() {
        for &(x, y) in &[
            (0.3, 0.0),
            (-1.2, 0.05),
            (2.0, 0.5),
            (-0.7, 1.5),
            (1.9, 2.1),
            (2.5, 0.01),
        ] {
            let z = Complex64::new(x, y);
            let e = rel_err(faddeeva(z).unwrap(), series_oracle(z));
            assert!(e < 1e-10, "z = {z}: rel err {e}");
        }
    }

    #[test]
    fn large_argument_asymptotics() {
        let z = Complex64::new(0.0, 100.0);
        let w = faddeeva(z).unwrap();
        let leading = Complex64::i() * FRAC_1_SQRT_PI / z;
        // next asymptotic terms: 1 + 1/(2 z^2) + 3/(4 z^4)
        let z2 = z * z;
        let asym = leading * (1.0 + 1.0 / (2.0 * z2) + 3.0 / (4.0 * z2 * z2));
        assert!(rel_err(w, leading) < 1e-4);
        assert!(rel_err(w, asym) < 1e-10);
        for &(x, y) in &[(50.0, 0.0), (-30.0, 2.0), (12.0, 9.0)] {
            let z = Complex64::new(x, y);
            let z2 = z * z;
            let asym = Complex64::i() * FRAC_1_SQRT_PI / z
                * (1.0 + 1.0 / (2.0 * z2) + 3.0 / (4.0 * z2 * z2) + 15.0 / (8.0 * z2 * z2 * z2));
            assert!(rel_err(faddeeva(z).unwrap(), asym) < 1e-6);
        }
    }

    #[test]
    fn branches_agree_at_switch_radius() {
        for k in 0..16 {
            let theta = PI * k as f64 / 15.0;
            let z = Complex64::from_polar(CF_RADIUS, theta);
            let z = Complex64::new(z.re, z.im.max(0.0));
            assert!(rel_err(weideman_series(z), continued_fraction(z)) < 1e-12);
        }
    }

    #[test]
    fn real_axis_symmetry() {
        // w(-x) = conj(w(x)) for real x
        for &x in &[0.1, 1.0, 3.3, 7.9, 8.5, 20.0] {
            let a = faddeeva(Complex64::new(x, 0.0)).unwrap();
            let b = faddeeva(Complex64::new(-x, 0.0)).unwrap();
            assert!(rel_err(b, a.conj()) < 1e-13);
            // Re w(x) = exp(-x^2) on the real axis
            assert!((a.re - (-x * x).exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(faddeeva(Complex64::new(1.0, -0.1)).is_err());
    }
}
