//! Uniform frequency and time grids.

use crate::error::{validation, Result};

/// Uniform, endpoint-inclusive frequency grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    omega_min: f64,
    omega_max: f64,
    n_points: usize,
}

impl FrequencyGrid {
    pub fn new(omega_min: f64, omega_max: f64, n_points: usize) -> Result<Self> {
        if !omega_min.is_finite() || !omega_max.is_finite() {
            return validation(format!(
                "grid bounds must be finite (got [{omega_min}, {omega_max}])"
            ));
        }
        if omega_min >= omega_max {
            return validation(format!(
                "grid requires omega_min < omega_max (got {omega_min} >= {omega_max})"
            ));
        }
        if n_points < 2 {
            return validation(format!("grid requires n_points >= 2 (got {n_points})"));
        }
        Ok(Self {
            omega_min,
            omega_max,
            n_points,
        })
    }

    pub fn omega_min(&self) -> f64 {
        self.omega_min
    }

    pub fn omega_max(&self) -> f64 {
        self.omega_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.omega_max - self.omega_min) / (self.n_points - 1) as f64
    }

    /// The `i`-th grid point. The last point is `omega_max` exactly.
    pub fn point(&self, i: usize) -> f64 {
        assert!(i < self.n_points, "grid index {i} out of range");
        if i == self.n_points - 1 {
            self.omega_max
        } else {
            self.omega_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.points().collect()
    }

    /// Same bounds and point count.
    pub fn same_as(&self, other: &FrequencyGrid) -> bool {
        self == other
    }
}

/// Convenience constructor mirroring `FrequencyGrid::new`.
pub fn make_grid(omega_min: f64, omega_max: f64, n_points: usize) -> Result<FrequencyGrid> {
    FrequencyGrid::new(omega_min, omega_max, n_points)
}

/// Uniform time grid starting at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    n_points: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, n_points: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return validation(format!("time grid requires t_max > 0 (got {t_max})"));
        }
        if n_points < 2 {
            return validation(format!("time grid requires n_points >= 2 (got {n_points})"));
        }
        Ok(Self { t_max, n_points })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.t_max / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        assert!(i < self.n_points, "time index {i} out of range");
        if i == self.n_points - 1 {
            self.t_max
        } else {
            i as f64 * self.step()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_point_grid() {
        let g = make_grid(-4.0, 4.0, 5).unwrap();
        assert_eq!(g.to_vec(), vec![-4.0, -2.0, 0.0, 2.0, 4.0]);
        assert_eq!(g.spacing(), 2.0);
    }

    #[test]
    fn two_point_grid() {
        let g = make_grid(0.0, 1.0, 2).unwrap();
        assert_eq!(g.to_vec(), vec![0.0, 1.0]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(make_grid(1.0, -1.0, 10).is_err());
        assert!(make_grid(1.0, 1.0, 10).is_err());
        assert!(make_grid(0.0, 1.0, 1).is_err());
        assert!(make_grid(f64::NAN, 1.0, 10).is_err());
        assert!(TimeGrid::new(0.0, 10).is_err());
        assert!(TimeGrid::new(1.0, 1).is_err());
    }

    #[test]
    fn endpoints_are_exact() {
        let g = make_grid(-4.0, 4.0, 4001).unwrap();
        assert_eq!(g.point(0), -4.0);
        assert_eq!(g.point(4000), 4.0);
        assert_eq!(g.point(2000), 0.0);
        for i in 0..4000 {
            assert_eq!(g.point(i), -4.0 + i as f64 * g.spacing());
        }
        let t = TimeGrid::new(10.0, 11).unwrap();
        assert_eq!(t.point(0), 0.0);
        assert_eq!(t.point(10), 10.0);
    }
}
