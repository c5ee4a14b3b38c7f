use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::units::Length;

/// Uniform periodic grid `x_j = x_min + j Δx`, `j = 0..n`, with
/// `Δx = (x_max - x_min)/n`. The point `x_max` is the periodic image of
/// `x_min` and is not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid1D {
    n_points: usize,
    x_min: f64,
    x_max: f64,
}

impl Grid1D {
    pub fn new(n_points: usize, x_min: Length, x_max: Length) -> Result<Self> {
        if n_points < 2 || !n_points.is_power_of_two() {
            return Err(Error::config(format!("grid size must be a power of two >= 2, got {n_points}")));
        }
        let (lo, hi) = (x_min.internal(), x_max.internal());
        if !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(Error::config("grid extent must be finite with x_max > x_min"));
        }
        Ok(Grid1D {
            n_points,
            x_min: lo,
            x_max: hi,
        })
    }

    /// Smallest power-of-two grid over `[x_min, x_max]` whose spacing does
    /// not exceed `max_spacing`.
    pub fn covering(x_min: Length, x_max: Length, max_spacing: Length) -> Result<Self> {
        let h = max_spacing.internal();
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::config("grid spacing must be > 0"));
        }
        let cells = ((x_max.internal() - x_min.internal()) / h).ceil();
        if !cells.is_finite() || cells > (1u64 << 40) as f64 {
            return Err(Error::config("requested grid is too large"));
        }
        let n = (cells.max(2.0) as usize).next_power_of_two();
        Self::new(n, x_min, x_max)
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x_min(&self) -> Length {
        Length::from_internal(self.x_min)
    }

    pub fn x_max(&self) -> Length {
        Length::from_internal(self.x_max)
    }

    pub fn extent(&self) -> Length {
        Length::from_internal(self.x_max - self.x_min)
    }

    pub fn spacing(&self) -> Length {
        Length::from_internal((self.x_max - self.x_min) / self.n_points as f64)
    }

    /// Positions in internal length units.
    pub fn positions(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        let h = self.spacing().internal();
        (0..self.n_points).map(move |j| self.x_min + h * j as f64)
    }

    /// Angular wavenumbers in transform order: `0, Δk, …, -Δk`.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n_points;
        let dk = 2.0 * PI / (self.x_max - self.x_min);
        (0..n)
            .map(|j| {
                let m = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
                m * dk
            })
            .collect()
    }

    /// Largest representable `|k| = π/Δx`.
    pub fn max_wavenumber(&self) -> f64 {
        PI / self.spacing().internal()
    }

    pub fn contains(&self, x: Length) -> bool {
        (self.x_min..self.x_max).contains(&x.internal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Grid1D::new(3, Length::nm(0.0), Length::nm(1.0)).is_err());
        assert!(Grid1D::new(1, Length::nm(0.0), Length::nm(1.0)).is_err());
        assert!(Grid1D::new(4, Length::nm(1.0), Length::nm(1.0)).is_err());
        assert!(Grid1D::new(4, Length::nm(0.0), Length::nm(f64::INFINITY)).is_err());
        assert!(Grid1D::new(2, Length::nm(0.0), Length::nm(1.0)).is_ok());
    }

    #[test]
    fn spacing_and_wavenumbers() {
        let g = Grid1D::new(8, Length::from_internal(-4.0), Length::from_internal(4.0)).unwrap();
        assert_eq!(g.spacing().internal(), 1.0);
        let x: Vec<_> = g.positions().collect();
        assert_eq!(x, vec![-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
        let k = g.wavenumbers();
        let dk = 2.0 * PI / 8.0;
        assert_eq!(k[1], dk);
        assert_eq!(k[4], -4.0 * dk);
        assert_eq!(k[7], -dk);
        assert!((g.max_wavenumber() - 4.0 * dk).abs() < 1e-15);
    }

    #[test]
    fn covering_rounds_up() {
        let g = Grid1D::covering(Length::from_internal(0.0), Length::from_internal(100.0), Length::from_internal(0.3))
            .unwrap();
        assert_eq!(g.len(), 512);
        assert!(g.spacing().internal() <= 0.3);
    }
}
