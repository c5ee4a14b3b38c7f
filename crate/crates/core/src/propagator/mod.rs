//! Spectral free-particle evolution on a periodic 1-D grid.
//!
//! A state is transformed to momentum space, multiplied by
//! `exp(-i k² t / 2m)` and transformed back. The result is exact for the
//! band-limited grid representation at any `t`; the only errors are
//! discretization and wrap-around, both controlled by the grid rules in
//! [`grid_for`].

mod compare;
mod evolve;
mod grid;
mod initial;

pub use compare::{compare_to_analytic, Comparison};
pub use evolve::{evolve_free, FreeEvolver, PointTrace, UniformTimes};
pub use grid::Grid1D;
pub use initial::{components, grid_for, make_initial_state, InitialStateSpec};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{Axis, Series};
use crate::units::Length;

/// Momentum band a state is known to occupy: `|k - center| ≤ half_width`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bandwidth {
    pub center: f64,
    pub half_width: f64,
}

impl Bandwidth {
    /// Largest `|k|` the state needs on the grid.
    pub fn required(&self) -> f64 {
        self.center.abs() + self.half_width
    }
}

/// Complex amplitudes on a [`Grid1D`] with a cached norm `Σ|ψ|² Δx`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexField {
    grid: Grid1D,
    amplitudes: Vec<Complex64>,
    norm: f64,
    bandwidth: Option<Bandwidth>,
}

impl ComplexField {
    pub fn new(grid: Grid1D, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::config(format!(
                "field has {} amplitudes for a grid of {} points",
                amplitudes.len(),
                grid.len()
            )));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * grid.spacing().internal();
        if !norm.is_finite() {
            return Err(Error::NonFinite("ComplexField::new"));
        }
        Ok(ComplexField {
            grid,
            amplitudes,
            norm,
            bandwidth: None,
        })
    }

    /// Attach the momentum band the state occupies, checked before evolution.
    pub fn with_bandwidth(mut self, bandwidth: Bandwidth) -> Self {
        self.bandwidth = Some(bandwidth);
        self
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn bandwidth(&self) -> Option<Bandwidth> {
        self.bandwidth
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Copy scaled to unit norm.
    pub fn normalized(&self) -> Result<Self> {
        if self.norm <= 0.0 {
            return Err(Error::domain("cannot normalize a field of zero norm"));
        }
        Ok(self.scaled(1.0 / self.norm.sqrt()))
    }

    pub(crate) fn scaled(&self, factor: f64) -> Self {
        let amplitudes: Vec<_> = self.amplitudes.iter().map(|a| a * factor).collect();
        ComplexField {
            grid: self.grid.clone(),
            norm: self.norm * factor * factor,
            amplitudes,
            bandwidth: self.bandwidth,
        }
    }

    pub(crate) fn with_amplitudes(&self, amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut out = ComplexField::new(self.grid.clone(), amplitudes)?;
        out.bandwidth = self.bandwidth;
        Ok(out)
    }

    /// Complex sum of two fields on the same grid.
    pub fn superpose(&self, other: &ComplexField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::config("superposed fields must share a grid"));
        }
        let amps = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a + b)
            .collect();
        let mut out = ComplexField::new(self.grid.clone(), amps)?;
        out.bandwidth = match (self.bandwidth, other.bandwidth) {
            (Some(a), Some(b)) => Some(if a.required() >= b.required() { a } else { b }),
            (a, b) => a.or(b),
        };
        Ok(out)
    }

    /// Pointwise `|ψ|²` in nm⁻¹ against position in nm.
    pub fn density(&self) -> Series {
        let per_nm = 1.0 / Length::from_internal(1.0).to_nm();
        Series::new(
            Axis::new("x", "nm"),
            Axis::new("density", "1/nm"),
            self.grid.positions().map(|x| Length::from_internal(x).to_nm()).collect(),
            self.amplitudes.iter().map(|a| a.norm_sqr() * per_nm).collect(),
        )
    }

    /// `|ψ|²` in internal units, without building a series.
    pub fn density_values(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}
