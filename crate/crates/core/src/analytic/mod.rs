//! Closed-form free-particle results for four set-ups: two point slits in
//! space, a suddenly opened shutter, two pulses separated in time, and
//! slits with unequal weights.
//!
//! Point-slit initial states are not normalizable, so every density here is
//! relative: divided by its global maximum. Factors that only carry the
//! overall decay of a spreading state (the `t⁻³` envelope) are reported
//! separately from the oscillating part.
//!
//! Conventions: the second slit (at `-a/2`) carries the factor `exp(-iφ)`
//! and the weight `1 - α`; the free propagator is `exp(-i p² t / 2m ħ)`.

mod shutter;
mod space;
mod time;
mod weighted;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::units::{Length, Time};

pub use shutter::{
    shutter_current_ratio, shutter_first_maximum, shutter_flux_ratio, shutter_fresnel_argument,
    shutter_ratio_of_u, shutter_wavefunction,
};
pub use space::{
    space_slit_maxima_angles, space_slit_maximum_position, space_slit_momentum_density,
    space_slit_period, space_slit_spacetime_density,
};
pub use time::{
    classical_displacement, energy_peak_spacing, time_slit_maximum_position,
    time_slit_momentum_density, time_slit_peak_energies, time_slit_peak_momentum,
    time_slit_period, time_slit_spacetime_density,
};
pub use weighted::{fringe_visibility, weighted_slit_momentum_density};

/// A density divided by the global maximum of its pattern; always in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct RelativeDensity(f64);

impl RelativeDensity {
    fn new(value: f64) -> Self {
        RelativeDensity(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Oscillating factor and the separate `t⁻³` decay of a spreading pattern.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacetimeDensity {
    pub relative: RelativeDensity,
    /// `t⁻³` with `t` in internal time units.
    pub envelope: f64,
}

/// Two point slits along the transverse axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceSlitConfig {
    separation: Length,
    phase: f64,
    alpha: f64,
}

impl SpaceSlitConfig {
    pub fn new(separation: Length, phase: f64, alpha: f64) -> Result<Self> {
        let a = separation.internal();
        if !a.is_finite() || a <= 0.0 {
            return Err(Error::config("slit separation must be > 0"));
        }
        Ok(SpaceSlitConfig {
            separation,
            phase: fold_phase(phase)?,
            alpha: check_alpha(alpha)?,
        })
    }

    /// Equal weights, no phase difference.
    pub fn symmetric(separation: Length) -> Result<Self> {
        Self::new(separation, 0.0, 0.5)
    }

    pub fn separation(&self) -> Length {
        self.separation
    }

    /// Phase difference folded into `(-π, π]`.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Two pulses launched along the propagation axis with delay `tau`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeSlitConfig {
    delay: Time,
    phase: f64,
    alpha: f64,
}

impl TimeSlitConfig {
    pub fn new(delay: Time, phase: f64, alpha: f64) -> Result<Self> {
        let tau = delay.internal();
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::config("pulse delay must be > 0"));
        }
        Ok(TimeSlitConfig {
            delay,
            phase: fold_phase(phase)?,
            alpha: check_alpha(alpha)?,
        })
    }

    pub fn symmetric(delay: Time) -> Result<Self> {
        Self::new(delay, 0.0, 0.5)
    }

    pub fn delay(&self) -> Time {
        self.delay
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

fn fold_phase(phase: f64) -> Result<f64> {
    if !phase.is_finite() {
        return Err(Error::config("phase must be finite"));
    }
    let r = phase.rem_euclid(2.0 * PI);
    Ok(if r > PI { r - 2.0 * PI } else { r })
}

fn check_alpha(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::config(format!("slit weight alpha must lie in [0, 1], got {alpha}")));
    }
    Ok(alpha)
}

/// `|α + (1-α) e^{iθ}|²`, which has maximum 1 for every α:
/// `(2α-1)² + 4α(1-α) cos²(θ/2)`.
fn two_path(alpha: f64, phase: f64) -> RelativeDensity {
    let c = (0.5 * phase).cos();
    let d = 2.0 * alpha - 1.0;
    RelativeDensity::new(d * d + 4.0 * alpha * (1.0 - alpha) * c * c)
}

fn positive_time(t: Time, what: &str) -> Result<f64> {
    let t = t.internal();
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::domain(format!("{what} requires t > 0, got {t}")));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_folding() {
        assert_eq!(fold_phase(0.0).unwrap(), 0.0);
        assert!((fold_phase(PI).unwrap() - PI).abs() < 1e-15);
        assert!((fold_phase(-PI).unwrap() - PI).abs() < 1e-15);
        assert!((fold_phase(3.0 * PI / 2.0).unwrap() + PI / 2.0).abs() < 1e-15);
        assert!(fold_phase(f64::NAN).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SpaceSlitConfig::new(Length::nm(0.0), 0.0, 0.5).is_err());
        assert!(SpaceSlitConfig::new(Length::nm(1.0), 0.0, 1.5).is_err());
        assert!(TimeSlitConfig::new(Time::fs(-1.0), 0.0, 0.5).is_err());
        assert!(TimeSlitConfig::new(Time::fs(1.0), 0.0, -0.1).is_err());
    }

    #[test]
    fn two_path_is_bounded() {
        for k in 0..=20 {
            let alpha = k as f64 / 20.0;
            for j in 0..100 {
                let v = two_path(alpha, j as f64 * 0.37).value();
                assert!((0.0..=1.0).contains(&v));
            }
            assert!((two_path(alpha, 0.0).value() - 1.0).abs() < 1e-15);
        }
    }
}
