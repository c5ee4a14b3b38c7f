use std::f64::consts::PI;

use super::{positive_time, two_path, RelativeDensity, SpacetimeDensity, TimeSlitConfig};
use crate::error::{Error, Result};
use crate::units::{Energy, Length, Momentum, Particle, Time};

/// Spatial separation of the two pulses, `a = p0 τ / m`.
fn pulse_separation(cfg: &TimeSlitConfig, particle: &Particle) -> f64 {
    particle.momentum().internal() * cfg.delay.internal() / particle.mass()
}

fn moving(particle: &Particle) -> Result<f64> {
    let p0 = particle.momentum().internal();
    if p0 == 0.0 {
        return Err(Error::ZeroMomentum("pulse separation"));
    }
    Ok(p0)
}

/// Longitudinal momentum distribution of the double pulse,
/// `cos²[((p_z - p0) p0 τ/(m ħ) - φ)/2]` for equal weights.
pub fn time_slit_momentum_density(p_z: Momentum, cfg: &TimeSlitConfig, particle: &Particle) -> RelativeDensity {
    let a = pulse_separation(cfg, particle);
    two_path(cfg.alpha, (p_z.internal() - particle.momentum().internal()) * a - cfg.phase)
}

/// Momentum of the `n`-th spectral peak, `p_n = p0 + (m ħ / p0 τ)(2πn + φ)`.
pub fn time_slit_peak_momentum(n: i64, cfg: &TimeSlitConfig, particle: &Particle) -> Result<Momentum> {
    let p0 = moving(particle)?;
    let p = p0 + particle.mass() / (p0 * cfg.delay.internal()) * (2.0 * PI * n as f64 + cfg.phase);
    Ok(Momentum::from_internal(p))
}

/// Energy of the `n`-th spectral peak,
/// `E_n = E0 + (ħ/τ)(2πn + φ) + (ħ²/4E0τ²)(2πn + φ)²`.
pub fn time_slit_peak_energies(n: i64, cfg: &TimeSlitConfig, particle: &Particle) -> Result<Energy> {
    let p = time_slit_peak_momentum(n, cfg, particle)?.internal();
    if p <= 0.0 {
        return Err(Error::BelowThreshold { order: n, momentum: p });
    }
    let e0 = particle.energy().internal();
    let tau = cfg.delay.internal();
    let q = 2.0 * PI * n as f64 + cfg.phase;
    Ok(Energy::from_internal(e0 + q / tau + q * q / (4.0 * e0 * tau * tau)))
}

/// Leading-order spacing of the energy fringes, `δE = h / τ`.
///
/// The exact spacing between orders `n` and `n + 1` exceeds this by the
/// quadratic term of [`time_slit_peak_energies`].
pub fn energy_peak_spacing(cfg: &TimeSlitConfig) -> Energy {
    Energy::from_internal(2.0 * PI / cfg.delay.internal())
}

/// Density at `z` and time `t`: oscillating factor
/// `cos²[(p0 τ/2mħ)(p0 - m z/t) + φ/2]` and the `t⁻³` envelope.
pub fn time_slit_spacetime_density(
    z: Length,
    t: Time,
    cfg: &TimeSlitConfig,
    particle: &Particle,
) -> Result<SpacetimeDensity> {
    let t = positive_time(t, "time_slit_spacetime_density")?;
    let a = pulse_separation(cfg, particle);
    let p0 = particle.momentum().internal();
    let phase = a * (p0 - particle.mass() * z.internal() / t) + cfg.phase;
    Ok(SpacetimeDensity {
        relative: two_path(cfg.alpha, phase),
        envelope: t.powi(-3),
    })
}

/// Position of the `n`-th density maximum at fixed `t`, where
/// `(p0 τ/2mħ)(p0 - m z/t) = π n - φ/2`. Order 0 rides with the classical
/// front `z = v0 t` when `φ = 0`.
pub fn time_slit_maximum_position(
    n: i64,
    t: Time,
    cfg: &TimeSlitConfig,
    particle: &Particle,
) -> Result<Length> {
    let t = positive_time(t, "time_slit_maximum_position")?;
    let p0 = moving(particle)?;
    let a = pulse_separation(cfg, particle);
    let z = t / particle.mass() * (p0 - (2.0 * PI * n as f64 - cfg.phase) / a);
    Ok(Length::from_internal(z))
}

/// Local oscillation period at a fixed position,
/// `Ξ(t) = (πħ/E0τ)(p0/mz) t²`. At the classical arrival time
/// `T_z = m z/p0` this is `(πħ/E0τ) T_z`.
pub fn time_slit_period(z: Length, t: Time, cfg: &TimeSlitConfig, particle: &Particle) -> Result<Time> {
    let t = positive_time(t, "time_slit_period")?;
    let p0 = moving(particle)?;
    let z = z.internal();
    if z == 0.0 {
        return Err(Error::domain("time_slit_period requires z != 0"));
    }
    Ok(Time::from_internal(2.0 * PI * t * t / (p0 * cfg.delay.internal() * z.abs())))
}

/// Classical free flight `z = v0 t = (2E0/m)^½ t`.
pub fn classical_displacement(t: Time, particle: &Particle) -> Result<Length> {
    let t = t.internal();
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("classical_displacement requires t >= 0, got {t}")));
    }
    Ok(Length::from_internal(particle.velocity().internal() * t))
}
