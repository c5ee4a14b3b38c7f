use std::f64::consts::PI;

use super::{positive_time, two_path, RelativeDensity, SpaceSlitConfig, SpacetimeDensity};
use crate::error::{Error, Result};
use crate::units::{derived_kinematics, Length, Momentum, Particle, Time};

/// Transverse momentum distribution behind two point slits,
/// `cos²[(p_y a/ħ - φ)/2]` for equal weights.
pub fn space_slit_momentum_density(p_y: Momentum, cfg: &SpaceSlitConfig) -> RelativeDensity {
    two_path(cfg.alpha, p_y.internal() * cfg.separation.internal() - cfg.phase)
}

/// Angle of the `n`-th interference maximum to the forward axis,
/// `sin θ_n = (n + φ/2π) λ_B / a`.
pub fn space_slit_maxima_angles(n: i64, cfg: &SpaceSlitConfig, particle: &Particle) -> Result<f64> {
    let lambda = derived_kinematics(particle)?.de_broglie.internal();
    let sine = (n as f64 + cfg.phase / (2.0 * PI)) * lambda / cfg.separation.internal();
    if !(-1.0..=1.0).contains(&sine) {
        return Err(Error::EvanescentOrder { order: n, sine });
    }
    Ok(sine.asin())
}

/// Transverse position of the `n`-th maximum after free flight for time `t`,
/// `y_n = (2πn + φ) ħ t / (m a)`; the screen image of the angle above.
pub fn space_slit_maximum_position(
    n: i64,
    t: Time,
    cfg: &SpaceSlitConfig,
    particle: &Particle,
) -> Result<Length> {
    let t = positive_time(t, "space_slit_maximum_position")?;
    let y = (2.0 * PI * n as f64 + cfg.phase) * t / (particle.mass() * cfg.separation.internal());
    Ok(Length::from_internal(y))
}

/// Density on the screen coordinate `y` at time `t`: oscillating factor
/// `cos²[a m y/(2ħt) - φ/2]` and the `t⁻³` envelope.
///
/// The oscillating factor tends to the momentum pattern with `p_y = m y/t`.
pub fn space_slit_spacetime_density(
    y: Length,
    t: Time,
    cfg: &SpaceSlitConfig,
    particle: &Particle,
) -> Result<SpacetimeDensity> {
    let t = positive_time(t, "space_slit_spacetime_density")?;
    let phase = cfg.separation.internal() * particle.mass() * y.internal() / t - cfg.phase;
    Ok(SpacetimeDensity {
        relative: two_path(cfg.alpha, phase),
        envelope: t.powi(-3),
    })
}

/// Local oscillation period in time at a fixed screen point,
/// `Ξ(t) = 2πħ t² / (a m y)`.
pub fn space_slit_period(y: Length, t: Time, cfg: &SpaceSlitConfig, particle: &Particle) -> Result<Time> {
    let t = positive_time(t, "space_slit_period")?;
    let y = y.internal();
    if y == 0.0 {
        return Err(Error::NoOscillationOnAxis);
    }
    let xi = 2.0 * PI * t * t / (cfg.separation.internal() * particle.mass() * y.abs());
    Ok(Time::from_internal(xi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{Energy, Unit};

    fn electron_50kev() -> Particle {
        Particle::electron(Energy::ev(50e3)).unwrap()
    }

    #[test]
    fn central_maximum_and_first_zero() {
        let cfg = SpaceSlitConfig::symmetric(Length::nm(1000.0)).unwrap();
        assert_eq!(space_slit_momentum_density(Momentum::from_internal(0.0), &cfg).value(), 1.0);
        let p = PI / cfg.separation().internal();
        let v = space_slit_momentum_density(Momentum::from_internal(p), &cfg).value();
        assert!(v < 1e-30);
    }

    #[test]
    fn forward_and_neighbouring_peaks() {
        let e = electron_50kev();
        let cfg = SpaceSlitConfig::symmetric(Length::nm(1000.0)).unwrap();
        assert_eq!(space_slit_maxima_angles(0, &cfg, &e).unwrap(), 0.0);
        let lambda = derived_kinematics(&e).unwrap().de_broglie.internal();
        let expect = (lambda / cfg.separation().internal()).asin();
        assert!((space_slit_maxima_angles(1, &cfg, &e).unwrap() - expect).abs() < 1e-18);
        assert!((space_slit_maxima_angles(-1, &cfg, &e).unwrap() + expect).abs() < 1e-18);
    }

    #[test]
    fn phase_shift_moves_the_pattern() {
        let e = electron_50kev();
        let a = Length::nm(1000.0);
        let cfg = SpaceSlitConfig::new(a, PI / 2.0, 0.5).unwrap();
        let lambda = derived_kinematics(&e).unwrap().de_broglie.internal();
        let shift = (0.25 * lambda / a.internal()).asin();
        assert!((space_slit_maxima_angles(0, &cfg, &e).unwrap() - shift).abs() < 1e-18);
        // The shifted angle is a maximum of the momentum density.
        let py = e.momentum().internal() * shift.sin();
        let v = space_slit_momentum_density(Momentum::from_internal(py), &cfg).value();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evanescent_order() {
        // lambda_B / a = 2
        let e = Particle::electron(Energy::ev(1.0)).unwrap();
        let lambda = derived_kinematics(&e).unwrap().de_broglie;
        let cfg = SpaceSlitConfig::symmetric(lambda / 2.0).unwrap();
        assert!(matches!(
            space_slit_maxima_angles(1, &cfg, &e),
            Err(Error::EvanescentOrder { order: 1, .. })
        ));
    }

    #[test]
    fn on_axis_density_does_not_oscillate() {
        let e = electron_50kev();
        let cfg = SpaceSlitConfig::symmetric(Length::nm(1000.0)).unwrap();
        for k in 1..50 {
            let d = space_slit_spacetime_density(Length::nm(0.0), Time::fs(k as f64 * 1e3), &cfg, &e).unwrap();
            assert_eq!(d.relative.value(), 1.0);
        }
        assert!(space_slit_spacetime_density(Length::nm(1.0), Time::fs(0.0), &cfg, &e).is_err());
        assert!(matches!(
            space_slit_period(Length::nm(0.0), Time::fs(1.0), &cfg, &e),
            Err(Error::NoOscillationOnAxis)
        ));
    }

    #[test]
    fn period_at_secondary_peaks_equals_arrival_over_order() {
        let e = electron_50kev();
        let cfg = SpaceSlitConfig::symmetric(Length::nm(1000.0)).unwrap();
        let z = Length::new(1.5, Unit::Metre).unwrap();
        let t0 = derived_kinematics(&e).unwrap().arrival_time(z);
        for n in 1..=3i64 {
            let theta = space_slit_maxima_angles(n, &cfg, &e).unwrap();
            let y = z * theta.tan();
            let xi = space_slit_period(y, t0, &cfg, &e).unwrap();
            // Small-angle limit: equality up to O(theta²).
            let rel = xi.internal() * n as f64 / t0.internal() - 1.0;
            assert!(rel.abs() < 1e-9, "n={n}: {rel}");
        }
        let xi1 = space_slit_period(Length::nm(5.0), Time::fs(10.0), &cfg, &e).unwrap();
        let xi2 = space_slit_period(Length::nm(5.0), Time::fs(20.0), &cfg, &e).unwrap();
        assert!((xi2.internal() / xi1.internal() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn screen_maxima_match_far_field_angles() {
        let e = electron_50kev();
        let cfg = SpaceSlitConfig::new(Length::nm(1000.0), 0.7, 0.5).unwrap();
        let t = Time::fs(1e7);
        for n in -2..=2 {
            let y = space_slit_maximum_position(n, t, &cfg, &e).unwrap();
            let d = space_slit_spacetime_density(y, t, &cfg, &e).unwrap();
            assert!((d.relative.value() - 1.0).abs() < 1e-12);
            let theta = space_slit_maxima_angles(n, &cfg, &e).unwrap();
            let v_t = e.velocity().internal() * t.internal();
            assert!((y.internal() - v_t * theta.sin()).abs() < 1e-9 * v_t);
        }
    }
}
