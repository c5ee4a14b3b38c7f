use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::positive_time;
use crate::error::{Error, Result};
use crate::specfun::{exp_y2_erfc, fresnel};
use crate::units::{Length, Particle, Time};

/// `Y0 = e^{-iπ/4} (m/2ħt)^½ (z - v0 t)`.
fn shutter_argument(z: f64, t: f64, particle: &Particle) -> Complex64 {
    let m = particle.mass();
    let v0 = particle.velocity().internal();
    Complex64::from_polar(1.0, -FRAC_PI_4) * ((m / (2.0 * t)).sqrt() * (z - v0 * t))
}

/// Longitudinal wave function behind a shutter opened at `t = 0` in front
/// of a unit-amplitude plane wave:
/// `ψ = ½ exp(i m z²/2ħt) · exp(Y0²) erfc(Y0)`.
///
/// Deep in the illuminated region `|ψ| → 1`, in the shadow `|ψ| → 0`.
pub fn shutter_wavefunction(z: Length, t: Time, particle: &Particle) -> Result<Complex64> {
    let t = positive_time(t, "shutter_wavefunction")?;
    let z = z.internal();
    let y0 = shutter_argument(z, t, particle);
    let chirp = Complex64::from_polar(1.0, particle.mass() * z * z / (2.0 * t));
    Ok(0.5 * chirp * exp_y2_erfc(y0)?)
}

/// Fresnel argument `u = (m/πħt)^½ (v0 t - z)`; zero at the classical
/// arrival time and growing with `t` at fixed `z`.
pub fn shutter_fresnel_argument(z: Length, t: Time, particle: &Particle) -> Result<f64> {
    let t = positive_time(t, "shutter_fresnel_argument")?;
    let v0 = particle.velocity().internal();
    Ok((particle.mass() / (PI * t)).sqrt() * (v0 * t - z.internal()))
}

/// Transient over stationary signal behind the shutter,
/// `½[(½ + C(u))² + (½ + S(u))²]`.
///
/// Equals `|ψ|²` of [`shutter_wavefunction`] exactly; it is `¼` at the
/// classical arrival time and tends to 1 for large `u`.
pub fn shutter_current_ratio(z: Length, t: Time, particle: &Particle) -> Result<f64> {
    shutter_ratio_of_u(shutter_fresnel_argument(z, t, particle)?)
}

/// Probability current `j = (ħ/m) Im(ψ* ∂zψ)` divided by the stationary
/// current `v0`.
///
/// Differs from [`shutter_current_ratio`] by a term of order
/// `(p0 z/ħ)^{-½}` near the arrival time.
pub fn shutter_flux_ratio(z: Length, t: Time, particle: &Particle) -> Result<f64> {
    let t = positive_time(t, "shutter_flux_ratio")?;
    let p0 = particle.momentum().internal();
    if p0 == 0.0 {
        return Err(Error::ZeroMomentum("stationary current"));
    }
    let m = particle.mass();
    let w = exp_y2_erfc(shutter_argument(z.internal(), t, particle))?;
    // ∂z erfc(Y0) · conj(erfc(Y0)) reduces to conj(w) because |exp(Y0²)| = 1.
    let tilt = (w.conj() * Complex64::from_polar(1.0, -FRAC_PI_4)).im;
    let correction = tilt / (2.0 * PI.sqrt() * p0) * (m / (2.0 * t)).sqrt();
    Ok(0.25 * w.norm_sqr() - correction)
}

/// Fresnel form of the ratio as a function of `u` alone.
pub fn shutter_ratio_of_u(u: f64) -> Result<f64> {
    let (c, s) = fresnel(u)?;
    Ok(0.5 * ((0.5 + c).powi(2) + (0.5 + s).powi(2)))
}

/// First maximum of the ratio after the classical arrival, `(u, ratio)`.
///
/// Located by golden-section search on the bracket `[0.8, 1.6]`, which
/// holds exactly one maximum of the Fresnel form.
pub fn shutter_first_maximum() -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.8, 1.6);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (shutter_ratio_of_u(c)?, shutter_ratio_of_u(d)?);
    while b - a > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = shutter_ratio_of_u(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = shutter_ratio_of_u(d)?;
        }
    }
    let u = 0.5 * (a + b);
    Ok((u, shutter_ratio_of_u(u)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{derived_kinematics, Energy};

    fn electron() -> Particle {
        Particle::electron(Energy::ev(0.3)).unwrap()
    }

    #[test]
    fn arrival_time_values() {
        let e = electron();
        let z = Length::nm(1626.0);
        let t = derived_kinematics(&e).unwrap().arrival_time(z);
        let psi = shutter_wavefunction(z, t, &e).unwrap();
        assert!((psi.norm() - 0.5).abs() < 1e-12);
        assert!((shutter_current_ratio(z, t, &e).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn shadow_and_illuminated_limits() {
        let e = electron();
        let t = Time::fs(1000.0);
        let front = e.velocity().internal() * t.internal();
        let shadow = shutter_wavefunction(Length::from_internal(front + 5000.0), t, &e).unwrap();
        assert!(shadow.norm() < 0.01);
        let lit = shutter_wavefunction(Length::from_internal(front - 50_000.0), t, &e).unwrap();
        assert!((lit.norm() - 1.0).abs() < 0.01);
    }

    #[test]
    fn density_equals_fresnel_form() {
        let e = electron();
        let z = Length::nm(500.0);
        for k in 1..200 {
            let t = Time::fs(50.0 * k as f64);
            let psi = shutter_wavefunction(z, t, &e).unwrap();
            let r = shutter_current_ratio(z, t, &e).unwrap();
            assert!((psi.norm_sqr() - r).abs() < 1e-10, "t = {k}");
        }
    }

    #[test]
    fn flux_tends_to_density_far_from_the_shutter() {
        let e = electron();
        let kin = derived_kinematics(&e).unwrap();
        let near = Length::nm(50.0);
        let far = Length::nm(50_000.0);
        let d_near = shutter_flux_ratio(near, kin.arrival_time(near), &e).unwrap() - 0.25;
        let d_far = shutter_flux_ratio(far, kin.arrival_time(far), &e).unwrap() - 0.25;
        assert!(d_near > d_far && d_far > 0.0);
        // 1 / (4 (pi p0 z)^½) at the arrival time.
        let p0z = e.momentum().internal() * far.internal();
        assert!((d_far - 0.25 / (PI * p0z).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn flux_matches_finite_difference_current() {
        let e = electron();
        let t = Time::fs(3000.0);
        let h = 1e-4;
        for z_nm in [800.0, 950.0, 1000.0, 1100.0] {
            let z = Length::nm(z_nm);
            let psi = shutter_wavefunction(z, t, &e).unwrap();
            let plus = shutter_wavefunction(Length::from_internal(z.internal() + h), t, &e).unwrap();
            let minus = shutter_wavefunction(Length::from_internal(z.internal() - h), t, &e).unwrap();
            let dpsi = (plus - minus) / (2.0 * h);
            let j = (psi.conj() * dpsi).im / e.mass();
            let ratio = j / e.velocity().internal();
            let exact = shutter_flux_ratio(z, t, &e).unwrap();
            assert!((ratio - exact).abs() < 1e-6, "{z_nm}: {ratio} vs {exact}");
        }
    }

    #[test]
    fn first_maximum() {
        let (u, r) = shutter_first_maximum().unwrap();
        assert!((u - 1.217_198_3).abs() < 1e-6, "{u}");
        assert!((r - 1.370_442_919_7).abs() < 1e-9, "{r}");
    }

    #[test]
    fn rejects_non_positive_time() {
        let e = electron();
        assert!(shutter_wavefunction(Length::nm(1.0), Time::fs(0.0), &e).is_err());
        assert!(shutter_current_ratio(Length::nm(1.0), Time::fs(-1.0), &e).is_err());
    }
}
