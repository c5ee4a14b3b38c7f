//! Complex error functions and Fresnel integrals.
//!
//! The Faddeeva kernel comes from the `errorfunctions` crate (Johnson's
//! algorithm: continued fraction for large |z|, Chebyshev/Taylor expansions
//! of erfcx and Dawson near the real axis). The Fresnel integrals are
//! evaluated here with a power series for small arguments and a Lentz
//! continued fraction for the complementary error function elsewhere.

use std::f64::consts::{FRAC_PI_2, PI};

use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_finite(z: Complex64, op: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(op))
    }
}

/// The Faddeeva function `w(z) = exp(-z²) erfc(-iz)`.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    check_finite(z, "faddeeva")?;
    Ok(z.w())
}

/// Complementary error function of a complex argument.
pub fn erfc_complex(z: Complex64) -> Result<Complex64> {
    check_finite(z, "erfc_complex")?;
    Ok(z.erfc())
}

/// The scaled product `exp(z²) erfc(z)`, computed as `w(iz)`.
///
/// Stays finite where the two factors separately overflow or underflow.
pub fn exp_y2_erfc(z: Complex64) -> Result<Complex64> {
    check_finite(z, "exp_y2_erfc")?;
    Ok((Complex64::i() * z).w())
}

/// Real complementary error function.
pub fn erfc(x: f64) -> Result<f64> {
    Ok(erfc_complex(Complex64::new(x, 0.0))?.re)
}

/// Fresnel integrals `C(u) = ∫₀ᵘ cos(πs²/2) ds` and `S(u) = ∫₀ᵘ sin(πs²/2) ds`.
pub fn fresnel(u: f64) -> Result<(f64, f64)> {
    if !u.is_finite() {
        return Err(Error::NonFinite("fresnel"));
    }
    let x = u.abs();
    let (c, s) = if x < SERIES_LIMIT {
        fresnel_series(x)
    } else {
        fresnel_continued_fraction(x)
    };
    Ok(if u < 0.0 { (-c, -s) } else { (c, s) })
}

const SERIES_LIMIT: f64 = 1.5;
const EPS: f64 = 1e-16;
const MAX_ITER: usize = 500;

fn fresnel_series(x: f64) -> (f64, f64) {
    if x < 1e-150 {
        return (x, 0.0);
    }
    // Alternating odd/even terms of exp(i pi x²/2) integrated term by term.
    let fact = FRAC_PI_2 * x * x;
    let mut term = x;
    let mut sum_c = x;
    let mut sum_s = 0.0;
    for k in 1..MAX_ITER {
        term *= fact / k as f64;
        let n = (2 * k + 1) as f64;
        // k odd -> sine series, k even -> cosine series; signs alternate per pair.
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            sum_s += sign * term / n;
        } else {
            sum_c += sign * term / n;
        }
        if term / n < EPS * sum_c.abs().max(sum_s.abs()) {
            break;
        }
    }
    (sum_c, sum_s)
}

fn fresnel_continued_fraction(x: f64) -> (f64, f64) {
    // Modified Lentz evaluation of erfc((1-i) sqrt(pi) x / 2).
    let tiny = 1e-300;
    let pix2 = PI * x * x;
    let mut b = Complex64::new(1.0, -pix2);
    let mut cc = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0;
    for _ in 1..MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (a * d + b).inv();
        cc = b + a / cc;
        let del = cc * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < EPS {
            break;
        }
    }
    h *= Complex64::new(x, -x);
    let phase = Complex64::new((0.5 * pix2).cos(), (0.5 * pix2).sin());
    let cs = Complex64::new(0.5, 0.5) * (Complex64::new(1.0, 0.0) - phase * h);
    (cs.re, cs.im)
}
