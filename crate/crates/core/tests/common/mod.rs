//! Reference implementations used only by the tests. They share no code
//! with the library.
#![allow(dead_code)]

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Dd {
        quick_two_sum(hi, lo)
    }

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: Dd) -> Dd {
        let s = two_sum(self.hi, o.hi);
        let t = two_sum(self.lo, o.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }

    pub fn div_f64(self, d: f64) -> Dd {
        let q1 = self.hi / d;
        let p = q1 * d;
        let e = q1.mul_add(d, -p);
        let r = (self.hi - p - e + self.lo) / d;
        quick_two_sum(q1, r)
    }
}

#[derive(Clone, Copy, Debug)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    fn mul(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    fn scale(self, s: Dd) -> DdComplex {
        DdComplex {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    fn add(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    fn magnitude(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

/// `w(z) = Σ (iz)ⁿ / Γ(n/2 + 1)` summed in double-double arithmetic.
pub fn faddeeva_series(z: Complex64) -> Complex64 {
    // 1/Γ(n/2 + 1): c₀ = 1, c₁ = 2/√π, cₙ = cₙ₋₂ / (n/2).
    let mut c = [Dd::from(1.0), Dd::new(std::f64::consts::FRAC_2_SQRT_PI, 1.533_545_961_316_588e-17)];
    let iz = DdComplex {
        re: Dd::from(-z.im),
        im: Dd::from(z.re),
    };
    let mut power = DdComplex {
        re: Dd::from(1.0),
        im: Dd::ZERO,
    };
    let mut sum = DdComplex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    let mut largest: f64 = 0.0;
    let mut n = 0usize;
    loop {
        if n >= 2 {
            c[n % 2] = c[n % 2].div_f64(0.5 * n as f64);
        }
        let term = power.scale(c[n % 2]);
        sum = sum.add(term);
        let size = term.magnitude();
        largest = largest.max(size);
        if n > 4 && size < 1e-36 * largest.max(1.0) {
            break;
        }
        power = power.mul(iz);
        n += 1;
        assert!(n < 5000, "series did not converge at {z}");
    }
    Complex64::new(sum.re.to_f64(), sum.im.to_f64())
}

/// `erfc(z) = e^{-z²} w(iz)`, with `w` from [`faddeeva_series`].
pub fn erfc_series(z: Complex64) -> Complex64 {
    (-z * z).exp() * faddeeva_series(Complex64::new(-z.im, z.re))
}

#[allow(clippy::too_many_arguments)]
fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// `∫ₐᵇ f` by adaptive Simpson quadrature, on unit subintervals.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let pieces = ((b - a).abs().ceil() as usize).max(1) * 4;
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|k| {
            let (x0, x1) = (a + k as f64 * h, a + (k + 1) as f64 * h);
            let (f0, f1, fm) = (f(x0), f(x1), f(0.5 * (x0 + x1)));
            let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
            simpson(f, x0, x1, f0, fm, f1, whole, tol / pieces as f64, 40)
        })
        .sum()
}

/// `(C(u), S(u))` with kernels `cos(πt²/2)`, `sin(πt²/2)`.
pub fn fresnel_quadrature(u: f64) -> (f64, f64) {
    let half_pi = 0.5 * std::f64::consts::PI;
    let c = integrate(&|t| (half_pi * t * t).cos(), 0.0, u, 1e-14);
    let s = integrate(&|t| (half_pi * t * t).sin(), 0.0, u, 1e-14);
    (c, s)
}

/// Uniform points in the disc `|z| <= radius`, reproducible per seed.
pub fn disc_points(count: usize, radius: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut uniform = move || (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    (0..count)
        .map(|_| {
            let r = radius * uniform().sqrt();
            let phi = 2.0 * std::f64::consts::PI * uniform();
            Complex64::from_polar(r, phi)
        })
        .collect()
}

/// `|a - b| / |b|`, or the absolute difference when `b` is tiny.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Maximum of `f` on `[lo, hi]` by a dense scan refined with golden-section
/// search; returns `(argmax, max)`.
pub fn brute_force_maximum(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let n = 20_000;
    let h = (hi - lo) / n as f64;
    let k = (0..=n)
        .max_by(|&i, &j| f(lo + i as f64 * h).total_cmp(&f(lo + j as f64 * h)))
        .unwrap();
    let (mut a, mut b) = (lo + (k.max(1) - 1) as f64 * h, lo + (k + 1).min(n) as f64 * h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    while b - a > 1e-13 {
        let (c, d) = (b - g * (b - a), a + g * (b - a));
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
