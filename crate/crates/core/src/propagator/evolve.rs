use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{ComplexField, Grid1D};
use crate::error::{Error, Result};
use crate::series::{Axis, Series};
use crate::units::{Length, Momentum, Particle, Time, Unit};

/// Cached forward and inverse transforms for one grid size.
#[derive(Clone)]
pub struct FreeEvolver {
    grid: Grid1D,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FreeEvolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FreeEvolver").field("grid", &self.grid).finish_non_exhaustive()
    }
}

/// Evenly spaced observation times.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformTimes {
    pub start: Time,
    pub step: Time,
    pub count: usize,
}

impl UniformTimes {
    /// `count` times from `start` to `end` inclusive.
    pub fn spanning(start: Time, end: Time, count: usize) -> Result<Self> {
        if count < 2 || end.internal() <= start.internal() {
            return Err(Error::config("a time range needs end > start and at least two samples"));
        }
        Ok(UniformTimes {
            start,
            step: Time::from_internal((end.internal() - start.internal()) / (count - 1) as f64),
            count,
        })
    }

    pub fn get(&self, j: usize) -> Time {
        Time::from_internal(self.start.internal() + self.step.internal() * j as f64)
    }
}

/// Wave function and its spatial derivative at one point, over time.
#[derive(Clone, Debug, PartialEq)]
pub struct PointTrace {
    pub position: Length,
    pub times: UniformTimes,
    pub psi: Vec<Complex64>,
    pub dpsi: Vec<Complex64>,
}

impl PointTrace {
    pub fn times_fs(&self) -> Vec<f64> {
        (0..self.times.count).map(|j| self.times.get(j).to_fs()).collect()
    }

    /// `|ψ|²` in internal units.
    pub fn density(&self) -> Vec<f64> {
        self.psi.iter().map(|p| p.norm_sqr()).collect()
    }

    /// `j = (ħ/m) Im(ψ* ∂ψ)` in internal units.
    pub fn current(&self, particle: &Particle) -> Vec<f64> {
        self.psi
            .iter()
            .zip(&self.dpsi)
            .map(|(p, d)| (p.conj() * d).im / particle.mass())
            .collect()
    }
}

impl FreeEvolver {
    pub fn new(grid: &Grid1D) -> Self {
        let mut planner = FftPlanner::new();
        FreeEvolver {
            grid: grid.clone(),
            wavenumbers: grid.wavenumbers(),
            forward: planner.plan_fft_forward(grid.len()),
            inverse: planner.plan_fft_inverse(grid.len()),
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    fn check_grid(&self, field: &ComplexField) -> Result<()> {
        if field.grid() != &self.grid {
            return Err(Error::config("field grid differs from the evolver grid"));
        }
        if let Some(band) = field.bandwidth() {
            let available = self.grid.max_wavenumber();
            if band.required() > available {
                return Err(Error::MomentumWindow {
                    required: band.required(),
                    available,
                });
            }
        }
        Ok(())
    }

    /// Unnormalized discrete transform `Σ_j ψ_j e^{-2πi jk/n}`.
    pub fn spectrum(&self, field: &ComplexField) -> Vec<Complex64> {
        let mut buf = field.amplitudes().to_vec();
        self.forward.process(&mut buf);
        buf
    }

    fn synthesize(&self, mut spectrum: Vec<Complex64>) -> Vec<Complex64> {
        self.inverse.process(&mut spectrum);
        let scale = 1.0 / self.grid.len() as f64;
        spectrum.iter_mut().for_each(|v| *v *= scale);
        spectrum
    }

    /// Free evolution by `t ≥ 0` in one step.
    pub fn evolve(&self, field: &ComplexField, t: Time, particle: &Particle) -> Result<ComplexField> {
        let t = t.internal();
        if !t.is_finite() || t < 0.0 {
            return Err(Error::domain(format!("evolution time must be >= 0, got {t}")));
        }
        self.check_grid(field)?;
        if t == 0.0 {
            return Ok(field.clone());
        }
        let mut spec = self.spectrum(field);
        let c = -t / (2.0 * particle.mass());
        for (v, &k) in spec.iter_mut().zip(&self.wavenumbers) {
            *v *= Complex64::from_polar(1.0, c * k * k);
        }
        field.with_amplitudes(self.synthesize(spec))
    }

    /// Spectral derivative `∂ψ/∂x`.
    pub fn gradient(&self, field: &ComplexField) -> Result<ComplexField> {
        self.check_grid(field)?;
        let mut spec = self.spectrum(field);
        for (v, &k) in spec.iter_mut().zip(&self.wavenumbers) {
            *v *= Complex64::new(0.0, k);
        }
        ComplexField::new(self.grid.clone(), self.synthesize(spec))
    }

    /// Probability current `(ħ/m) Im(ψ* ∂ψ/∂x)` in fs⁻¹ against position in nm.
    pub fn probability_current(&self, field: &ComplexField, particle: &Particle) -> Result<Series> {
        let grad = self.gradient(field)?;
        let per_fs = 1.0 / Time::from_internal(1.0).to_fs();
        let j = field
            .amplitudes()
            .iter()
            .zip(grad.amplitudes())
            .map(|(p, d)| (p.conj() * d).im / particle.mass() * per_fs)
            .collect();
        Ok(Series::new(
            Axis::new("x", "nm"),
            Axis::new("current", "1/fs"),
            self.grid.positions().map(|x| Length::from_internal(x).to_nm()).collect(),
            j,
        ))
    }

    /// `|ψ̃(p)|²` with `∫|ψ̃|² dp = norm`, ordered by increasing momentum.
    pub fn momentum_density(&self, field: &ComplexField) -> Result<Series> {
        self.check_grid(field)?;
        let spec = self.spectrum(field);
        let n = self.grid.len();
        let dx = self.grid.spacing().internal();
        let scale = dx * dx / (2.0 * std::f64::consts::PI);
        let per_unit = 1.0 / Momentum::from_internal(1.0).value_in(Unit::MomentumEvFsPerNm)?;
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left(n / 2);
        let p = order
            .iter()
            .map(|&j| Momentum::from_internal(self.wavenumbers[j]).value_in(Unit::MomentumEvFsPerNm))
            .collect::<Result<Vec<_>>>()?;
        let rho = order.iter().map(|&j| spec[j].norm_sqr() * scale * per_unit).collect();
        Ok(Series::new(
            Axis::new("p", "eV*fs/nm"),
            Axis::new("momentum_density", "nm/(eV*fs)"),
            p,
            rho,
        ))
    }

    /// `ψ(z, t)` and `∂ψ/∂z(z, t)` of the evolved field at one point for a
    /// uniform set of times, by direct summation over the spectrum.
    ///
    /// Costs one pass over the spectrum per time sample instead of a full
    /// transform per sample.
    pub fn trace(
        &self,
        field: &ComplexField,
        z: Length,
        times: UniformTimes,
        particle: &Particle,
    ) -> Result<PointTrace> {
        self.check_grid(field)?;
        if times.start.internal() < 0.0 || !times.start.internal().is_finite() {
            return Err(Error::domain("trace times must be >= 0"));
        }
        let n = self.grid.len() as f64;
        let offset = z.internal() - self.grid.x_min().internal();
        let spec = self.spectrum(field);
        let coeff: Vec<Complex64> = spec
            .iter()
            .zip(&self.wavenumbers)
            .map(|(v, &k)| v * Complex64::from_polar(1.0 / n, k * offset))
            .collect();
        let c = -1.0 / (2.0 * particle.mass());
        let step: Vec<Complex64> = self
            .wavenumbers
            .iter()
            .map(|&k| Complex64::from_polar(1.0, c * k * k * times.step.internal()))
            .collect();

        // Restart the phase recurrence from exact values periodically so
        // rounding does not accumulate.
        const RESYNC: usize = 64;
        let mut phase = vec![Complex64::new(0.0, 0.0); coeff.len()];
        let mut psi = Vec::with_capacity(times.count);
        let mut dpsi = Vec::with_capacity(times.count);
        for j in 0..times.count {
            if j % RESYNC == 0 {
                let t = times.get(j).internal();
                for (ph, &k) in phase.iter_mut().zip(&self.wavenumbers) {
                    *ph = Complex64::from_polar(1.0, c * k * k * t);
                }
            } else {
                phase.iter_mut().zip(&step).for_each(|(ph, s)| *ph *= s);
            }
            let mut v = Complex64::new(0.0, 0.0);
            let mut d = Complex64::new(0.0, 0.0);
            for ((a, ph), &k) in coeff.iter().zip(&phase).zip(&self.wavenumbers) {
                let term = a * ph;
                v += term;
                d += term * k;
            }
            psi.push(v);
            dpsi.push(Complex64::new(-d.im, d.re));
        }
        Ok(PointTrace {
            position: z,
            times,
            psi,
            dpsi,
        })
    }
}

/// One-step free evolution of `field` by `t`.
pub fn evolve_free(field: &ComplexField, t: Time, particle: &Particle) -> Result<ComplexField> {
    FreeEvolver::new(field.grid()).evolve(field, t, particle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::Bandwidth;
    use crate::units::Energy;

    fn packet(sigma: f64, k0: f64) -> (Grid1D, ComplexField) {
        let g = Grid1D::new(1024, Length::from_internal(-200.0), Length::from_internal(200.0)).unwrap();
        let amps = g
            .positions()
            .map(|x| Complex64::from_polar((-x * x / (4.0 * sigma * sigma)).exp(), k0 * x))
            .collect();
        let f = ComplexField::new(g.clone(), amps).unwrap().normalized().unwrap();
        (g, f)
    }

    fn electron() -> Particle {
        Particle::electron(Energy::ev(0.3)).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let (_, f) = packet(5.0, 0.5);
        let g = evolve_free(&f, Time::from_internal(0.0), &electron()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn negative_time_is_rejected() {
        let (_, f) = packet(5.0, 0.5);
        assert!(evolve_free(&f, Time::fs(-1.0), &electron()).is_err());
    }

    #[test]
    fn gaussian_spreading() {
        let sigma = 5.0;
        let (_, f) = packet(sigma, 0.0);
        let e = electron();
        let t = 60.0;
        let g = evolve_free(&f, Time::from_internal(t), &e).unwrap();
        let dx = g.grid().spacing().internal();
        let second: f64 = g.grid().positions().zip(g.density_values()).map(|(x, r)| x * x * r).sum::<f64>() * dx;
        let expect = sigma * sigma * (1.0 + (t / (2.0 * e.mass() * sigma * sigma)).powi(2));
        assert!((second / expect - 1.0).abs() < 1e-6, "{second} vs {expect}");
    }

    #[test]
    fn momentum_window_violation() {
        let (_, f) = packet(5.0, 0.5);
        let f = f.with_bandwidth(Bandwidth {
            center: 0.5,
            half_width: 100.0,
        });
        assert!(matches!(
            evolve_free(&f, Time::fs(1.0), &electron()),
            Err(Error::MomentumWindow { .. })
        ));
    }

    #[test]
    fn momentum_density_integrates_to_norm() {
        let (_, f) = packet(5.0, 0.5);
        let ev = FreeEvolver::new(f.grid());
        let s = ev.momentum_density(&f).unwrap();
        let dp = s.x[1] - s.x[0];
        assert!((s.y.iter().sum::<f64>() * dp - 1.0).abs() < 1e-12);
        let peak = s.x[s.y.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0];
        let p0 = Momentum::from_internal(0.5).value_in(Unit::MomentumEvFsPerNm).unwrap();
        assert!((peak - p0).abs() <= dp);
    }

    #[test]
    fn trace_matches_full_evolution() {
        let (g, f) = packet(4.0, 0.8);
        let e = electron();
        let ev = FreeEvolver::new(&g);
        let times = UniformTimes::spanning(Time::from_internal(10.0), Time::from_internal(80.0), 150).unwrap();
        let j0 = 300;
        let z = Length::from_internal(g.positions().nth(j0).unwrap());
        let tr = ev.trace(&f, z, times, &e).unwrap();
        for j in [0, 1, 63, 64, 65, 149] {
            let full = ev.evolve(&f, times.get(j), &e).unwrap();
            let grad = ev.gradient(&full).unwrap();
            assert!((tr.psi[j] - full.amplitudes()[j0]).norm() < 1e-12);
            assert!((tr.dpsi[j] - grad.amplitudes()[j0]).norm() < 1e-12);
        }
    }

    #[test]
    fn plane_wave_current() {
        let g = Grid1D::new(256, Length::from_internal(0.0), Length::from_internal(100.0)).unwrap();
        let k = 2.0 * std::f64::consts::PI * 10.0 / 100.0;
        let amps = g.positions().map(|x| Complex64::from_polar(1.0, k * x)).collect();
        let f = ComplexField::new(g.clone(), amps).unwrap();
        let e = electron();
        let j = FreeEvolver::new(&g).probability_current(&f, &e).unwrap();
        let expect = k / e.mass() / Time::from_internal(1.0).to_fs();
        assert!(j.y.iter().all(|v| (v - expect).abs() < 1e-12 * expect));
    }
}
