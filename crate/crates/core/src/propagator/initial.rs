use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use super::{Bandwidth, ComplexField, Grid1D};
use crate::analytic::{SpaceSlitConfig, TimeSlitConfig};
use crate::error::{Error, Result};
use crate::specfun::erfc;
use crate::units::{Length, Particle, Time};

/// Regularized initial states. Each point slit becomes a Gaussian
/// `exp(-(x - c)²/4σ²)` whose density has standard deviation `σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialStateSpec {
    /// Two slits at `y = ±a/2` on the transverse axis, no carrier.
    SpaceDoubleSlit { slits: SpaceSlitConfig, sigma: Length },
    /// Same geometry with amplitudes `α` and `1 - α`.
    WeightedDoubleSlit { slits: SpaceSlitConfig, sigma: Length },
    /// Two pulses at `z = ±a/2`, `a = p0 τ/m`, sharing the carrier `e^{i p0 z}`.
    TimeDoubleSlit {
        slits: TimeSlitConfig,
        sigma: Length,
        particle: Particle,
    },
    /// Plane wave `e^{i p0 z}` on `z < 0`, switched on over `edge_width`
    /// at `z = 0` and cut off over `tail_width` at `z = -train_length`.
    Shutter {
        particle: Particle,
        edge_width: Length,
        train_length: Length,
        tail_width: Length,
    },
}

struct Lump {
    centre: f64,
    weight: Complex64,
}

impl InitialStateSpec {
    fn carrier(&self) -> f64 {
        match self {
            InitialStateSpec::SpaceDoubleSlit { .. } | InitialStateSpec::WeightedDoubleSlit { .. } => 0.0,
            InitialStateSpec::TimeDoubleSlit { particle, .. } | InitialStateSpec::Shutter { particle, .. } => {
                particle.momentum().internal()
            }
        }
    }

    /// Narrowest feature of the state.
    fn width(&self) -> f64 {
        match self {
            InitialStateSpec::SpaceDoubleSlit { sigma, .. }
            | InitialStateSpec::WeightedDoubleSlit { sigma, .. }
            | InitialStateSpec::TimeDoubleSlit { sigma, .. } => sigma.internal(),
            InitialStateSpec::Shutter { edge_width, .. } => edge_width.internal(),
        }
    }

    fn drift(&self) -> f64 {
        match self {
            InitialStateSpec::TimeDoubleSlit { particle, .. } | InitialStateSpec::Shutter { particle, .. } => {
                particle.velocity().internal()
            }
            _ => 0.0,
        }
    }

    fn mass(&self) -> f64 {
        match self {
            InitialStateSpec::TimeDoubleSlit { particle, .. } | InitialStateSpec::Shutter { particle, .. } => {
                particle.mass()
            }
            _ => 1.0,
        }
    }

    fn lumps(&self) -> Result<Vec<Lump>> {
        let (a, phase, alpha) = match self {
            InitialStateSpec::SpaceDoubleSlit { slits, .. } | InitialStateSpec::WeightedDoubleSlit { slits, .. } => {
                (slits.separation().internal(), slits.phase(), slits.alpha())
            }
            InitialStateSpec::TimeDoubleSlit { slits, particle, .. } => {
                let p0 = particle.momentum().internal();
                if p0 == 0.0 {
                    return Err(Error::ZeroMomentum("pulse separation"));
                }
                (p0 * slits.delay().internal() / particle.mass(), slits.phase(), slits.alpha())
            }
            InitialStateSpec::Shutter { .. } => return Ok(Vec::new()),
        };
        Ok(vec![
            Lump {
                centre: 0.5 * a,
                weight: Complex64::new(alpha, 0.0),
            },
            Lump {
                centre: -0.5 * a,
                weight: Complex64::from_polar(1.0 - alpha, -phase),
            },
        ])
    }

    /// Interval holding the state to within `6σ` of every feature.
    fn support(&self, lumps: &[Lump]) -> (f64, f64) {
        match self {
            InitialStateSpec::Shutter {
                edge_width,
                train_length,
                tail_width,
                ..
            } => (
                -train_length.internal() - 6.0 * tail_width.internal(),
                6.0 * edge_width.internal(),
            ),
            _ => {
                let s = self.width();
                let lo = lumps.iter().map(|l| l.centre).fold(f64::INFINITY, f64::min);
                let hi = lumps.iter().map(|l| l.centre).fold(f64::NEG_INFINITY, f64::max);
                (lo - 6.0 * s, hi + 6.0 * s)
            }
        }
    }

    fn validate(&self) -> Result<Vec<Lump>> {
        let s = self.width();
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::config("regularization width sigma must be > 0"));
        }
        match self {
            InitialStateSpec::Shutter {
                particle,
                train_length,
                tail_width,
                ..
            } => {
                if particle.momentum().internal() == 0.0 {
                    return Err(Error::ZeroMomentum("shutter carrier"));
                }
                let (l, w) = (train_length.internal(), tail_width.internal());
                if !(l.is_finite() && w.is_finite() && w > 0.0 && l > 6.0 * (w + s)) {
                    return Err(Error::config(
                        "shutter train must be longer than six edge widths beyond both edges",
                    ));
                }
                Ok(Vec::new())
            }
            _ => {
                let lumps = self.lumps()?;
                let a = (lumps[0].centre - lumps[1].centre).abs();
                if s >= a / 4.0 {
                    return Err(Error::config(format!(
                        "sigma must be below a/4 so the slits do not overlap (sigma = {s}, a = {a})"
                    )));
                }
                Ok(lumps)
            }
        }
    }
}

fn check_fit(spec: &InitialStateSpec, lumps: &[Lump], grid: &Grid1D) -> Result<()> {
    let sigma = spec.width();
    let h = grid.spacing().internal();
    if sigma < 2.0 * h {
        return Err(Error::UnderResolved { sigma, spacing: h });
    }
    let (lo, hi) = spec.support(lumps);
    if lo < grid.x_min().internal() || hi > grid.x_max().internal() {
        return Err(Error::Geometry(format!(
            "initial state occupies [{lo:.6e}, {hi:.6e}] but the grid spans [{:.6e}, {:.6e}]",
            grid.x_min().internal(),
            grid.x_max().internal()
        )));
    }
    Ok(())
}

fn raw_components(spec: &InitialStateSpec, grid: &Grid1D) -> Result<Vec<Vec<Complex64>>> {
    let lumps = spec.validate()?;
    check_fit(spec, &lumps, grid)?;
    let k0 = spec.carrier();
    let carrier = |x: f64| Complex64::from_polar(1.0, k0 * x);
    if let InitialStateSpec::Shutter {
        edge_width,
        train_length,
        tail_width,
        ..
    } = spec
    {
        let (s, l, w) = (edge_width.internal(), train_length.internal(), tail_width.internal());
        let amps = grid
            .positions()
            .map(|x| {
                let front = 0.5 * erfc(x / (SQRT_2 * s))?;
                let back = 0.5 * erfc(-(x + l) / (SQRT_2 * w))?;
                Ok(carrier(x) * (front * back))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(vec![amps]);
    }
    let sigma = spec.width();
    Ok(lumps
        .iter()
        .map(|lump| {
            grid.positions()
                .map(|x| {
                    let d = x - lump.centre;
                    lump.weight * carrier(x) * (-d * d / (4.0 * sigma * sigma)).exp()
                })
                .collect()
        })
        .collect())
}

fn bandwidth(spec: &InitialStateSpec) -> Bandwidth {
    Bandwidth {
        center: spec.carrier(),
        half_width: 6.0 / spec.width(),
    }
}

/// Normalized initial state on `grid`.
pub fn make_initial_state(spec: &InitialStateSpec, grid: &Grid1D) -> Result<ComplexField> {
    let parts = raw_components(spec, grid)?;
    let mut total = vec![Complex64::new(0.0, 0.0); grid.len()];
    for part in &parts {
        total.iter_mut().zip(part).for_each(|(t, p)| *t += p);
    }
    ComplexField::new(grid.clone(), total)?
        .with_bandwidth(bandwidth(spec))
        .normalized()
}

/// The individual slit contributions of [`make_initial_state`], scaled so
/// that they sum to the normalized state. The shutter has one component.
pub fn components(spec: &InitialStateSpec, grid: &Grid1D) -> Result<Vec<ComplexField>> {
    let norm = make_initial_state(spec, grid)?;
    let parts = raw_components(spec, grid)?;
    let mut total = vec![Complex64::new(0.0, 0.0); grid.len()];
    for part in &parts {
        total.iter_mut().zip(part).for_each(|(t, p)| *t += p);
    }
    let raw_norm = ComplexField::new(grid.clone(), total)?.norm();
    let scale = (norm.norm() / raw_norm).sqrt();
    parts
        .into_iter()
        .map(|p| {
            Ok(ComplexField::new(grid.clone(), p)?
                .with_bandwidth(bandwidth(spec))
                .scaled(scale))
        })
        .collect()
}

/// Grid large enough to evolve `spec` up to `t_max` without wrap-around
/// reaching the state, and fine enough to resolve it.
///
/// Beyond the initial support the grid extends by eight spread widths
/// `σ(t) = σ (1 + (t/2mσ²)²)^½` on both sides plus the drift `v0 t` in the
/// direction of motion. For the shutter the drift margin is doubled, since
/// the shadow tail of the edge decays only algebraically. The spacing is at
/// most `σ/4`, `λ_B/16` and `π/(|p0| + 6/σ)`.
pub fn grid_for(spec: &InitialStateSpec, t_max: Time) -> Result<Grid1D> {
    let lumps = spec.validate()?;
    let t = t_max.internal();
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain("t_max must be >= 0"));
    }
    let m = spec.mass();
    let spread = |s: f64| s * (1.0 + (t / (2.0 * m * s * s)).powi(2)).sqrt();
    let (lo, hi) = spec.support(&lumps);
    let v = spec.drift();
    let (left, right) = match spec {
        InitialStateSpec::Shutter {
            tail_width, edge_width, ..
        } => {
            let fresnel = (t / m).sqrt();
            (
                8.0 * spread(tail_width.internal()),
                2.0 * v * t + 16.0 * fresnel + 8.0 * edge_width.internal(),
            )
        }
        _ => {
            let w = 8.0 * spread(spec.width());
            (w + (-v * t).max(0.0), w + (v * t).max(0.0))
        }
    };
    let sigma = spec.width();
    let k0 = spec.carrier().abs();
    let mut h = (sigma / 4.0).min(std::f64::consts::PI / (k0 + 6.0 / sigma));
    if k0 > 0.0 {
        h = h.min(2.0 * std::f64::consts::PI / k0 / 16.0);
    }
    Grid1D::covering(
        Length::from_internal(lo - left),
        Length::from_internal(hi + right),
        Length::from_internal(h),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagator::FreeEvolver;
    use crate::units::Energy;

    fn time_spec(alpha: f64, sigma_frac: f64) -> InitialStateSpec {
        let particle = Particle::electron(Energy::ev(0.3)).unwrap();
        let slits = TimeSlitConfig::new(Time::fs(120.0), 0.0, alpha).unwrap();
        let a = particle.momentum().internal() * slits.delay().internal() / particle.mass();
        InitialStateSpec::TimeDoubleSlit {
            slits,
            sigma: Length::from_internal(a * sigma_frac),
            particle,
        }
    }

    #[test]
    fn equal_humps_with_unit_norm() {
        let spec = time_spec(0.5, 1.0 / 20.0);
        let grid = grid_for(&spec, Time::fs(0.0)).unwrap();
        let f = make_initial_state(&spec, &grid).unwrap();
        assert!((f.norm() - 1.0).abs() < 1e-12);
        let parts = components(&spec, &grid).unwrap();
        assert_eq!(parts.len(), 2);
        assert!((parts[0].norm() - parts[1].norm()).abs() < 1e-12);
        assert!((parts[0].norm() - 0.5).abs() < 1e-9);
        let sum = parts[0].superpose(&parts[1]).unwrap();
        for (a, b) in sum.amplitudes().iter().zip(f.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn single_slit_limit() {
        let spec = time_spec(0.0, 1.0 / 20.0);
        let grid = grid_for(&spec, Time::fs(0.0)).unwrap();
        let parts = components(&spec, &grid).unwrap();
        assert_eq!(parts[0].norm(), 0.0);
        assert!((parts[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_overlap_underresolution_and_geometry() {
        let spec = time_spec(0.5, 0.3);
        assert!(matches!(grid_for(&spec, Time::fs(0.0)), Err(Error::InvalidConfig(_))));

        let spec = time_spec(0.5, 1.0 / 20.0);
        let coarse = Grid1D::new(64, Length::nm(-500.0), Length::nm(500.0)).unwrap();
        assert!(matches!(make_initial_state(&spec, &coarse), Err(Error::UnderResolved { .. })));

        let narrow = Grid1D::new(4096, Length::nm(-10.0), Length::nm(10.0)).unwrap();
        assert!(matches!(make_initial_state(&spec, &narrow), Err(Error::Geometry(_))));
    }

    #[test]
    fn momentum_modulation_of_the_double_pulse() {
        let spec = time_spec(0.5, 1.0 / 40.0);
        let InitialStateSpec::TimeDoubleSlit { slits, particle, .. } = spec else {
            unreachable!()
        };
        let grid = grid_for(&spec, Time::fs(0.0)).unwrap();
        let f = make_initial_state(&spec, &grid).unwrap();
        let rho = FreeEvolver::new(&grid).momentum_density(&f).unwrap();
        let unit = crate::units::Momentum::from_internal(1.0)
            .value_in(crate::units::Unit::MomentumEvFsPerNm)
            .unwrap();
        // Divide out the Gaussian envelope centred on p0 and compare.
        let sigma = spec.width();
        let p0 = particle.momentum().internal();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (p, r) in rho.iter() {
            let k = p / unit;
            if (k - p0).abs() > 1.0 / sigma {
                continue;
            }
            let envelope = (-2.0 * sigma * sigma * (k - p0).powi(2)).exp();
            let expect = crate::analytic::time_slit_momentum_density(
                crate::units::Momentum::from_internal(k),
                &slits,
                &particle,
            )
            .value();
            if expect > 0.5 {
                let ratio = r / (envelope * expect);
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
        }
        let worst = hi / lo - 1.0;
        assert!(worst < 1e-9, "{worst}");
    }

    #[test]
    fn shutter_plateau_and_edges() {
        let particle = Particle::electron(Energy::ev(0.3)).unwrap();
        let spec = InitialStateSpec::Shutter {
            particle,
            edge_width: Length::from_internal(0.8),
            train_length: Length::from_internal(2000.0),
            tail_width: Length::from_internal(100.0),
        };
        let grid = grid_for(&spec, Time::from_internal(100.0)).unwrap();
        let f = make_initial_state(&spec, &grid).unwrap();
        assert!((f.norm() - 1.0).abs() < 1e-12);
        let x: Vec<f64> = grid.positions().collect();
        let rho = f.density_values();
        let at = |z: f64| rho[x.iter().position(|&v| v >= z).unwrap()];
        assert!((at(-1000.0) * 2000.0 - 1.0).abs() < 0.05);
        assert!((at(-1200.0) / at(-800.0) - 1.0).abs() < 1e-12);
        assert!(at(50.0) < 1e-20);
        let half = at(0.0) / at(-1000.0);
        assert!((half - 0.25).abs() < 0.05);
    }
}
