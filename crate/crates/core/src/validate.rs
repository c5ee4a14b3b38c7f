//! Analytic-versus-numeric cross checks behind `slitwave validate`.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::analytic::{
    space_slit_maximum_position, time_slit_maximum_position, time_slit_period, SpaceSlitConfig, TimeSlitConfig,
};
use crate::error::{Error, Result};
use crate::propagator::{components, grid_for, make_initial_state, FreeEvolver, Grid1D, InitialStateSpec};
use crate::scenarios::{builtin, run_scenario, ExperimentSpec, NumericSpec, ObservationSpec};
use crate::units::{derived_kinematics, Energy, Length, Particle, Time};

/// Grid points forced by [`ValidateOptions::coarse`].
pub const COARSE_GRID_POINTS: usize = 4096;

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    /// Replace every automatic grid by one with [`COARSE_GRID_POINTS`]
    /// points over the same extent. The checks are then expected to fail.
    pub coarse: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Measured discrepancy, NaN when the check could not be evaluated.
    pub measured: f64,
    pub threshold: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<28} measured {:<12.4e} limit {:<10.3e} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.threshold,
                c.detail
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// Outcome of a measurement: `(value, detail)`.
type Measured = Result<(f64, String)>;

fn check(name: &str, threshold: f64, measured: Measured) -> Check {
    match measured {
        Ok((value, detail)) => Check {
            name: name.into(),
            passed: value <= threshold,
            measured: value,
            threshold,
            detail,
        },
        Err(e) => failed(name, threshold, &e),
    }
}

fn failed(name: &str, threshold: f64, error: &Error) -> Check {
    Check {
        name: name.into(),
        passed: false,
        measured: f64::NAN,
        threshold,
        detail: error.to_string(),
    }
}

fn grid(spec: &InitialStateSpec, t_max: Time, opts: ValidateOptions) -> Result<Grid1D> {
    let g = grid_for(spec, t_max)?;
    if opts.coarse {
        Grid1D::new(COARSE_GRID_POINTS, g.x_min(), g.x_max())
    } else {
        Ok(g)
    }
}

fn electron(ev: f64) -> Particle {
    Particle::electron(Energy::ev(ev)).expect("positive energy")
}

fn fig2_state(sigma_fraction: f64) -> Result<(InitialStateSpec, Particle, TimeSlitConfig)> {
    let particle = electron(0.3);
    let slits = TimeSlitConfig::symmetric(Time::fs(120.0))?;
    let a = particle.momentum().internal() * slits.delay().internal() / particle.mass();
    let spec = InitialStateSpec::TimeDoubleSlit {
        slits,
        sigma: Length::from_internal(sigma_fraction * a),
        particle,
    };
    Ok((spec, particle, slits))
}

fn uniform(rng: &mut ChaCha20Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Largest norm drift and semigroup defect over `cases` random time pairs.
fn unitarity_and_semigroup(opts: ValidateOptions, cases: usize) -> Result<(f64, f64)> {
    let (spec, particle, _) = fig2_state(0.05)?;
    let t_max = Time::fs(4000.0);
    let g = grid(&spec, t_max, opts)?;
    let field = make_initial_state(&spec, &g)?;
    let evolver = FreeEvolver::new(&g);
    let mut rng = ChaCha20Rng::seed_from_u64(2024);
    let (mut drift, mut defect) = (0.0f64, 0.0f64);
    for _ in 0..cases {
        let t1 = Time::fs(2000.0 * uniform(&mut rng));
        let t2 = Time::fs(2000.0 * uniform(&mut rng));
        let once = evolver.evolve(&field, Time::from_internal(t1.internal() + t2.internal()), &particle)?;
        let twice = evolver.evolve(&evolver.evolve(&field, t1, &particle)?, t2, &particle)?;
        drift = drift.max((once.norm() - field.norm()).abs());
        let d = once
            .amplitudes()
            .iter()
            .zip(twice.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        defect = defect.max(d);
    }
    Ok((drift, defect))
}

/// Relative error of the density standard deviation of one spreading
/// packet against `σ(t) = σ (1 + (t/2mσ²)²)^½`.
fn gaussian_spreading(opts: ValidateOptions) -> Measured {
    let particle = electron(0.3);
    let slits = TimeSlitConfig::new(Time::fs(120.0), 0.0, 1.0)?;
    let sigma = 20.0;
    let spec = InitialStateSpec::TimeDoubleSlit {
        slits,
        sigma: Length::from_internal(sigma),
        particle,
    };
    let t = Time::fs(3000.0);
    let g = grid(&spec, t, opts)?;
    let f = FreeEvolver::new(&g).evolve(&make_initial_state(&spec, &g)?, t, &particle)?;
    let rho = f.density_values();
    let xs: Vec<f64> = g.positions().collect();
    let total: f64 = rho.iter().sum();
    let mean = xs.iter().zip(&rho).map(|(x, r)| x * r).sum::<f64>() / total;
    let var = xs.iter().zip(&rho).map(|(x, r)| (x - mean).powi(2) * r).sum::<f64>() / total;
    let m = particle.mass();
    let expect = sigma * (1.0 + (t.internal() / (2.0 * m * sigma * sigma)).powi(2)).sqrt();
    let err = (var.sqrt() / expect - 1.0).abs();
    Ok((err, format!("sigma(t) {:.6} nm vs {:.6} nm", Length::from_internal(var.sqrt()).to_nm(), Length::from_internal(expect).to_nm())))
}

struct Fig2Outcome {
    exponent: f64,
    period_error: f64,
    detail: String,
}

fn fig2_oracle(opts: ValidateOptions) -> Result<Fig2Outcome> {
    let mut spec = builtin("fig2_time_slit")?;
    let numeric = spec.numeric.get_or_insert(NumericSpec::default_for(&spec.experiment));
    if opts.coarse {
        numeric.grid_points = Some(COARSE_GRID_POINTS);
    }
    let r = run_scenario(&spec)?;
    let (ObservationSpec::TimeTrace { position, start, .. }, ExperimentSpec::TimeSlit { delay, .. }) =
        (&spec.observation, &spec.experiment)
    else {
        unreachable!("fig2 is a time trace behind a time slit");
    };
    let cfg = TimeSlitConfig::symmetric(Time::parse(delay)?)?;
    let particle = electron(0.3);
    let z = Length::parse(position)?;
    let start = Time::parse(start)?;
    let expect = time_slit_period(z, start, &cfg, &particle)?.to_fs();
    let exponent = r.quantity("numeric_period_exponent").unwrap_or(f64::NAN);
    let measured = r.quantity("numeric_period_at_start").unwrap_or(f64::NAN);
    Ok(Fig2Outcome {
        exponent,
        period_error: (measured / expect - 1.0).abs(),
        detail: format!("first period {measured:.3} fs vs {expect:.3} fs, exponent {exponent:.5}"),
    })
}

fn shutter_oracle(opts: ValidateOptions, edge_fraction: f64) -> Result<Vec<(f64, f64)>> {
    let mut spec = builtin("fig1_shutter")?;
    if let ObservationSpec::ShutterRatio {
        t_over_arrival, points, ..
    } = &mut spec.observation
    {
        *t_over_arrival = [1.0, 2.0];
        *points = 201;
    }
    spec.numeric = Some(NumericSpec {
        sigma_fraction: edge_fraction,
        grid_points: opts.coarse.then_some(COARSE_GRID_POINTS),
    });
    let r = run_scenario(&spec)?;
    let numeric = r.numeric.expect("numeric requested");
    Ok(r.analytic.y.iter().copied().zip(numeric.y).collect())
}

fn shutter_deviation(pairs: &[(f64, f64)]) -> f64 {
    pairs.iter().map(|(a, n)| (n / a - 1.0).abs()).fold(0.0, f64::max)
}

/// Parabolic vertex of the maximum of `f` among grid indices in `[lo, hi)`.
fn refined_maximum(xs: &[f64], f: &[f64], lo: f64, hi: f64) -> Option<f64> {
    let a = xs.partition_point(|&x| x < lo);
    let b = xs.partition_point(|&x| x < hi);
    if b <= a + 2 {
        return None;
    }
    let k = (a..b).max_by(|&i, &j| f[i].total_cmp(&f[j]))?;
    if k == 0 || k + 1 >= xs.len() {
        return Some(xs[k]);
    }
    let (l, c, r) = (f[k - 1], f[k], f[k + 1]);
    let denom = l - 2.0 * c + r;
    let shift = if denom != 0.0 { 0.5 * (l - r) / denom } else { 0.0 };
    Some(xs[k] + shift.clamp(-1.0, 1.0) * (xs[1] - xs[0]))
}

/// Worst fringe-maximum error, in grid spacings of the run, for orders
/// `-3..=3` of the envelope-divided numeric pattern.
fn maxima_error(
    spec: &InitialStateSpec,
    particle: &Particle,
    t: Time,
    predicted: &dyn Fn(i64) -> Result<f64>,
    opts: ValidateOptions,
) -> Result<(f64, f64)> {
    let g = grid(spec, t, opts)?;
    let evolver = FreeEvolver::new(&g);
    let parts = components(spec, &g)?
        .iter()
        .map(|p| evolver.evolve(p, t, particle))
        .collect::<Result<Vec<_>>>()?;
    let f: Vec<f64> = parts[0]
        .amplitudes()
        .iter()
        .zip(parts[1].amplitudes())
        .map(|(a, b): (&Complex64, &Complex64)| {
            let single = a.norm_sqr() + b.norm_sqr();
            if single > 0.0 {
                (a + b).norm_sqr() / (2.0 * single)
            } else {
                0.0
            }
        })
        .collect();
    let xs: Vec<f64> = g.positions().collect();
    let half = 0.5 * (predicted(1)? - predicted(0)?).abs();
    let dx = g.spacing().internal();
    let mut worst: f64 = 0.0;
    for n in -3..=3 {
        let y = predicted(n)?;
        let found = refined_maximum(&xs, &f, y - half, y + half)
            .ok_or(Error::Featureless)?;
        worst = worst.max((found - y).abs() / dx);
    }
    Ok((worst, dx))
}

fn delta_limit(errors: &[f64]) -> (f64, String) {
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let last = *errors.last().unwrap_or(&f64::NAN);
    let listing: Vec<String> = errors.iter().map(|e| format!("{e:.3e}")).collect();
    // A sequence that is not strictly decreasing fails regardless of its end.
    let measured = if decreasing { last } else { f64::INFINITY };
    (measured, format!("errors [{}] grid spacings", listing.join(", ")))
}

/// Sigma, as a fraction of the slit separation, for the convergence runs.
pub const SIGMA_FRACTIONS: [f64; 3] = [0.1, 0.05, 0.025];

/// Worst fringe-maximum error, in grid spacings, for each entry of
/// [`SIGMA_FRACTIONS`]: 50 keV electrons behind slits 1 um apart, observed at
/// the arrival time for a screen 1.5 m away.
pub fn space_delta_limit_errors(opts: ValidateOptions) -> Result<Vec<f64>> {
    let particle = electron(50_000.0);
    let cfg = SpaceSlitConfig::symmetric(Length::nm(1000.0))?;
    let t = derived_kinematics(&particle)?.arrival_time(Length::nm(1.5e9));
    let predicted = |n: i64| Ok(space_slit_maximum_position(n, t, &cfg, &particle)?.internal());
    SIGMA_FRACTIONS
        .iter()
        .map(|&frac| {
            let spec = InitialStateSpec::SpaceDoubleSlit {
                slits: cfg,
                sigma: Length::from_internal(frac * cfg.separation().internal()),
            };
            Ok(maxima_error(&spec, &particle, t, &predicted, opts)?.0)
        })
        .collect()
}

/// As [`space_delta_limit_errors`] for 0.3 eV pulses 120 fs apart at 5000 fs.
pub fn time_delta_limit_errors(opts: ValidateOptions) -> Result<Vec<f64>> {
    let t = Time::fs(5000.0);
    SIGMA_FRACTIONS
        .iter()
        .map(|&frac| {
            let (spec, particle, cfg) = fig2_state(frac)?;
            let predicted = |n: i64| Ok(time_slit_maximum_position(n, t, &cfg, &particle)?.internal());
            Ok(maxima_error(&spec, &particle, t, &predicted, opts)?.0)
        })
        .collect()
}

/// Run every check.
pub fn run_validation(opts: ValidateOptions) -> ValidationReport {
    let mut checks = Vec::new();
    match unitarity_and_semigroup(opts, 20) {
        Ok((drift, defect)) => {
            checks.push(check("unitarity", 1e-12, Ok((drift, "20 random times".into()))));
            checks.push(check("semigroup", 1e-12, Ok((defect, "max |psi(t1+t2) - psi(t2)psi(t1)|".into()))));
        }
        Err(e) => {
            checks.push(failed("unitarity", 1e-12, &e));
            checks.push(failed("semigroup", 1e-12, &e));
        }
    }
    checks.push(check("gaussian_spreading", 1e-6, gaussian_spreading(opts)));
    match fig2_oracle(opts) {
        Ok(o) => {
            checks.push(check("fig2_period_exponent", 0.05, Ok(((o.exponent - 2.0).abs(), o.detail.clone()))));
            checks.push(check("fig2_first_period", 0.05, Ok((o.period_error, o.detail))));
        }
        Err(e) => {
            checks.push(failed("fig2_period_exponent", 0.05, &e));
            checks.push(failed("fig2_first_period", 0.05, &e));
        }
    }
    match shutter_oracle(opts, 0.1) {
        Ok(a) => {
            let detail = "max relative deviation over t/T in [1, 2]".to_owned();
            checks.push(check("shutter_current_ratio", 0.02, Ok((shutter_deviation(&a), detail))));
            let halving = shutter_oracle(opts, 0.05).map(|b| {
                let d = a.iter().zip(&b).map(|(x, y)| (x.1 - y.1).abs() / x.0).fold(0.0, f64::max);
                (d, "edge width lambda/10 vs lambda/20".to_owned())
            });
            checks.push(check("shutter_edge_halving", 0.005, halving));
        }
        Err(e) => {
            checks.push(failed("shutter_current_ratio", 0.02, &e));
            checks.push(failed("shutter_edge_halving", 0.005, &e));
        }
    }
    checks.push(check("space_delta_limit", 2.0, space_delta_limit_errors(opts).map(|e| delta_limit(&e))));
    checks.push(check("time_delta_limit", 2.0, time_delta_limit_errors(opts).map(|e| delta_limit(&e))));
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refined_maximum_of_parabola() {
        let xs: Vec<f64> = (0..100).map(|k| k as f64 * 0.1).collect();
        let f: Vec<f64> = xs.iter().map(|x| -(x - 4.234f64).powi(2)).collect();
        let m = refined_maximum(&xs, &f, 3.0, 5.0).unwrap();
        assert!((m - 4.234).abs() < 1e-12);
        assert!(refined_maximum(&xs, &f, 3.0, 3.1).is_none());
    }

    #[test]
    fn delta_limit_requires_decrease() {
        assert_eq!(delta_limit(&[3.0, 2.0, 1.0]).0, 1.0);
        assert!(delta_limit(&[3.0, 4.0, 1.0]).0.is_infinite());
    }

    #[test]
    fn coarse_grid_fails_a_check() {
        let r = unitarity_and_semigroup(ValidateOptions { coarse: true }, 1);
        assert!(matches!(r, Err(Error::MomentumWindow { .. })));
    }

    #[test]
    fn semigroup_on_default_grid() {
        let (drift, defect) = unitarity_and_semigroup(ValidateOptions::default(), 3).unwrap();
        assert!(drift < 1e-12 && defect < 1e-12, "{drift} {defect}");
    }
}
