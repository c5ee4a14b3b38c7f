use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::events::{accumulate_events, EventHistogram, RNG_ALGORITHM};
use super::features::{count_peaks, extract_oscillation_periods, fit_period_growth};
use super::spec::{ExperimentSpec, NumericSpec, ObservationSpec, ParticleSpec, ScenarioSpec};
use crate::analytic::{
    classical_displacement, energy_peak_spacing, fringe_visibility, shutter_current_ratio, shutter_first_maximum,
    space_slit_maxima_angles, space_slit_maximum_position, space_slit_momentum_density, space_slit_period,
    space_slit_spacetime_density, time_slit_maximum_position, time_slit_momentum_density, time_slit_peak_energies, time_slit_period, time_slit_spacetime_density,
    weighted_slit_momentum_density, SpaceSlitConfig, TimeSlitConfig,
};
use crate::error::{Error, Result};
use crate::propagator::{components, grid_for, make_initial_state, FreeEvolver, Grid1D, InitialStateSpec, UniformTimes};
use crate::series::{find_peaks, linspace, Axis, Series};
use crate::units::{
    convert, derived_kinematics, parse_quantity, Dimension, Energy, Kinematics, Length, Momentum, Particle, Time,
    Unit,
};

/// Spatial extent, in pulse separations, of the grid used for spectra.
const SPECTRUM_PADDING: f64 = 64.0;

/// A named scalar derived by a scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
    pub unit: String,
}

/// Everything a scenario run produces.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioResult {
    /// The spec as run, after overrides.
    pub spec: ScenarioSpec,
    pub analytic: Series,
    /// Oracle values on the analytic abscissa, when `spec.numeric` is set.
    pub numeric: Option<Series>,
    /// Further columns sharing the analytic abscissa.
    pub extra: Vec<Series>,
    pub histogram: Option<EventHistogram>,
    pub quantities: Vec<Quantity>,
    /// Resolved parameters as `(name, value with unit)`.
    pub parameters: Vec<(String, String)>,
}

impl ScenarioResult {
    pub fn quantity(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|q| q.name == name).map(|q| q.value)
    }
}

struct Run {
    particle: Particle,
    quantities: Vec<Quantity>,
    parameters: Vec<(String, String)>,
    extra: Vec<Series>,
}

impl Run {
    fn quantity(&mut self, name: &str, value: f64, unit: &str) {
        self.quantities.push(Quantity {
            name: name.to_owned(),
            value,
            unit: unit.to_owned(),
        });
    }

    fn param(&mut self, name: &str, value: impl std::fmt::Display) {
        self.parameters.push((name.to_owned(), value.to_string()));
    }

    fn kinematics(&self) -> Result<Kinematics> {
        derived_kinematics(&self.particle)
    }
}

fn resolve_particle(spec: &ParticleSpec) -> Result<Particle> {
    let (value, unit) = parse_quantity(&spec.mass)?;
    if unit.dimension() != Dimension::Mass {
        return Err(Error::Dimension {
            from: unit.symbol().into(),
            to: "mass".into(),
        });
    }
    let mass_ev = convert(value, unit, Unit::MassEv)?;
    Particle::with_energy(mass_ev, Energy::parse(&spec.energy)?)
}

fn space_config(experiment: &ExperimentSpec) -> Result<SpaceSlitConfig> {
    match experiment {
        ExperimentSpec::SpaceSlit {
            separation,
            phase,
            alpha,
        } => SpaceSlitConfig::new(Length::parse(separation)?, *phase, *alpha),
        _ => Err(Error::config("this observation needs a space_slit experiment")),
    }
}

fn time_config(experiment: &ExperimentSpec) -> Result<TimeSlitConfig> {
    match experiment {
        ExperimentSpec::TimeSlit { delay, phase, alpha } => TimeSlitConfig::new(Time::parse(delay)?, *phase, *alpha),
        _ => Err(Error::config("this observation needs a time_slit experiment")),
    }
}

fn check_points(points: usize) -> Result<usize> {
    if points < 3 {
        return Err(Error::config("observations need at least 3 points"));
    }
    Ok(points)
}

fn series(x_axis: Axis, y_axis: Axis, x: Vec<f64>, y: Vec<f64>) -> Series {
    Series::new(x_axis, y_axis, x, y)
}

/// Linear interpolation of `(xs, ys)` (ascending `xs`) at `x`.
fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let k = xs.partition_point(|&v| v <= x);
    if k == 0 {
        return ys[0];
    }
    if k >= xs.len() {
        return ys[xs.len() - 1];
    }
    let w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    ys[k - 1] + w * (ys[k] - ys[k - 1])
}

fn forced_grid(auto: Grid1D, numeric: &NumericSpec) -> Result<Grid1D> {
    match numeric.grid_points {
        Some(n) => Grid1D::new(n, auto.x_min(), auto.x_max()),
        None => Ok(auto),
    }
}

fn record_grid(run: &mut Run, grid: &Grid1D) {
    run.param("numeric.grid_points", grid.len());
    run.param("numeric.spacing", format!("{} nm", grid.spacing().to_nm()));
    run.param("numeric.x_min", format!("{} nm", grid.x_min().to_nm()));
    run.param("numeric.x_max", format!("{} nm", grid.x_max().to_nm()));
}

/// `|ψ|² / 2(|ψ₁|² + |ψ₂|²)`: the two-slit density with the single-slit
/// envelope divided out.
fn fringe_factor(a: Complex64, b: Complex64) -> f64 {
    let single = a.norm_sqr() + b.norm_sqr();
    if single > 0.0 {
        (a + b).norm_sqr() / (2.0 * single)
    } else {
        0.0
    }
}

/// Run a scenario. Errors carry the scenario name.
pub fn run_scenario(spec: &ScenarioSpec) -> Result<ScenarioResult> {
    run_inner(spec).map_err(|e| e.in_scenario(&spec.name))
}

fn run_inner(spec: &ScenarioSpec) -> Result<ScenarioResult> {
    let particle = resolve_particle(&spec.particle)?;
    let mut run = Run {
        particle,
        quantities: Vec::new(),
        parameters: Vec::new(),
        extra: Vec::new(),
    };
    run.param("particle.mass", format!("{} eV/c2", particle.mass_ev()));
    run.param("particle.energy", format!("{} eV", particle.energy().to_ev()));
    run.param(
        "particle.momentum",
        format!("{} eV*fs/nm", particle.momentum().value_in(Unit::MomentumEvFsPerNm)?),
    );
    if let Ok(kin) = run.kinematics() {
        run.param("particle.velocity", format!("{} nm/fs", kin.velocity.to_nm_per_fs()));
        run.param("particle.de_broglie", format!("{} nm", kin.de_broglie.to_nm()));
    }

    let numeric = spec.numeric.as_ref();
    let (analytic, numeric_series) = match &spec.observation {
        ObservationSpec::ShutterRatio {
            distance,
            t_over_arrival,
            points,
        } => {
            if !matches!(spec.experiment, ExperimentSpec::Shutter) {
                return Err(Error::config("shutter_ratio needs a shutter experiment"));
            }
            shutter_ratio(&mut run, Length::parse(distance)?, *t_over_arrival, check_points(*points)?, numeric)?
        }
        ObservationSpec::TimeTrace {
            position,
            start,
            end,
            points,
        } => {
            let cfg = time_config(&spec.experiment)?;
            time_trace(
                &mut run,
                &cfg,
                Length::parse(position)?,
                Time::parse(start)?,
                Time::parse(end)?,
                check_points(*points)?,
                numeric,
            )?
        }
        ObservationSpec::EnergySpectrum {
            e_min,
            e_max,
            points,
            min_prominence,
        } => {
            let cfg = time_config(&spec.experiment)?;
            energy_spectrum(
                &mut run,
                &cfg,
                Energy::parse(e_min)?,
                Energy::parse(e_max)?,
                check_points(*points)?,
                *min_prominence,
                numeric,
            )?
        }
        ObservationSpec::ScreenPattern {
            distance,
            orders,
            points,
        } => {
            let cfg = space_config(&spec.experiment)?;
            screen_pattern(&mut run, &cfg, Length::parse(distance)?, *orders, check_points(*points)?, numeric)?
        }
        ObservationSpec::Displacement { end, points, probes } => {
            if numeric.is_some() {
                return Err(Error::config("no numeric oracle for displacement observations"));
            }
            displacement(&mut run, Time::parse(end)?, check_points(*points)?, probes)?
        }
        ObservationSpec::VisibilitySweep { points } => {
            if numeric.is_some() {
                return Err(Error::config("no numeric oracle for visibility sweeps"));
            }
            let cfg = space_config(&spec.experiment)?;
            visibility_sweep(&mut run, &cfg, check_points(*points)?)?
        }
    };

    let histogram = match &spec.events {
        Some(ev) => {
            run.param("events.rng", RNG_ALGORITHM);
            run.param("events.seed", ev.seed);
            if ev.bins == 0 {
                return Err(Error::config("events.bins must be > 0"));
            }
            let fine = accumulate_events(&analytic, ev.count, ev.seed)?;
            let factor = fine.counts.len().div_ceil(ev.bins).max(1);
            let hist = fine.rebin(factor)?;
            event_quantities(&mut run, &analytic, &hist)?;
            Some(hist)
        }
        None => None,
    };

    Ok(ScenarioResult {
        spec: spec.clone(),
        analytic,
        numeric: numeric_series,
        extra: run.extra,
        histogram,
        quantities: run.quantities,
        parameters: run.parameters,
    })
}

fn event_quantities(run: &mut Run, density: &Series, hist: &EventHistogram) -> Result<()> {
    let test = hist.chi_square(density)?;
    run.quantity("events_chi_square", test.statistic, "1");
    run.quantity("events_chi_square_dof", test.dof as f64, "1");
    run.quantity("events_chi_square_p", test.p_value, "1");
    run.quantity("events_l1_distance", hist.l1_distance(density)?, "1");

    // Minima of the source pattern, located like maxima of its mirror image.
    let top = density.max();
    let flipped: Vec<f64> = density.y.iter().map(|v| top - v).collect();
    let expected = find_peaks(&density.x, &flipped, 0.2);
    let found = hist.minima(0.2);
    let worst = expected
        .iter()
        .map(|m| found.iter().map(|f| (f - m.position).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    run.quantity("events_minima_expected", expected.len() as f64, "1");
    run.quantity("events_minima_found", found.len() as f64, "1");
    run.quantity("events_minima_max_offset", worst, &density.x_axis.unit);
    run.quantity("events_bin_width", hist.max_bin_width(), &density.x_axis.unit);
    Ok(())
}

fn shutter_ratio(
    run: &mut Run,
    distance: Length,
    window: [f64; 2],
    points: usize,
    numeric: Option<&NumericSpec>,
) -> Result<(Series, Option<Series>)> {
    let kin = run.kinematics()?;
    let particle = run.particle;
    let [lo, hi] = window;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::config("t_over_arrival must satisfy 0 < start < end"));
    }
    let arrival = kin.arrival_time(distance);
    run.param("observation.distance", format!("{} nm", distance.to_nm()));
    run.quantity("arrival_time", arrival.to_fs(), "fs");

    let x = linspace(lo, hi, points);
    let at = |s: f64| arrival * s;
    let y = x
        .iter()
        .map(|&s| shutter_current_ratio(distance, at(s), &particle))
        .collect::<Result<Vec<_>>>()?;

    run.quantity("ratio_at_arrival", shutter_current_ratio(distance, arrival, &particle)?, "1");
    let (u_max, r_max) = shutter_first_maximum()?;
    run.quantity("first_maximum_ratio", r_max, "1");
    run.quantity("first_maximum_u", u_max, "1");
    // Solve u = (m/πt)^½ (v0 t - Z) for t: a quadratic in (t)^½.
    let m = particle.mass();
    let v0 = kin.velocity.internal();
    let c = (PI / m).sqrt() * u_max;
    let root = (c + (c * c + 4.0 * v0 * distance.internal()).sqrt()) / (2.0 * v0);
    run.quantity("first_maximum_t_over_arrival", root * root / arrival.internal(), "1");

    let analytic = series(Axis::new("t/T", "1"), Axis::new("ratio", "1"), x.clone(), y);
    let numeric = match numeric {
        None => None,
        Some(ns) => {
            let lambda = kin.de_broglie.internal();
            let t_max = at(hi);
            let tail = 40.0 * lambda;
            let train = v0 * t_max.internal() + 16.0 * tail;
            let state = InitialStateSpec::Shutter {
                particle,
                edge_width: Length::from_internal(ns.sigma_fraction * lambda),
                train_length: Length::from_internal(train),
                tail_width: Length::from_internal(tail),
            };
            let grid = forced_grid(grid_for(&state, t_max)?, ns)?;
            record_grid(run, &grid);
            run.param("numeric.edge_width", format!("{} nm", Length::from_internal(ns.sigma_fraction * lambda).to_nm()));
            run.param("numeric.train_length", format!("{} nm", Length::from_internal(train).to_nm()));
            let field = make_initial_state(&state, &grid)?;
            let xs: Vec<f64> = grid.positions().collect();
            let mid = xs.partition_point(|&v| v < -0.5 * train);
            let plateau = field.density_values()[mid];
            let times = UniformTimes::spanning(at(lo), t_max, points)?;
            let trace = FreeEvolver::new(&grid).trace(&field, distance, times, &particle)?;
            let ratio = trace.current(&particle).iter().map(|j| j / (v0 * plateau)).collect();
            Some(series(Axis::new("t/T", "1"), Axis::new("numeric_ratio", "1"), x, ratio))
        }
    };
    Ok((analytic, numeric))
}

fn oscillation_quantities(run: &mut Run, prefix: &str, s: &Series, reference: f64) -> Result<()> {
    let intervals = extract_oscillation_periods(s)?;
    let (p, c) = fit_period_growth(&intervals)?;
    run.quantity(&format!("{prefix}period_exponent"), p, "1");
    run.quantity(&format!("{prefix}period_at_start"), c * reference.powf(p), &s.x_axis.unit);
    run.quantity(&format!("{prefix}first_half_interval"), intervals[0].length(), &s.x_axis.unit);
    run.quantity(&format!("{prefix}first_half_interval_centre"), intervals[0].centre(), &s.x_axis.unit);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn time_trace(
    run: &mut Run,
    cfg: &TimeSlitConfig,
    z: Length,
    start: Time,
    end: Time,
    points: usize,
    numeric: Option<&NumericSpec>,
) -> Result<(Series, Option<Series>)> {
    let particle = run.particle;
    let kin = run.kinematics()?;
    if !(start.internal() > 0.0 && end.internal() > start.internal()) {
        return Err(Error::config("time_trace needs 0 < start < end"));
    }
    run.param("experiment.delay", format!("{} fs", cfg.delay().to_fs()));
    run.param("experiment.pulse_separation", format!("{} nm", Length::from_internal(kin.velocity.internal() * cfg.delay().internal()).to_nm()));
    run.param("observation.position", format!("{} nm", z.to_nm()));

    let t = linspace(start.to_fs(), end.to_fs(), points);
    let mut rel = Vec::with_capacity(points);
    let mut env = Vec::with_capacity(points);
    for &tf in &t {
        let d = time_slit_spacetime_density(z, Time::fs(tf), cfg, &particle)?;
        rel.push(d.relative.value());
        env.push((start.to_fs() / tf).powi(3));
    }
    run.extra.push(series(Axis::new("t", "fs"), Axis::new("envelope", "1"), t.clone(), env));
    let analytic = series(Axis::new("t", "fs"), Axis::new("relative_density", "1"), t.clone(), rel);

    let arrival = kin.arrival_time(z);
    run.quantity("arrival_time", arrival.to_fs(), "fs");
    run.quantity("period_at_arrival", time_slit_period(z, arrival, cfg, &particle)?.to_fs(), "fs");
    run.quantity("period_at_start", time_slit_period(z, start, cfg, &particle)?.to_fs(), "fs");
    run.quantity(
        "comoving_maximum_at_arrival",
        time_slit_maximum_position(0, arrival, cfg, &particle)?.to_nm(),
        "nm",
    );
    oscillation_quantities(run, "analytic_", &analytic, start.to_fs())?;

    let numeric = match numeric {
        None => None,
        Some(ns) => {
            let a = particle.momentum().internal() * cfg.delay().internal() / particle.mass();
            let state = InitialStateSpec::TimeDoubleSlit {
                slits: *cfg,
                sigma: Length::from_internal(ns.sigma_fraction * a),
                particle,
            };
            let grid = forced_grid(grid_for(&state, end)?, ns)?;
            record_grid(run, &grid);
            run.param("numeric.sigma", format!("{} nm", Length::from_internal(ns.sigma_fraction * a).to_nm()));
            let parts = components(&state, &grid)?;
            let evolver = FreeEvolver::new(&grid);
            let times = UniformTimes::spanning(start, end, points)?;
            let traces = parts
                .iter()
                .map(|p| evolver.trace(p, z, times, &particle))
                .collect::<Result<Vec<_>>>()?;
            let f = (0..points)
                .map(|j| fringe_factor(traces[0].psi[j], traces[1].psi[j]))
                .collect();
            let s = series(Axis::new("t", "fs"), Axis::new("numeric_relative_density", "1"), t, f);
            oscillation_quantities(run, "numeric_", &s, start.to_fs())?;
            Some(s)
        }
    };
    Ok((analytic, numeric))
}

#[allow(clippy::too_many_arguments)]
fn energy_spectrum(
    run: &mut Run,
    cfg: &TimeSlitConfig,
    e_min: Energy,
    e_max: Energy,
    points: usize,
    min_prominence: f64,
    numeric: Option<&NumericSpec>,
) -> Result<(Series, Option<Series>)> {
    let particle = run.particle;
    if !(e_min.internal() >= 0.0 && e_max.internal() > e_min.internal()) {
        return Err(Error::config("energy_spectrum needs 0 <= e_min < e_max"));
    }
    run.param("experiment.delay", format!("{} fs", cfg.delay().to_fs()));
    let m = particle.mass();
    let e = linspace(e_min.to_ev(), e_max.to_ev(), points);
    let momentum = |ev: f64| Momentum::from_internal((2.0 * m * Energy::ev(ev).internal()).sqrt());
    let y = e
        .iter()
        .map(|&ev| time_slit_momentum_density(momentum(ev), cfg, &particle).value())
        .collect();
    let analytic = series(Axis::new("E", "eV"), Axis::new("relative_density", "1"), e.clone(), y);

    let spacing = energy_peak_spacing(cfg);
    run.quantity("peak_spacing", spacing.to_ev(), "eV");
    run.quantity("peak_spacing_mev", spacing.value_in(Unit::MilliElectronVolt)?, "meV");
    for n in 0..2 {
        if let Ok(e) = time_slit_peak_energies(n, cfg, &particle) {
            run.quantity(&format!("peak_energy_order_{n}"), e.to_ev(), "eV");
        }
    }
    let peaks = count_peaks(&analytic, min_prominence)?;
    run.quantity("peak_count", peaks.count as f64, "1");
    if let Some(mean) = peaks.mean_spacing() {
        run.quantity("mean_peak_spacing", mean, "eV");
    }

    let numeric = match numeric {
        None => None,
        Some(ns) => {
            let a = particle.momentum().internal() * cfg.delay().internal() / m;
            let sigma = ns.sigma_fraction * a;
            let state = InitialStateSpec::TimeDoubleSlit {
                slits: *cfg,
                sigma: Length::from_internal(sigma),
                particle,
            };
            // The spectrum is sampled at 2π/extent, so pad the spatial grid
            // until each fringe of period 2π/a spans many samples.
            let tight = grid_for(&state, Time::from_internal(0.0))?;
            let half = 0.5 * tight.extent().internal().max(SPECTRUM_PADDING * a);
            let padded = Grid1D::covering(Length::from_internal(-half), Length::from_internal(half), tight.spacing())?;
            let grid = forced_grid(padded, ns)?;
            record_grid(run, &grid);
            let field = make_initial_state(&state, &grid)?;
            let rho = FreeEvolver::new(&grid).momentum_density(&field)?;
            let unit = Momentum::from_internal(1.0).value_in(Unit::MomentumEvFsPerNm)?;
            let p0 = particle.momentum().internal();
            // Divide out the Gaussian envelope of a single pulse.
            let k: Vec<f64> = rho.x.iter().map(|p| p / unit).collect();
            let flat: Vec<f64> = k
                .iter()
                .zip(&rho.y)
                .map(|(&k, &r)| r / (-2.0 * sigma * sigma * (k - p0).powi(2)).exp())
                .collect();
            let v: Vec<f64> = e.iter().map(|&ev| interpolate(&k, &flat, momentum(ev).internal())).collect();
            let peak = v.iter().copied().fold(0.0, f64::max);
            let out = v.iter().map(|x| x / peak).collect();
            Some(series(Axis::new("E", "eV"), Axis::new("numeric_relative_density", "1"), e, out))
        }
    };
    Ok((analytic, numeric))
}

fn screen_pattern(
    run: &mut Run,
    cfg: &SpaceSlitConfig,
    distance: Length,
    orders: f64,
    points: usize,
    numeric: Option<&NumericSpec>,
) -> Result<(Series, Option<Series>)> {
    let particle = run.particle;
    let kin = run.kinematics()?;
    if !(orders > 0.0 && orders.is_finite()) {
        return Err(Error::config("screen_pattern needs orders > 0"));
    }
    let arrival = kin.arrival_time(distance);
    run.param("experiment.separation", format!("{} nm", cfg.separation().to_nm()));
    run.param("observation.distance", format!("{} nm", distance.to_nm()));

    let y0 = space_slit_maximum_position(0, arrival, cfg, &particle)?;
    let y1 = space_slit_maximum_position(1, arrival, cfg, &particle)?;
    let spacing = (y1 - y0).to_nm();
    let y = linspace(-orders * spacing, orders * spacing, points);
    let rel = y
        .iter()
        .map(|&yn| Ok(space_slit_spacetime_density(Length::nm(yn), arrival, cfg, &particle)?.relative.value()))
        .collect::<Result<Vec<_>>>()?;
    let analytic = series(Axis::new("y", "nm"), Axis::new("relative_density", "1"), y.clone(), rel);

    run.quantity("de_broglie_wavelength", kin.de_broglie.value_in(Unit::Picometre)?, "pm");
    run.quantity("arrival_time", arrival.to_fs(), "fs");
    run.quantity("fringe_spacing", spacing, "nm");
    run.quantity("first_order_angle", space_slit_maxima_angles(1, cfg, &particle)?, "rad");
    let shifted = SpaceSlitConfig::new(cfg.separation(), 0.5 * PI, cfg.alpha())?;
    run.quantity("half_pi_phase_shift_angle", space_slit_maxima_angles(0, &shifted, &particle)?, "rad");
    for n in 1..=2i64 {
        let theta = space_slit_maxima_angles(n, cfg, &particle)?;
        let yn = distance * theta.tan();
        let xi = space_slit_period(yn, arrival, cfg, &particle)?;
        run.quantity(&format!("period_at_order_{n}"), xi.to_fs(), "fs");
        run.quantity(&format!("order_{n}_period_times_n_over_arrival"), xi.internal() * n as f64 / arrival.internal(), "1");
    }

    let numeric = match numeric {
        None => None,
        Some(ns) => {
            let sigma = ns.sigma_fraction * cfg.separation().internal();
            let state = InitialStateSpec::SpaceDoubleSlit {
                slits: *cfg,
                sigma: Length::from_internal(sigma),
            };
            let grid = forced_grid(grid_for(&state, arrival)?, ns)?;
            record_grid(run, &grid);
            let evolver = FreeEvolver::new(&grid);
            let parts = components(&state, &grid)?
                .iter()
                .map(|p| evolver.evolve(p, arrival, &particle))
                .collect::<Result<Vec<_>>>()?;
            let xs: Vec<f64> = grid.positions().map(|x| Length::from_internal(x).to_nm()).collect();
            let f: Vec<f64> = parts[0]
                .amplitudes()
                .iter()
                .zip(parts[1].amplitudes())
                .map(|(a, b)| fringe_factor(*a, *b))
                .collect();
            let v = y.iter().map(|&yn| interpolate(&xs, &f, yn)).collect();
            Some(series(Axis::new("y", "nm"), Axis::new("numeric_relative_density", "1"), y, v))
        }
    };
    Ok((analytic, numeric))
}

fn displacement(run: &mut Run, end: Time, points: usize, probes: &[String]) -> Result<(Series, Option<Series>)> {
    let particle = run.particle;
    run.kinematics()?;
    if end.internal().partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::config("displacement needs end > 0"));
    }
    let t = linspace(0.0, end.to_fs(), points);
    let z = t
        .iter()
        .map(|&tf| Ok(classical_displacement(Time::fs(tf), &particle)?.to_nm()))
        .collect::<Result<Vec<_>>>()?;
    for probe in probes {
        let tp = Time::parse(probe)?;
        let zp = classical_displacement(tp, &particle)?;
        let label: String = probe.chars().filter(|c| !c.is_whitespace()).collect();
        run.quantity(&format!("z_at_{label}"), zp.to_nm(), "nm");
    }
    Ok((series(Axis::new("t", "fs"), Axis::new("z", "nm"), t, z), None))
}

fn visibility_sweep(run: &mut Run, cfg: &SpaceSlitConfig, points: usize) -> Result<(Series, Option<Series>)> {
    let alpha = linspace(0.0, 1.0, points);
    let v = alpha.iter().map(|&a| fringe_visibility(a)).collect::<Result<Vec<_>>>()?;
    // Visibility measured from the weighted pattern over one fringe period.
    let a = cfg.separation().internal();
    let scan: Vec<f64> = linspace(0.0, 2.0 * PI / a, 2001).into_iter().chain([PI / a]).collect();
    let mut measured = Vec::with_capacity(points);
    let mut worst: f64 = 0.0;
    for (&al, &expect) in alpha.iter().zip(&v) {
        let c = SpaceSlitConfig::new(cfg.separation(), 0.0, al)?;
        let values: Vec<f64> = scan
            .iter()
            .map(|&p| weighted_slit_momentum_density(Momentum::from_internal(p), &c).value())
            .collect();
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let vis = (max - min) / (max + min);
        worst = worst.max((vis - expect).abs());
        measured.push(vis);
    }
    run.extra.push(series(Axis::new("alpha", "1"), Axis::new("measured_visibility", "1"), alpha.clone(), measured));
    run.quantity("visibility_at_half", fringe_visibility(0.5)?, "1");
    run.quantity("visibility_at_quarter", fringe_visibility(0.25)?, "1");
    run.quantity("visibility_at_zero", fringe_visibility(0.0)?, "1");
    run.quantity("measured_visibility_max_error", worst, "1");
    let equal = SpaceSlitConfig::new(cfg.separation(), 0.0, 0.5)?;
    let reduction = scan
        .iter()
        .map(|&p| {
            let p = Momentum::from_internal(p);
            (weighted_slit_momentum_density(p, &equal).value() - space_slit_momentum_density(p, &equal).value()).abs()
        })
        .fold(0.0, f64::max);
    run.quantity("equal_weight_pattern_deviation", reduction, "1");
    Ok((series(Axis::new("alpha", "1"), Axis::new("visibility", "1"), alpha, v), None))
}
