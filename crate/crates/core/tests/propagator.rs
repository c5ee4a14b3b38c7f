use proptest::prelude::*;
use slitwave::analytic::{weighted_slit_momentum_density, SpaceSlitConfig, TimeSlitConfig};
use slitwave::propagator::*;
use slitwave::series::{Axis, Series};
use slitwave::units::{Energy, Length, Momentum, Particle, Time};
use slitwave::Error;

fn electron(ev: f64) -> Particle {
    Particle::electron(Energy::ev(ev)).unwrap()
}

fn time_state(sigma_fraction: f64) -> (InitialStateSpec, Particle) {
    let particle = electron(0.3);
    let slits = TimeSlitConfig::symmetric(Time::fs(120.0)).unwrap();
    let a = particle.momentum().internal() * slits.delay().internal() / particle.mass();
    let spec = InitialStateSpec::TimeDoubleSlit {
        slits,
        sigma: Length::from_internal(sigma_fraction * a),
        particle,
    };
    (spec, particle)
}

fn max_diff(a: &ComplexField, b: &ComplexField) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn unitary_and_semigroup(t1 in 0.0f64..1500.0, t2 in 0.0f64..1500.0) {
        let (spec, particle) = time_state(0.1);
        let grid = grid_for(&spec, Time::fs(3000.0)).unwrap();
        let psi = make_initial_state(&spec, &grid).unwrap();
        let ev = FreeEvolver::new(&grid);
        let once = ev.evolve(&psi, Time::fs(t1 + t2), &particle).unwrap();
        let twice = ev.evolve(&ev.evolve(&psi, Time::fs(t1), &particle).unwrap(), Time::fs(t2), &particle).unwrap();
        prop_assert!((once.norm() - 1.0).abs() < 1e-12);
        prop_assert!(max_diff(&once, &twice) < 1e-12);
    }
}

#[test]
fn symmetric_space_slit_stays_symmetric() {
    let slits = SpaceSlitConfig::symmetric(Length::nm(1000.0)).unwrap();
    let spec = InitialStateSpec::SpaceDoubleSlit {
        slits,
        sigma: Length::nm(50.0),
    };
    let particle = electron(50_000.0);
    let t = Time::fs(1e6);
    let grid = grid_for(&spec, t).unwrap();
    let psi = evolve_free(&make_initial_state(&spec, &grid).unwrap(), t, &particle).unwrap();
    let rho = psi.density_values();
    let xs: Vec<f64> = grid.positions().collect();
    // Mirror about the grid point nearest the origin.
    let mid = xs.iter().position(|x| x.abs() < 0.5 * grid.spacing().internal()).unwrap();
    let top = rho.iter().copied().fold(0.0, f64::max);
    let reach = mid.min(rho.len() - 1 - mid);
    for k in 1..reach {
        assert!((rho[mid + k] - rho[mid - k]).abs() < 1e-10 * top);
    }
    assert!((psi.density().integral() - 1.0).abs() < 1e-9);
}

#[test]
fn compare_identical_series() {
    let s = Series::tabulate(Axis::new("x", "1"), Axis::new("y", "1"), 0.0, 10.0, 1001, |x| Ok((x).cos().powi(2))).unwrap();
    let c = compare_to_analytic(&s, &s).unwrap();
    assert_eq!((c.peak_position_error, c.normalized_rms), (0.0, 0.0));
    let flat = Series::tabulate(Axis::new("x", "1"), Axis::new("y", "1"), 0.0, 10.0, 1001, |_| Ok(0.0)).unwrap();
    assert!(matches!(compare_to_analytic(&flat, &s), Err(Error::Featureless)));
}

#[test]
fn single_slit_is_flat_after_envelope_division() {
    let slits = SpaceSlitConfig::new(Length::nm(1000.0), 0.0, 0.0).unwrap();
    let spec = InitialStateSpec::WeightedDoubleSlit {
        slits,
        sigma: Length::nm(50.0),
    };
    let particle = electron(50_000.0);
    let t = Time::fs(1e7);
    let grid = grid_for(&spec, t).unwrap();
    let ev = FreeEvolver::new(&grid);
    let parts: Vec<ComplexField> = components(&spec, &grid)
        .unwrap()
        .iter()
        .map(|p| ev.evolve(p, t, &particle).unwrap())
        .collect();
    let mut x = Vec::new();
    let mut num = Vec::new();
    let mut ana = Vec::new();
    let m = particle.mass();
    for (k, pos) in grid.positions().enumerate() {
        if pos.abs() > 5e4 {
            continue;
        }
        let (a, b) = (parts[0].amplitudes()[k], parts[1].amplitudes()[k]);
        x.push(pos);
        num.push((a + b).norm_sqr() / (a.norm_sqr() + b.norm_sqr()));
        ana.push(weighted_slit_momentum_density(Momentum::from_internal(m * pos / t.internal()), &slits).value());
    }
    let axis = || Axis::new("y", "1");
    let c = compare_to_analytic(&Series::new(axis(), axis(), x.clone(), num), &Series::new(axis(), axis(), x, ana)).unwrap();
    assert!(c.normalized_rms < 1e-3, "{c:?}");
    assert_eq!(c.peak_position_error, 0.0);
}

#[test]
fn halving_sigma_sharpens_fringes() {
    // The fringe factor of the evolved time double slit against the
    // closed-form pattern, on the closed-form abscissa.
    let t = Time::fs(5000.0);
    let mut errors = Vec::new();
    for frac in [0.1, 0.05, 0.025] {
        let (spec, particle) = time_state(frac);
        let grid = grid_for(&spec, t).unwrap();
        let ev = FreeEvolver::new(&grid);
        let parts: Vec<ComplexField> = components(&spec, &grid)
            .unwrap()
            .iter()
            .map(|p| ev.evolve(p, t, &particle).unwrap())
            .collect();
        let slits = match spec {
            InitialStateSpec::TimeDoubleSlit { slits, .. } => slits,
            _ => unreachable!(),
        };
        let centre = particle.velocity().internal() * t.internal();
        let (mut x, mut num, mut ana) = (Vec::new(), Vec::new(), Vec::new());
        for (k, pos) in grid.positions().enumerate() {
            if (pos - centre).abs() > 150.0 {
                continue;
            }
            let (a, b) = (parts[0].amplitudes()[k], parts[1].amplitudes()[k]);
            x.push(pos);
            num.push((a + b).norm_sqr() / (a.norm_sqr() + b.norm_sqr()));
            let d = slitwave::analytic::time_slit_spacetime_density(Length::from_internal(pos), t, &slits, &particle).unwrap();
            ana.push(d.relative.value());
        }
        let axis = || Axis::new("z", "1");
        let c = compare_to_analytic(&Series::new(axis(), axis(), x.clone(), num), &Series::new(axis(), axis(), x, ana)).unwrap();
        errors.push(c.normalized_rms);
    }
    assert!(errors[0] > errors[1] && errors[1] > errors[2], "{errors:?}");
}

#[test]
fn invalid_states_are_rejected() {
    let slits = SpaceSlitConfig::symmetric(Length::nm(100.0)).unwrap();
    let wide = InitialStateSpec::SpaceDoubleSlit {
        slits,
        sigma: Length::nm(40.0),
    };
    assert!(grid_for(&wide, Time::fs(0.0)).is_err());
    let ok = InitialStateSpec::SpaceDoubleSlit {
        slits,
        sigma: Length::nm(10.0),
    };
    let coarse = Grid1D::new(64, Length::nm(-500.0), Length::nm(500.0)).unwrap();
    assert!(matches!(make_initial_state(&ok, &coarse), Err(Error::UnderResolved { .. })));
    let small = Grid1D::new(4096, Length::nm(-40.0), Length::nm(40.0)).unwrap();
    assert!(matches!(make_initial_state(&ok, &small), Err(Error::Geometry(_))));
}
