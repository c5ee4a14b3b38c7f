use super::spec::{EventsSpec, ExperimentSpec, NumericSpec, ObservationSpec, ParticleSpec, ScenarioSpec, SCHEMA_VERSION};
use crate::error::{Error, Result};

fn spec(
    name: &str,
    description: &str,
    energy: &str,
    experiment: ExperimentSpec,
    observation: ObservationSpec,
) -> ScenarioSpec {
    ScenarioSpec {
        version: SCHEMA_VERSION,
        name: name.to_owned(),
        description: description.to_owned(),
        particle: ParticleSpec::electron(energy),
        experiment,
        observation,
        numeric: None,
        events: None,
    }
}

fn time_slit(delay: &str) -> ExperimentSpec {
    ExperimentSpec::TimeSlit {
        delay: delay.to_owned(),
        phase: 0.0,
        alpha: 0.5,
    }
}

/// The builtin scenarios, in listing order.
pub fn catalog() -> Vec<ScenarioSpec> {
    let fig2 = {
        let mut s = spec(
            "fig2_time_slit",
            "Transient density at z = 1626 nm behind a 120 fs time double slit, from the classical arrival time to twice it",
            "0.3eV",
            time_slit("120fs"),
            ObservationSpec::TimeTrace {
                position: "1626nm".into(),
                start: "5000fs".into(),
                end: "10000fs".into(),
                points: 5001,
            },
        );
        s.numeric = Some(NumericSpec::default_for(&s.experiment));
        s
    };
    let tonomura = {
        let mut s = spec(
            "tonomura_space_slit",
            "50 keV electrons through slits 1 um apart, screen at 1.5 m, with single-event build-up",
            "50keV",
            ExperimentSpec::SpaceSlit {
                separation: "1um".into(),
                phase: 0.0,
                alpha: 0.5,
            },
            ObservationSpec::ScreenPattern {
                distance: "1.5m".into(),
                orders: 4.0,
                points: 1601,
            },
        );
        s.events = Some(EventsSpec::default());
        s
    };
    vec![
        spec(
            "fig1_shutter",
            "Current behind a suddenly opened shutter relative to the stationary current, 0.3 eV electrons",
            "0.3eV",
            ExperimentSpec::Shutter,
            ObservationSpec::ShutterRatio {
                distance: "1626nm".into(),
                t_over_arrival: [0.2, 3.0],
                points: 561,
            },
        ),
        fig2,
        spec(
            "lindner_energy_spectrum",
            "Energy spectrum of 20 eV electrons from two attosecond-scale pulses 2 fs apart, 14 eV window",
            "20eV",
            time_slit("2fs"),
            ObservationSpec::EnergySpectrum {
                e_min: "13.5eV".into(),
                e_max: "27.5eV".into(),
                points: 2801,
                min_prominence: 0.5,
            },
        ),
        spec(
            "wollenhaupt_energy_spectrum",
            "Energy spectrum of 0.3 eV electrons from two pulses 96 fs apart",
            "0.3eV",
            time_slit("96fs"),
            ObservationSpec::EnergySpectrum {
                e_min: "0.2eV".into(),
                e_max: "0.4eV".into(),
                points: 2001,
                min_prominence: 0.5,
            },
        ),
        spec(
            "wavefront_displacement",
            "Classical position of the wave front of 0.3 eV electrons against time",
            "0.3eV",
            time_slit("120fs"),
            ObservationSpec::Displacement {
                end: "5000fs".into(),
                points: 501,
                probes: vec!["350fs".into(), "900fs".into(), "5000fs".into()],
            },
        ),
        tonomura,
        spec(
            "complementarity_sweep",
            "Fringe visibility of a weighted double slit against the weight alpha",
            "50keV",
            ExperimentSpec::SpaceSlit {
                separation: "1um".into(),
                phase: 0.0,
                alpha: 0.5,
            },
            ObservationSpec::VisibilitySweep { points: 101 },
        ),
    ]
}

/// Look up a builtin scenario by name.
pub fn builtin(name: &str) -> Result<ScenarioSpec> {
    catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownScenario(name.to_owned()))
}
