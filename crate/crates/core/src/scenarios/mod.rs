//! Named parameter bundles, their evaluation, and single-event sampling.

mod catalog;
mod events;
mod features;
mod run;
mod spec;

pub use catalog::{builtin, catalog};
pub use events::{accumulate_events, ChiSquareTest, EventHistogram, RNG_ALGORITHM};
pub use features::{count_peaks, extract_oscillation_periods, fit_period_growth, HalfPeriod, PeakCount};
pub use run::{run_scenario, Quantity, ScenarioResult};
pub use spec::{
    EventsSpec, ExperimentSpec, NumericSpec, ObservationSpec, ParticleSpec, ScenarioSpec, SCHEMA_VERSION,
};
