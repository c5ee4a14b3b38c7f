use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Schema version written into every spec.
pub const SCHEMA_VERSION: u32 = 1;

/// A named, versioned parameter bundle.
///
/// Every dimensional value is a string with an explicit unit suffix, for
/// example `"0.3eV"`, `"120fs"` or `"1626nm"`. Phases are in radians and
/// slit weights are plain numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub version: u32,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub particle: ParticleSpec,
    pub experiment: ExperimentSpec,
    pub observation: ObservationSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub events: Option<EventsSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    /// Rest energy, e.g. `"510998.95eV/c2"`. Defaults to the electron.
    #[serde(default = "electron_mass")]
    pub mass: String,
    /// Kinetic energy, e.g. `"0.3eV"`.
    pub energy: String,
}

fn electron_mass() -> String {
    format!("{}eV/c2", crate::units::ELECTRON_MASS_EV)
}

impl ParticleSpec {
    pub fn electron(energy: &str) -> Self {
        ParticleSpec {
            mass: electron_mass(),
            energy: energy.to_owned(),
        }
    }
}

fn half() -> f64 {
    0.5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExperimentSpec {
    /// Shutter opened at `t = 0` in front of a plane wave.
    Shutter,
    /// Two slits a distance `separation` apart on the transverse axis.
    SpaceSlit {
        separation: String,
        #[serde(default)]
        phase: f64,
        #[serde(default = "half")]
        alpha: f64,
    },
    /// Two pulses emitted `delay` apart.
    TimeSlit {
        delay: String,
        #[serde(default)]
        phase: f64,
        #[serde(default = "half")]
        alpha: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "observe", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObservationSpec {
    /// Current ratio at `distance` against `t/T`, `T` the classical arrival time.
    ShutterRatio {
        distance: String,
        t_over_arrival: [f64; 2],
        points: usize,
    },
    /// Oscillating density factor at a fixed position over a time window.
    TimeTrace {
        position: String,
        start: String,
        end: String,
        points: usize,
    },
    /// Relative density against kinetic energy.
    EnergySpectrum {
        e_min: String,
        e_max: String,
        points: usize,
        min_prominence: f64,
    },
    /// Screen pattern at the arrival time for `distance`, spanning
    /// `±orders` fringe spacings.
    ScreenPattern {
        distance: String,
        orders: f64,
        points: usize,
    },
    /// Classical wave-front position against time, with spot values at
    /// `probes`.
    Displacement {
        end: String,
        points: usize,
        probes: Vec<String>,
    },
    /// Fringe visibility against the slit weight over `[0, 1]`.
    VisibilitySweep { points: usize },
}

/// Settings for the spectral oracle run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericSpec {
    /// Regularization width in units of the slit separation (double slits)
    /// or of the de Broglie wavelength (shutter edge).
    pub sigma_fraction: f64,
    /// Forces the number of grid points while keeping the automatic extent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
}

impl NumericSpec {
    pub fn default_for(experiment: &ExperimentSpec) -> Self {
        NumericSpec {
            sigma_fraction: match experiment {
                ExperimentSpec::Shutter => 0.1,
                _ => 0.05,
            },
            grid_points: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventsSpec {
    pub count: u64,
    pub seed: u64,
    /// Approximate number of histogram bins; samples are merged in groups.
    #[serde(default = "default_bins")]
    pub bins: usize,
}

fn default_bins() -> usize {
    200
}

impl Default for EventsSpec {
    fn default() -> Self {
        EventsSpec {
            count: 100_000,
            seed: 1,
            bins: default_bins(),
        }
    }
}

impl ScenarioSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ScenarioSpec = serde_json::from_str(text)?;
        if spec.version != SCHEMA_VERSION {
            return Err(Error::config(format!(
                "unsupported spec version {} (expected {SCHEMA_VERSION})",
                spec.version
            )));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scenario specs always serialize")
    }

    /// Apply `key=value` overrides. A key is either a dotted path such as
    /// `experiment.delay` or a field name that occurs exactly once in the
    /// spec, such as `delay`. `numeric=on|off` and `events=on|off` add or
    /// remove the optional sections; setting a field inside a missing
    /// optional section adds it with default values first.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        let mut tree = serde_json::to_value(self)?;
        for item in overrides {
            let item = item.as_ref();
            let (key, value) = item.split_once('=').ok_or_else(|| Error::InvalidOverride {
                key: item.to_owned(),
                reason: "expected key=value".into(),
            })?;
            apply_override(&mut tree, self, key.trim(), value.trim())?;
        }
        let out: ScenarioSpec = serde_json::from_value(tree).map_err(|e| Error::InvalidOverride {
            key: overrides.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(","),
            reason: e.to_string(),
        })?;
        Ok(out)
    }
}

fn invalid(key: &str, reason: impl Into<String>) -> Error {
    Error::InvalidOverride {
        key: key.to_owned(),
        reason: reason.into(),
    }
}

fn optional_default(section: &str, spec: &ScenarioSpec) -> Option<Value> {
    match section {
        "numeric" => serde_json::to_value(NumericSpec::default_for(&spec.experiment)).ok(),
        "events" => serde_json::to_value(EventsSpec::default()).ok(),
        _ => None,
    }
}

fn apply_override(tree: &mut Value, spec: &ScenarioSpec, key: &str, value: &str) -> Result<()> {
    if matches!(key, "numeric" | "events") {
        let root = tree.as_object_mut().expect("spec serializes to an object");
        match value {
            "on" => {
                if !root.contains_key(key) {
                    root.insert(key.to_owned(), optional_default(key, spec).unwrap());
                }
            }
            "off" => {
                root.remove(key);
            }
            _ => return Err(invalid(key, "expected on or off")),
        }
        return Ok(());
    }
    if matches!(key, "version" | "name" | "experiment.kind" | "observation.observe") {
        return Err(invalid(key, "field cannot be overridden"));
    }
    let path: Vec<String> = if key.contains('.') {
        key.split('.').map(str::to_owned).collect()
    } else {
        let mut found = Vec::new();
        let mut with_defaults = tree.clone();
        for section in ["numeric", "events"] {
            if with_defaults.get(section).is_none() {
                with_defaults[section] = optional_default(section, spec).unwrap();
            }
        }
        find_leaf(&with_defaults, key, &mut Vec::new(), &mut found);
        match found.len() {
            1 => found.pop().unwrap(),
            0 => return Err(invalid(key, "no such field")),
            _ => return Err(invalid(key, "ambiguous field name, use a dotted path")),
        }
    };
    if let Some(section) = path.first() {
        if tree.get(section).is_none() {
            if let Some(default) = optional_default(section, spec) {
                tree[section.as_str()] = default;
            }
        }
    }
    let mut node = &mut *tree;
    for (i, part) in path.iter().enumerate() {
        let obj = node.as_object_mut().ok_or_else(|| invalid(key, "path does not name a field"))?;
        let last = i + 1 == path.len();
        if last {
            let current = obj.get(part.as_str());
            let optional_leaf = path.len() == 2 && path[0] == "numeric" && part == "grid_points";
            if current.is_none() && !optional_leaf {
                return Err(invalid(key, "no such field"));
            }
            let parsed = parse_like(current, value).map_err(|r| invalid(key, r))?;
            obj.insert(part.clone(), parsed);
            return Ok(());
        }
        node = obj.get_mut(part.as_str()).ok_or_else(|| invalid(key, "no such field"))?;
    }
    Err(invalid(key, "empty key"))
}

fn find_leaf(node: &Value, key: &str, prefix: &mut Vec<String>, found: &mut Vec<Vec<String>>) {
    if let Some(obj) = node.as_object() {
        for (k, v) in obj {
            prefix.push(k.clone());
            if k == key && !v.is_object() {
                found.push(prefix.clone());
            }
            find_leaf(v, key, prefix, found);
            prefix.pop();
        }
    }
}

/// Parse `value` to the JSON type of the field it replaces.
fn parse_like(current: Option<&Value>, value: &str) -> std::result::Result<Value, String> {
    match current {
        Some(Value::String(_)) => Ok(Value::String(value.to_owned())),
        Some(Value::Number(n)) if n.is_u64() => value
            .parse::<u64>()
            .map(Value::from)
            .map_err(|_| format!("expected a nonnegative integer, got `{value}`")),
        Some(Value::Number(_)) => {
            let v: f64 = value.parse().map_err(|_| format!("expected a plain number, got `{value}`"))?;
            serde_json::Number::from_f64(v)
                .map(Value::Number)
                .ok_or_else(|| "value must be finite".to_owned())
        }
        Some(Value::Array(_)) => {
            let items = value
                .split(',')
                .map(|s| s.trim())
                .filter(|s| !s.is_empty())
                .map(|s| match s.parse::<f64>() {
                    Ok(v) => serde_json::Number::from_f64(v).map(Value::Number).ok_or(()),
                    Err(_) => Ok(Value::String(s.to_owned())),
                })
                .collect::<std::result::Result<Vec<_>, ()>>()
                .map_err(|_| "array items must be finite".to_owned())?;
            Ok(Value::Array(items))
        }
        None => value
            .parse::<u64>()
            .map(Value::from)
            .map_err(|_| format!("expected a nonnegative integer, got `{value}`")),
        Some(other) => Err(format!("cannot override a {} field", type_name(other))),
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}
