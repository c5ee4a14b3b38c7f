use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero-momentum: {0} is undefined for a particle at rest")]
    ZeroMomentum(&'static str),

    #[error("dimension error: cannot convert {from} to {to}")]
    Dimension { from: String, to: String },

    #[error("unit parse error: {0}")]
    UnitParse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite input to {0}")]
    NonFinite(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("evanescent-order: sin(theta) = {sine} for order {order} lies outside [-1, 1]")]
    EvanescentOrder { order: i64, sine: f64 },

    #[error("no oscillation on axis (y = 0)")]
    NoOscillationOnAxis,

    #[error("below-threshold order {order}: peak momentum {momentum} is not positive")]
    BelowThreshold { order: i64, momentum: f64 },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("under-resolved: sigma {sigma} is smaller than two grid spacings ({spacing})")]
    UnderResolved { sigma: f64, spacing: f64 },

    #[error("momentum window: state needs |k| up to {required}, grid resolves {available}")]
    MomentumWindow { required: f64, available: f64 },

    #[error("featureless series: no detectable peaks")]
    Featureless,

    #[error("sampling error: {0}")]
    Sampling(String),

    #[error("insufficient oscillations: found {found} midline crossings, need at least 4")]
    InsufficientOscillations { found: usize },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("invalid override `{key}`: {reason}")]
    InvalidOverride { key: String, reason: String },

    #[error("scenario `{scenario}`: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    pub(crate) fn in_scenario(self, scenario: &str) -> Self {
        Error::Scenario {
            scenario: scenario.to_owned(),
            source: Box::new(self),
        }
    }
}
