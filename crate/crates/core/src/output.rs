//! Machine-readable output: CSV with `#` provenance comments, or JSON.
//!
//! Every record embeds the scenario spec it was produced from, so a file can
//! be regenerated with [`OutputRecord::regenerate`].

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::scenarios::{run_scenario, EventHistogram, Quantity, ScenarioResult, ScenarioSpec, RNG_ALGORITHM};
use crate::series::Series;
use crate::units::UnitSystem;

pub const TOOL_NAME: &str = "slitwave";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constant {
    pub name: String,
    pub value: f64,
    pub unit: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameter {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub scenario: String,
    pub spec: ScenarioSpec,
    pub constants: Vec<Constant>,
    pub parameters: Vec<Parameter>,
    pub quantities: Vec<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// One table column; `header` is `name[unit]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub header: String,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputRecord {
    pub meta: Meta,
    /// The abscissa first, then the analytic values, the numeric values when
    /// present, and any further columns on the same abscissa.
    pub columns: Vec<Column>,
    pub histogram: Option<EventHistogram>,
}

fn column(label: String, values: &[f64]) -> Column {
    Column {
        header: label,
        values: values.to_vec(),
    }
}

fn y_column(s: &Series) -> Column {
    column(s.y_axis.header(), &s.y)
}

impl OutputRecord {
    pub fn from_result(result: &ScenarioResult) -> Self {
        let constants = UnitSystem::standard()
            .table()
            .into_iter()
            .map(|(name, value, unit)| Constant {
                name: name.into(),
                value,
                unit: unit.into(),
            })
            .collect();
        let seed = result.spec.events.as_ref().map(|e| e.seed);
        let meta = Meta {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            scenario: result.spec.name.clone(),
            spec: result.spec.clone(),
            constants,
            parameters: result
                .parameters
                .iter()
                .map(|(name, value)| Parameter {
                    name: name.clone(),
                    value: value.clone(),
                })
                .collect(),
            quantities: result.quantities.clone(),
            rng: seed.map(|_| RNG_ALGORITHM.to_owned()),
            seed,
        };
        let a = &result.analytic;
        let mut columns = vec![column(a.x_axis.header(), &a.x), y_column(a)];
        columns.extend(result.numeric.iter().map(y_column));
        columns.extend(result.extra.iter().map(y_column));
        OutputRecord {
            meta,
            columns,
            histogram: result.histogram.clone(),
        }
    }

    pub fn column(&self, header: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.header == header)
    }

    pub fn quantity(&self, name: &str) -> Option<f64> {
        self.meta.quantities.iter().find(|q| q.name == name).map(|q| q.value)
    }

    /// `{"meta": …, "series": {header: [values]}, "histogram": …}` with
    /// the columns in table order.
    pub fn to_json(&self) -> String {
        let mut series = Map::new();
        for c in &self.columns {
            series.insert(c.header.clone(), Value::from(c.values.clone()));
        }
        let mut root = Map::new();
        root.insert("meta".into(), serde_json::to_value(&self.meta).expect("meta serializes"));
        root.insert("series".into(), Value::Object(series));
        if let Some(h) = &self.histogram {
            root.insert("histogram".into(), serde_json::to_value(h).expect("histograms serialize"));
        }
        serde_json::to_string_pretty(&Value::Object(root)).expect("output records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let mut root: Map<String, Value> = serde_json::from_str(text)?;
        let meta = serde_json::from_value(root.remove("meta").ok_or_else(|| Error::config("JSON has no meta"))?)?;
        let series: Map<String, Value> =
            serde_json::from_value(root.remove("series").ok_or_else(|| Error::config("JSON has no series"))?)?;
        let columns = series
            .into_iter()
            .map(|(header, values)| {
                Ok(Column {
                    header,
                    values: serde_json::from_value(values)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let histogram = root.remove("histogram").map(serde_json::from_value).transpose()?;
        Ok(OutputRecord { meta, columns, histogram })
    }

    /// CSV with provenance in `#` comment lines followed by the table.
    /// The histogram, which has its own abscissa, is written by
    /// [`OutputRecord::histogram_csv`].
    pub fn to_csv(&self) -> String {
        let m = &self.meta;
        let mut out = String::new();
        let _ = writeln!(out, "# tool: {} {}", m.tool, m.version);
        let _ = writeln!(out, "# scenario: {}", m.scenario);
        let spec = serde_json::to_string(&m.spec).expect("specs serialize");
        let _ = writeln!(out, "# spec: {spec}");
        for c in &m.constants {
            let _ = writeln!(out, "# constant: {} = {} {}", c.name, c.value, c.unit);
        }
        for p in &m.parameters {
            let _ = writeln!(out, "# param: {} = {}", p.name, p.value);
        }
        for q in &m.quantities {
            let _ = writeln!(out, "# quantity: {} = {} {}", q.name, q.value, q.unit);
        }
        if let Some(rng) = &m.rng {
            let _ = writeln!(out, "# rng: {rng}");
        }
        if let Some(seed) = m.seed {
            let _ = writeln!(out, "# seed: {seed}");
        }
        let headers: Vec<&str> = self.columns.iter().map(|c| c.header.as_str()).collect();
        let _ = writeln!(out, "{}", headers.join(","));
        let rows = self.columns.first().map_or(0, |c| c.values.len());
        for r in 0..rows {
            let row: Vec<String> = self.columns.iter().map(|c| c.values[r].to_string()).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }

    /// Bin edges and counts of the event histogram, if there is one.
    pub fn histogram_csv(&self) -> Option<String> {
        let h = self.histogram.as_ref()?;
        let unit = self
            .columns
            .first()
            .and_then(|c| c.header.rsplit_once('[').map(|(_, u)| u.trim_end_matches(']').to_owned()))
            .unwrap_or_else(|| "1".into());
        let mut out = String::new();
        let _ = writeln!(out, "# scenario: {}", self.meta.scenario);
        let _ = writeln!(out, "# rng: {RNG_ALGORITHM}");
        let _ = writeln!(out, "# seed: {}", h.seed);
        let _ = writeln!(out, "# events: {}", h.total);
        let _ = writeln!(out, "lower[{unit}],upper[{unit}],count[1]");
        for (w, c) in h.edges.windows(2).zip(&h.counts) {
            let _ = writeln!(out, "{},{},{}", w[0], w[1], c);
        }
        Some(out)
    }

    /// Parse a file written by [`OutputRecord::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |line: &str| Error::config(format!("malformed CSV provenance line: {line}"));
        let mut tool = None;
        let mut scenario = None;
        let mut spec = None;
        let mut constants = Vec::new();
        let mut parameters = Vec::new();
        let mut quantities = Vec::new();
        let mut rng = None;
        let mut seed = None;
        let mut lines = text.lines();
        let mut header = None;
        for line in lines.by_ref() {
            let Some(comment) = line.strip_prefix("# ") else {
                header = Some(line);
                break;
            };
            let (key, rest) = comment.split_once(": ").ok_or_else(|| bad(line))?;
            match key {
                "tool" => tool = Some(rest.split_once(' ').ok_or_else(|| bad(line))?),
                "scenario" => scenario = Some(rest.to_owned()),
                "spec" => spec = Some(ScenarioSpec::from_json(rest)?),
                "constant" | "quantity" => {
                    let (name, value) = rest.split_once(" = ").ok_or_else(|| bad(line))?;
                    let (value, unit) = value.split_once(' ').ok_or_else(|| bad(line))?;
                    let value: f64 = value.parse().map_err(|_| bad(line))?;
                    if key == "constant" {
                        constants.push(Constant {
                            name: name.into(),
                            value,
                            unit: unit.into(),
                        });
                    } else {
                        quantities.push(Quantity {
                            name: name.into(),
                            value,
                            unit: unit.into(),
                        });
                    }
                }
                "param" => {
                    let (name, value) = rest.split_once(" = ").ok_or_else(|| bad(line))?;
                    parameters.push(Parameter {
                        name: name.into(),
                        value: value.into(),
                    });
                }
                "rng" => rng = Some(rest.to_owned()),
                "seed" => seed = Some(rest.parse().map_err(|_| bad(line))?),
                _ => return Err(bad(line)),
            }
        }
        let (tool, version) = tool.ok_or_else(|| Error::config("CSV has no tool line"))?;
        let spec = spec.ok_or_else(|| Error::config("CSV has no spec line"))?;
        let header = header.ok_or_else(|| Error::config("CSV has no header row"))?;
        let mut columns: Vec<Column> = header
            .split(',')
            .map(|h| Column {
                header: h.to_owned(),
                values: Vec::new(),
            })
            .collect();
        for (k, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != columns.len() {
                return Err(Error::config(format!("CSV row {} has {} cells", k + 1, cells.len())));
            }
            for (c, cell) in columns.iter_mut().zip(cells) {
                c.values
                    .push(cell.parse().map_err(|_| Error::config(format!("bad number {cell:?}")))?);
            }
        }
        Ok(OutputRecord {
            meta: Meta {
                tool: tool.into(),
                version: version.into(),
                scenario: scenario.unwrap_or_else(|| spec.name.clone()),
                spec,
                constants,
                parameters,
                quantities,
                rng,
                seed,
            },
            columns,
            histogram: None,
        })
    }

    /// Rerun the embedded spec.
    pub fn regenerate(&self) -> Result<OutputRecord> {
        Ok(OutputRecord::from_result(&run_scenario(&self.meta.spec)?))
    }
}
