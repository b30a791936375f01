//! CSV and JSON rendering of reports.
//!
//! CSV: one header row, then one record per constituent or grid point.
//! Floats use scientific notation with 12 significant digits; summary
//! fields are appended to every record so each row is self-contained.
//!
//! JSON:
//!
//! ```text
//! {
//!   "meta":    { "tool", "version", "report", "mode", "omega_perp_abs",
//!                "omega_perp", "omega_par", "omega12", "omega12_bar", "beta",
//!                "length", "edge_guard", "valid_radius", "l_max" },
//!   "summary": { ... },
//!   "records": [ { ... }, ... ]
//! }
//! ```
//!
//! Floats are decimal strings in the shortest form that parses back to the
//! same `f64`; integers and flags are JSON numbers and booleans; missing
//! values are `null`. Every frequency-valued field `x` (normalized, lower gap
//! edge = 1) has a twin `x_abs` in the input units.

use serde_json::{Map, Value as Json};

use crate::cli::config::Format;
use crate::medium::MediumParams;
use crate::spectrum::Mode;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Missing,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Missing, Value::Float)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<Option<String>> for Value {
    fn from(v: Option<String>) -> Self {
        v.map_or(Value::Missing, Value::Text)
    }
}

/// Whether a field is a frequency (and so gets an absolute-unit twin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Frequency,
    Plain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub name: &'static str,
    pub unit: Unit,
}

pub const fn freq(name: &'static str) -> Field {
    Field {
        name,
        unit: Unit::Frequency,
    }
}

pub const fn plain(name: &'static str) -> Field {
    Field {
        name,
        unit: Unit::Plain,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub params: MediumParams,
    pub mode: Option<Mode>,
    pub valid_radius: Option<f64>,
    pub l_max: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: &'static str,
    pub meta: Meta,
    pub columns: Vec<Field>,
    pub rows: Vec<Vec<Value>>,
    pub summary: Vec<(Field, Value)>,
}

fn expand(field: &Field, value: &Value, scale: f64) -> Vec<(String, Value)> {
    let mut out = vec![(field.name.to_string(), value.clone())];
    if field.unit == Unit::Frequency {
        let abs = match value {
            Value::Float(v) => Value::Float(v * scale),
            other => other.clone(),
        };
        out.push((format!("{}_abs", field.name), abs));
    }
    out
}

impl Report {
    fn records(&self) -> Vec<Vec<(String, Value)>> {
        let scale = self.meta.params.scale();
        let summary: Vec<(String, Value)> = self
            .summary
            .iter()
            .flat_map(|(f, v)| expand(f, v, scale))
            .collect();
        self.rows
            .iter()
            .map(|row| {
                let mut rec: Vec<(String, Value)> = self
                    .columns
                    .iter()
                    .zip(row)
                    .flat_map(|(f, v)| expand(f, v, scale))
                    .collect();
                rec.extend(summary.iter().cloned());
                rec
            })
            .collect()
    }

    fn header(&self) -> Vec<String> {
        let scale = self.meta.params.scale();
        self.columns
            .iter()
            .map(|f| expand(f, &Value::Missing, scale))
            .chain(self.summary.iter().map(|(f, v)| expand(f, v, scale)))
            .flatten()
            .map(|(name, _)| name)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for rec in self.records() {
            let cells: Vec<String> = rec.iter().map(|(_, v)| csv_cell(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> Json {
        let scale = self.meta.params.scale();
        let mut root = Map::new();
        root.insert("meta".into(), Json::Object(self.meta_json()));
        let summary: Map<String, Json> = self
            .summary
            .iter()
            .flat_map(|(f, v)| expand(f, v, scale))
            .map(|(k, v)| (k, json_value(&v)))
            .collect();
        root.insert("summary".into(), Json::Object(summary));
        let records: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                Json::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .flat_map(|(f, v)| expand(f, v, scale))
                        .map(|(k, v)| (k, json_value(&v)))
                        .collect(),
                )
            })
            .collect();
        root.insert("records".into(), Json::Array(records));
        Json::Object(root)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value())
            .expect("report values are always serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn meta_json(&self) -> Map<String, Json> {
        let p = &self.meta.params;
        let mut m = Map::new();
        let mut put = |k: &str, v: Value| {
            m.insert(k.to_string(), json_value(&v));
        };
        put("tool", "gapspec".into());
        put("version", env!("CARGO_PKG_VERSION").into());
        put("report", self.kind.into());
        put("mode", self.meta.mode.map(|x| x.label().to_string()).into());
        put("omega_perp_abs", p.scale().into());
        put("omega_perp", p.omega_perp().into());
        put("omega_par", p.omega_par().into());
        put("omega12", p.omega12().into());
        put("omega12_bar", p.omega12_bar().into());
        put("beta", p.beta().into());
        put("length", p.length().into());
        put("edge_guard", p.edge_guard().into());
        put("valid_radius", self.meta.valid_radius.into());
        put("l_max", self.meta.l_max.map_or(Value::Missing, Value::from));
        m
    }
}

pub fn format_float_csv(v: f64) -> String {
    format!("{v:.11e}")
}

/// Shortest decimal text that round-trips to `v`.
pub fn format_float_exact(v: f64) -> String {
    format!("{v:e}")
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Float(x) => format_float_csv(*x),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
        Value::Text(t) => t.clone(),
        Value::Missing => String::new(),
    }
}

fn json_value(v: &Value) -> Json {
    match v {
        Value::Float(x) => Json::String(format_float_exact(*x)),
        Value::Int(i) => Json::from(*i),
        Value::Bool(b) => Json::Bool(*b),
        Value::Text(t) => Json::String(t.clone()),
        Value::Missing => Json::Null,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let params = MediumParams::new(2.0, 2.4, 2.2, 1e-3).unwrap();
        Report {
            kind: "sample",
            meta: Meta {
                params,
                mode: Some(Mode::Exact),
                valid_radius: Some(1e-3),
                l_max: Some(7),
            },
            columns: vec![plain("j"), freq("xi"), plain("note")],
            rows: vec![
                vec![1usize.into(), 1.05.into(), "a,b".into()],
                vec![2usize.into(), Value::Missing, "c".into()],
            ],
            summary: vec![(freq("energy"), 2.1.into())],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "j,xi,xi_abs,note,energy,energy_abs");
        assert_eq!(
            lines[1],
            "1,1.05000000000e0,2.10000000000e0,\"a,b\",2.10000000000e0,4.20000000000e0"
        );
        assert_eq!(lines[2], "2,,,c,2.10000000000e0,4.20000000000e0");
    }

    #[test]
    fn json_floats_round_trip() {
        let v = sample().to_json_value();
        assert_eq!(v["meta"]["mode"], "exact");
        assert_eq!(v["meta"]["l_max"], 7);
        let xi: f64 = v["records"][0]["xi"].as_str().unwrap().parse().unwrap();
        assert_eq!(xi, 1.05);
        assert!(v["records"][1]["xi"].is_null());
        let third = 1.0f64 / 3.0;
        assert_eq!(format_float_exact(third).parse::<f64>().unwrap(), third);
    }
}
