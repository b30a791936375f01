//! Flat `key = value` run configuration.
//!
//! ```text
//! # medium, absolute units
//! omega_perp = 2.0
//! omega_par = 2.4
//! omega12 = 2.2
//! beta = 1e-3
//! format = json
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::Result as CoreResult;
use crate::medium::MediumParams;
use crate::spectrum::{Mode, SolverSettings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn label(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("expected csv or json, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    Value {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("cannot read config {path}: {reason}")]
    Io { path: String, reason: String },
}

/// Every setting a run can take. `None` means "not given"; defaults are
/// applied when the configuration is resolved.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub omega_perp: Option<f64>,
    pub omega_par: Option<f64>,
    pub omega12: Option<f64>,
    pub omega12_bar: Option<f64>,
    pub beta: Option<f64>,
    pub length: Option<f64>,
    pub edge_guard: Option<f64>,
    pub n: Option<usize>,
    pub l: Option<usize>,
    pub h: Option<f64>,
    pub mode: Option<Mode>,
    pub h_min: Option<f64>,
    pub h_max: Option<f64>,
    pub points: Option<usize>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<String>,
    pub exact_tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub validity_tolerance: Option<f64>,
    pub threads: Option<usize>,
}

/// Config keys in emission order.
pub const KEYS: &[&str] = &[
    "omega_perp",
    "omega_par",
    "omega12",
    "omega12_bar",
    "beta",
    "length",
    "edge_guard",
    "n",
    "l",
    "h",
    "mode",
    "h_min",
    "h_max",
    "points",
    "omega_min",
    "omega_max",
    "format",
    "output",
    "exact_tol",
    "max_iter",
    "validity_tolerance",
    "threads",
];

fn parse_value<T: FromStr>(line: usize, key: &str, text: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    text.parse().map_err(|e: T::Err| ConfigError::Value {
        line,
        key: key.to_string(),
        reason: e.to_string(),
    })
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen: Vec<&str> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line,
                text: raw.trim().to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            let known =
                KEYS.iter()
                    .find(|k| **k == key)
                    .ok_or_else(|| ConfigError::UnknownKey {
                        line,
                        key: key.to_string(),
                    })?;
            if seen.contains(known) {
                return Err(ConfigError::Duplicate {
                    line,
                    key: key.to_string(),
                });
            }
            seen.push(known);
            cfg.set(line, key, value)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &str) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.to_string(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    fn set(&mut self, line: usize, key: &str, v: &str) -> Result<(), ConfigError> {
        match key {
            "omega_perp" => self.omega_perp = Some(parse_value(line, key, v)?),
            "omega_par" => self.omega_par = Some(parse_value(line, key, v)?),
            "omega12" => self.omega12 = Some(parse_value(line, key, v)?),
            "omega12_bar" => self.omega12_bar = Some(parse_value(line, key, v)?),
            "beta" => self.beta = Some(parse_value(line, key, v)?),
            "length" => self.length = Some(parse_value(line, key, v)?),
            "edge_guard" => self.edge_guard = Some(parse_value(line, key, v)?),
            "n" => self.n = Some(parse_value(line, key, v)?),
            "l" => self.l = Some(parse_value(line, key, v)?),
            "h" => self.h = Some(parse_value(line, key, v)?),
            "mode" => {
                self.mode = Some(Mode::parse(v).ok_or_else(|| ConfigError::Value {
                    line,
                    key: key.to_string(),
                    reason: format!("expected linear, corrected or exact, got `{v}`"),
                })?)
            }
            "h_min" => self.h_min = Some(parse_value(line, key, v)?),
            "h_max" => self.h_max = Some(parse_value(line, key, v)?),
            "points" => self.points = Some(parse_value(line, key, v)?),
            "omega_min" => self.omega_min = Some(parse_value(line, key, v)?),
            "omega_max" => self.omega_max = Some(parse_value(line, key, v)?),
            "format" => self.format = Some(parse_value(line, key, v)?),
            "output" => self.output = Some(v.to_string()),
            "exact_tol" => self.exact_tol = Some(parse_value(line, key, v)?),
            "max_iter" => self.max_iter = Some(parse_value(line, key, v)?),
            "validity_tolerance" => self.validity_tolerance = Some(parse_value(line, key, v)?),
            "threads" => self.threads = Some(parse_value(line, key, v)?),
            _ => unreachable!("key list and setter disagree on `{key}`"),
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Option<String> {
        // `{:?}` gives the shortest text that parses back to the same f64
        fn f(v: Option<f64>) -> Option<String> {
            v.map(|x| format!("{x:?}"))
        }
        fn u(v: Option<usize>) -> Option<String> {
            v.map(|x| x.to_string())
        }
        match key {
            "omega_perp" => f(self.omega_perp),
            "omega_par" => f(self.omega_par),
            "omega12" => f(self.omega12),
            "omega12_bar" => f(self.omega12_bar),
            "beta" => f(self.beta),
            "length" => f(self.length),
            "edge_guard" => f(self.edge_guard),
            "n" => u(self.n),
            "l" => u(self.l),
            "h" => f(self.h),
            "mode" => self.mode.map(|m| m.label().to_string()),
            "h_min" => f(self.h_min),
            "h_max" => f(self.h_max),
            "points" => u(self.points),
            "omega_min" => f(self.omega_min),
            "omega_max" => f(self.omega_max),
            "format" => self.format.map(|x| x.label().to_string()),
            "output" => self.output.clone(),
            "exact_tol" => f(self.exact_tol),
            "max_iter" => u(self.max_iter),
            "validity_tolerance" => f(self.validity_tolerance),
            "threads" => u(self.threads),
            _ => None,
        }
    }

    /// Renders the set keys in the file format; `parse(emit())` is identity.
    pub fn emit(&self) -> String {
        KEYS.iter()
            .filter_map(|k| self.get(k).map(|v| format!("{k} = {v}\n")))
            .collect()
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(mut self, over: &RunConfig) -> RunConfig {
        macro_rules! take {
            ($($field:ident),*) => {
                $( if over.$field.is_some() { self.$field = over.$field.clone(); } )*
            };
        }
        take!(
            omega_perp,
            omega_par,
            omega12,
            omega12_bar,
            beta,
            length,
            edge_guard,
            n,
            l,
            h,
            mode,
            h_min,
            h_max,
            points,
            omega_min,
            omega_max,
            format,
            output,
            exact_tol,
            max_iter,
            validity_tolerance,
            threads
        );
        self
    }

    /// Medium parameters; absent keys fall back to the canonical
    /// configuration (1, 1.2, 1.1, 1e-3).
    pub fn medium(&self) -> CoreResult<MediumParams> {
        let mut p = MediumParams::new(
            self.omega_perp.unwrap_or(1.0),
            self.omega_par.unwrap_or(1.2),
            self.omega12.unwrap_or(1.1),
            self.beta.unwrap_or(1e-3),
        )?;
        if let Some(bar) = self.omega12_bar {
            p = p.with_lamb_shifted(bar)?;
        }
        if let Some(rel) = self.edge_guard {
            p = p.with_edge_guard(rel)?;
        }
        if let Some(len) = self.length {
            p = p.with_length(len)?;
        }
        Ok(p)
    }

    pub fn settings(&self) -> SolverSettings {
        let d = SolverSettings::default();
        SolverSettings {
            exact_tol: self.exact_tol.unwrap_or(d.exact_tol),
            max_iter: self.max_iter.unwrap_or(d.max_iter),
            validity_tolerance: self.validity_tolerance.unwrap_or(d.validity_tolerance),
        }
    }
}
