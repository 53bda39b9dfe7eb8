//! Run configuration: a JSON file and command-line flags merged into one
//! [`RunConfig`], flags winning.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{Map, Value};

use gnpmod_core::bounds::DEFAULT_C;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SubsetMode {
    Exhaustive,
    Sampled,
}

/// Every setting a subcommand can read. Fields a subcommand does not use are
/// ignored by it, so one file can drive several subcommands.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// When present in a file, must name the subcommand being run.
    pub subcommand: Option<String>,
    pub n: Option<usize>,
    #[serde(deserialize_with = "one_or_many")]
    pub p: Option<Vec<f64>>,
    #[serde(deserialize_with = "one_or_many")]
    pub d: Option<Vec<f64>>,
    #[serde(alias = "C")]
    pub c: Option<f64>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub restarts: Option<usize>,
    pub jobs: Option<usize>,
    pub cap: Option<usize>,
    pub graph: Option<PathBuf>,
    pub partition: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub partition_out: Option<PathBuf>,
    pub meta: Option<PathBuf>,
    pub format: Option<Format>,
    pub no_timestamp: Option<bool>,
    pub mode: Option<SubsetMode>,
    pub per_size: Option<u64>,
    pub t: Option<f64>,
    pub samples: Option<u64>,
    pub exact: Option<bool>,
    pub replay: Option<u64>,
    #[serde(deserialize_with = "one_or_many")]
    pub z: Option<Vec<f64>>,
    pub x_step: Option<f64>,
    pub y_step: Option<f64>,
    pub y_max: Option<f64>,
    pub g_x_max: Option<f64>,
}

fn one_or_many<'de, D: Deserializer<'de>>(de: D) -> Result<Option<Vec<f64>>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(f64),
        Many(Vec<f64>),
    }
    Ok(Option::<OneOrMany>::deserialize(de)?.map(|v| match v {
        OneOrMany::One(x) => vec![x],
        OneOrMany::Many(xs) => xs,
    }))
}

/// Overlays the non-null, non-false entries of `flags` on the JSON object in
/// `file` (if any) and parses the result.
pub fn merge(subcommand: &str, file: Option<&Path>, flags: &impl Serialize) -> CliResult<RunConfig> {
    let mut merged = match file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::invalid("config", format!("cannot read {}: {e}", path.display()))
            })?;
            match serde_json::from_str::<Value>(&text) {
                Ok(Value::Object(map)) => map,
                Ok(_) => return Err(CliError::invalid("config", "expected a JSON object")),
                Err(e) => return Err(CliError::invalid("config", e)),
            }
        }
        None => Map::new(),
    };
    let flags = serde_json::to_value(flags).map_err(|e| CliError::Internal(e.to_string()))?;
    if let Value::Object(map) = flags {
        for (key, value) in map {
            if !matches!(value, Value::Null | Value::Bool(false)) {
                merged.insert(key, value);
            }
        }
    }
    let config: RunConfig = serde_json::from_value(Value::Object(merged))
        .map_err(|e| CliError::invalid("config", e))?;
    if let Some(named) = &config.subcommand {
        if named != subcommand {
            return Err(CliError::invalid(
                "subcommand",
                format!("config names {named:?} but {subcommand:?} was run"),
            ));
        }
    }
    Ok(config)
}

fn required<T: Copy>(value: Option<T>, field: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::invalid(field, "required"))
}

/// Edge probability and `d = np` for one density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub p: f64,
    pub d: f64,
}

impl RunConfig {
    pub fn n(&self) -> CliResult<usize> {
        let n = required(self.n, "n")?;
        if n == 0 {
            return Err(CliError::invalid("n", "must be >= 1"));
        }
        Ok(n)
    }

    pub fn has_density(&self) -> bool {
        self.p.is_some() || self.d.is_some()
    }

    /// Every listed density. Exactly one of `p`, `d` must be given; the other
    /// follows from `d = np`. When `d` is given, `p = d / n`.
    pub fn densities(&self, n: usize) -> CliResult<Vec<Density>> {
        let nf = n as f64;
        let out: Vec<Density> = match (&self.p, &self.d) {
            (Some(_), Some(_)) => {
                return Err(CliError::invalid("p/d", "give exactly one of p and d, not both"))
            }
            (None, None) => return Err(CliError::invalid("p/d", "one of p and d is required")),
            (Some(ps), None) => {
                for &p in ps {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(CliError::invalid("p", format!("must lie in [0, 1], got {p}")));
                    }
                }
                ps.iter().map(|&p| Density { p, d: nf * p }).collect()
            }
            (None, Some(ds)) => {
                for &d in ds {
                    if !(d >= 0.0 && d <= nf) {
                        return Err(CliError::invalid("d", format!("must lie in [0, n = {n}], got {d}")));
                    }
                }
                ds.iter().map(|&d| Density { p: d / nf, d }).collect()
            }
        };
        if out.is_empty() {
            return Err(CliError::invalid("p/d", "at least one value"));
        }
        Ok(out)
    }

    pub fn density(&self, n: usize) -> CliResult<Density> {
        match self.densities(n)?.as_slice() {
            [one] => Ok(*one),
            _ => {
                let field = if self.p.is_some() { "p" } else { "d" };
                Err(CliError::invalid(field, "expected exactly one value"))
            }
        }
    }

    pub fn c(&self) -> CliResult<f64> {
        let c = self.c.unwrap_or(DEFAULT_C);
        if !(c >= 0.0) || !c.is_finite() {
            return Err(CliError::invalid("c", format!("must be finite and >= 0, got {c}")));
        }
        Ok(c)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn restarts(&self) -> CliResult<usize> {
        let r = self.restarts.unwrap_or(10);
        if r == 0 {
            return Err(CliError::invalid("restarts", "must be >= 1"));
        }
        Ok(r)
    }

    pub fn trials(&self, default: u64) -> CliResult<u64> {
        let t = self.trials.unwrap_or(default);
        if t == 0 {
            return Err(CliError::invalid("trials", "must be >= 1"));
        }
        Ok(t)
    }

    pub fn jobs(&self) -> CliResult<usize> {
        let j = self.jobs.unwrap_or(1);
        if j == 0 {
            return Err(CliError::invalid("jobs", "must be >= 1"));
        }
        Ok(j)
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn no_timestamp(&self) -> bool {
        self.no_timestamp.unwrap_or(false)
    }

    pub fn positive(value: Option<f64>, field: &str, default: f64) -> CliResult<f64> {
        let v = value.unwrap_or(default);
        if !(v > 0.0) || !v.is_finite() {
            return Err(CliError::invalid(field, format!("must be finite and > 0, got {v}")));
        }
        Ok(v)
    }
}
