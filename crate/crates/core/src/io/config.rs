//! JSON experiment configs with `key=value` overrides.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::harness::{ExperimentConfig, RangePolicy};
use crate::model::{GridSpec, ModelParams, NonlinearPair, Preset};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    preset: String,
    grid: Option<RawGrid>,
    time: Option<RawTime>,
    ranks: Option<Vec<usize>>,
    params: Option<RawParams>,
    nonlinear: Option<RawNonlinear>,
    reference: Option<RawReference>,
    fn_substeps: Option<usize>,
    snapshot: Option<RawSnapshot>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(rename = "N")]
    n: Option<usize>,
    bounds: Option<[f64; 4]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    #[serde(rename = "T")]
    t_final: Option<f64>,
    #[serde(rename = "M_list")]
    m_list: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    alpha: Option<f64>,
    beta: Option<f64>,
    gamma: Option<f64>,
    delta: Option<f64>,
    omega: Option<[f64; 3]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNonlinear {
    f: Option<String>,
    g: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    multiplier: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSnapshot {
    times: Option<Vec<f64>>,
    range: Option<String>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::ConfigParse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Default intervals per direction when the config leaves `grid.N` out.
fn default_n(preset: &Preset) -> usize {
    match preset {
        Preset::Flower | Preset::Cardioid | Preset::Astroid => 256,
        _ => 128,
    }
}

/// Sets `a.b.c = value`, creating intermediate objects.
fn apply_override(root: &mut Value, spec: &str) -> Result<()> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| Error::Validation(format!("override `{spec}` is not of the form key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    let mut parts = key.split('.').peekable();
    while let Some(part) = parts.next() {
        if part.is_empty() {
            return Err(Error::Validation(format!("override key `{key}` has an empty segment")));
        }
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::Validation(format!("override `{key}` descends into a non-object")))?;
        if parts.peek().is_none() {
            obj.insert(part.to_string(), value);
            return Ok(());
        }
        node = obj
            .entry(part.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    unreachable!("split always yields one segment")
}

/// Parses config text, applies overrides and validates the result.
pub fn parse_config_str(text: &str, overrides: &[String]) -> Result<ExperimentConfig> {
    // syntax and schema errors carry positions only when read from text
    serde_json::from_str::<RawConfig>(text).map_err(parse_error)?;
    let mut value: Value = serde_json::from_str(text).map_err(parse_error)?;
    for spec in overrides {
        apply_override(&mut value, spec)?;
    }
    let raw: RawConfig =
        serde_json::from_value(value).map_err(|e| Error::Validation(format!("after overrides: {e}")))?;
    build(raw)
}

pub fn parse_config(path: &Path, overrides: &[String]) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text, overrides)
}

fn build(raw: RawConfig) -> Result<ExperimentConfig> {
    let preset = Preset::from_name(&raw.preset)?;
    let grid = raw.grid.unwrap_or(RawGrid { n: None, bounds: None });
    let n = grid.n.unwrap_or_else(|| default_n(&preset));
    let mut cfg = ExperimentConfig::defaults(preset, n.max(2))?;
    cfg.grid = GridSpec::square(grid.bounds.unwrap_or(cfg.grid.bounds()), n).map_err(as_validation)?;

    if let Some(t) = raw.time {
        if let Some(tf) = t.t_final {
            cfg.t_final = tf;
            cfg.snapshot_times.retain(|&s| s <= tf);
        }
        if let Some(m) = t.m_list {
            cfg.m_list = m;
        }
    }
    if let Some(r) = raw.ranks {
        cfg.ranks = r;
    }
    if let Some(p) = raw.params {
        let d = cfg.params;
        cfg.params = ModelParams {
            alpha: p.alpha.unwrap_or(d.alpha),
            beta: p.beta.unwrap_or(d.beta),
            gamma: p.gamma.unwrap_or(d.gamma),
            delta: p.delta.unwrap_or(d.delta),
            omega: p.omega.unwrap_or(d.omega),
        };
    }
    if let Some(nl) = raw.nonlinear {
        let d = cfg.nonlinear.clone();
        cfg.nonlinear = NonlinearPair::new(
            nl.f.map(|s| s.parse()).transpose()?.unwrap_or(d.f),
            nl.g.map(|s| s.parse()).transpose()?.unwrap_or(d.g),
        );
    }
    if let Some(m) = raw.reference.and_then(|r| r.multiplier) {
        cfg.reference_multiplier = m;
    }
    if let Some(s) = raw.fn_substeps {
        cfg.fn_substeps = s;
    }
    if let Some(s) = raw.snapshot {
        if let Some(t) = s.times {
            cfg.snapshot_times = t;
        }
        if let Some(r) = s.range {
            cfg.snapshot_range = RangePolicy::from_name(&r)?;
        }
    }
    cfg.validate().map_err(as_validation)?;
    Ok(cfg)
}

fn as_validation(e: Error) -> Error {
    match e {
        Error::InvalidParameter(m) => Error::Validation(m),
        other => other,
    }
}
