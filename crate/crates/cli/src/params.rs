//! `--params k=v,...` parsing. Values are decimals or multiples of π such as
//! `pi`, `-pi/30`, `3pi/4` or `0.5pi`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{CliError, Result};

pub type Params = BTreeMap<String, f64>;

pub fn parse_value(raw: &str) -> Result<f64> {
    let s = raw.trim();
    let bad = || CliError::usage(format!("cannot parse {raw:?} as a number"));
    let Some(pos) = s.find("pi") else {
        return s.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (&s[..pos], &s[pos + 2..]);
    let coef = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.trim_end_matches('*').parse::<f64>().map_err(|_| bad())?,
    };
    let denom = match tail {
        "" => 1.0,
        t => t.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coef * PI / denom)
}

pub fn parse_params(raw: &str) -> Result<Params> {
    let mut out = Params::new();
    for item in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("parameter {item:?} is not of the form key=value")))?;
        out.insert(k.trim().to_string(), parse_value(v)?);
    }
    Ok(out)
}

/// Rejects keys outside `allowed`.
pub fn check_keys(params: &Params, allowed: &[&str]) -> Result<()> {
    for k in params.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(CliError::usage(format!(
                "unknown parameter {k:?}; expected one of {}",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

pub fn get_or(params: &Params, key: &str, default: f64) -> f64 {
    params.get(key).copied().unwrap_or(default)
}
