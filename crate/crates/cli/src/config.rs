//! Run configuration: assembled from flags, overridden by a JSON file, then
//! validated into concrete parameters.

use std::path::PathBuf;

use aetrans::bie::CurveKind;
use aetrans::params::nondimensionalize;
use aetrans::{NondimParams, PhysicalMedium};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Zeros,
    Eig,
    Localize,
    Field,
    BieScan,
    BieField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FieldChoice {
    Acoustic,
    Elastic,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ZeroChoice {
    J,
    Jprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Nondimensional input; lambda follows from lambda + 2 mu = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NondimInput {
    pub delta: f64,
    pub tau: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nondim: Option<NondimInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<PhysicalMedium>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u32>,
    /// Mode range `a:b:step`, `a:b` or `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<ZeroChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    /// `circle[:r]`, `ellipse:a,b`, `kite` or `file:PATH`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Emit the sampled sigma_min curve instead of the minima.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    /// Flags first, then every key of the file replaces the flag value.
    pub fn merge(flags: Value, file: Option<Value>) -> Result<Self, CliError> {
        let mut merged: Map<String, Value> = match flags {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        if let Some(file) = file {
            let Value::Object(file) = file else {
                return Err(CliError::Validation("config file must hold a JSON object".into()));
            };
            for (k, v) in file {
                merged.insert(k, v);
            }
        }
        if !merged.contains_key("command") {
            return Err(CliError::Validation("no command given (use a subcommand or \"command\" in --config)".into()));
        }
        serde_json::from_value(Value::Object(merged)).map_err(|e| CliError::Validation(format!("invalid configuration: {e}")))
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn s(&self) -> u32 {
        self.s.unwrap_or(1)
    }

    pub fn dim(&self) -> Result<u32, CliError> {
        match self.dim {
            Some(d @ (2 | 3)) => Ok(d),
            Some(d) => Err(CliError::Validation(format!("dim must be 2 or 3, got {d}"))),
            None => Err(CliError::Validation("dim is required".into())),
        }
    }

    /// Exactly one of the two parameter sources, resolved to NondimParams.
    pub fn params(&self, dim: u32) -> Result<NondimParams, CliError> {
        match (&self.nondim, &self.physical) {
            (Some(p), None) => NondimParams::new(p.delta, p.tau, p.mu).map_err(CliError::from),
            (None, Some(m)) => {
                let p = nondimensionalize(m, dim)?;
                if !p.tau_in_unit_interval() {
                    eprintln!("warning: physical medium gives tau = {} outside (0, 1)", p.tau);
                }
                Ok(p)
            }
            (Some(_), Some(_)) => {
                Err(CliError::Validation("supply either nondimensional or physical parameters, not both".into()))
            }
            (None, None) => Err(CliError::Validation(
                "parameters missing: give --delta/--tau/--mu or the physical medium".into(),
            )),
        }
    }

    pub fn modes(&self) -> Result<Vec<u32>, CliError> {
        parse_range(self.m.as_deref().ok_or_else(|| CliError::Validation("mode range --m is required".into()))?)
    }

    pub fn eps(&self) -> Result<Vec<f64>, CliError> {
        let eps = self.eps.clone().unwrap_or_else(|| vec![0.5]);
        if eps.is_empty() {
            return Err(CliError::Validation("eps list is empty".into()));
        }
        if let Some(e) = eps.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
            return Err(CliError::Validation(format!("eps must lie in (0, 1), got {e}")));
        }
        Ok(eps)
    }

    pub fn curve_kind(&self) -> Result<CurveKind, CliError> {
        parse_curve(self.curve.as_deref().ok_or_else(|| CliError::Validation("--curve is required".into()))?)
    }

    pub fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T, CliError> {
        v.ok_or_else(|| CliError::Validation(format!("{name} is required")))
    }
}

/// `a:b:step`, `a:b` (step 1) or a single order.
pub fn parse_range(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Validation(format!("invalid range '{s}' (expected a:b:step with integers)"));
    let parts: Vec<u32> = s.split(':').map(|p| p.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    let (a, b, step) = match parts[..] {
        [a] => (a, a, 1),
        [a, b] => (a, b, 1),
        [a, b, step] => (a, b, step),
        _ => return Err(bad()),
    };
    if step == 0 || a > b {
        return Err(bad());
    }
    Ok((a..=b).step_by(step as usize).collect())
}

/// Decimal floats with '.' separator; non-finite values are rejected.
pub fn parse_float(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')) {
        return Err(format!("'{s}' is not a decimal number"));
    }
    let v: f64 = t.parse().map_err(|_| format!("'{s}' is not a decimal number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

pub fn parse_curve(s: &str) -> Result<CurveKind, CliError> {
    let bad = |why: &str| CliError::Validation(format!("invalid curve '{s}': {why}"));
    let (name, arg) = s.split_once(':').map_or((s, None), |(a, b)| (a, Some(b)));
    match (name, arg) {
        ("circle", None) => Ok(CurveKind::Circle { radius: 1.0 }),
        ("circle", Some(r)) => Ok(CurveKind::Circle { radius: parse_float(r).map_err(|e| bad(&e))? }),
        ("ellipse", Some(ab)) => {
            let v: Vec<f64> = ab.split(',').map(parse_float).collect::<Result<_, _>>().map_err(|e| bad(&e))?;
            match v[..] {
                [a, b] => Ok(CurveKind::Ellipse { a, b }),
                _ => Err(bad("expected ellipse:a,b")),
            }
        }
        ("kite", None) => Ok(CurveKind::Kite),
        ("file", Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| bad(&e.to_string()))?;
            Ok(CurveKind::from_table(&text)?)
        }
        _ => Err(bad("expected circle[:r], ellipse:a,b, kite or file:PATH")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("20:50:10").unwrap(), vec![20, 30, 40, 50]);
        assert_eq!(parse_range("3:5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_range("7").unwrap(), vec![7]);
        for bad in ["", "5:3", "1:5:0", "1.5:3", "a:b", "1:2:3:4"] {
            assert!(parse_range(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn floats_are_plain_decimals() {
        assert_eq!(parse_float("0.25").unwrap(), 0.25);
        assert_eq!(parse_float("1e-3").unwrap(), 1e-3);
        for bad in ["0,25", "inf", "NaN", "", "1_000"] {
            assert!(parse_float(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn curves() {
        assert_eq!(parse_curve("circle").unwrap(), CurveKind::Circle { radius: 1.0 });
        assert_eq!(parse_curve("ellipse:2,1").unwrap(), CurveKind::Ellipse { a: 2.0, b: 1.0 });
        assert_eq!(parse_curve("kite").unwrap(), CurveKind::Kite);
        assert!(parse_curve("square").is_err());
        assert!(parse_curve("ellipse:2").is_err());
    }

    #[test]
    fn file_keys_override_flags() {
        let flags = serde_json::json!({"command": "eig", "m": "20:40:10", "dim": 2});
        let file = serde_json::json!({"m": "30"});
        let c = RunConfig::merge(flags, Some(file)).unwrap();
        assert_eq!(c.m.as_deref(), Some("30"));
        assert_eq!(c.dim, Some(2));
        assert!(RunConfig::merge(serde_json::json!({"command": "eig", "bogus": 1}), None).is_err());
    }
}
