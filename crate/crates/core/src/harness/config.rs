use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::agent::{AgentConfig, WalkKind};
use crate::casino::{Casino, CasinoSpec, PAPER_PRESET};
use crate::error::{Error, Result};

/// A real parameter as written in a config file: a JSON number, or a string
/// expression that may mention `pi`, e.g. `"5/16 pi"`, `"5pi/16"`, `"0.5"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Expr(String),
}

impl Scalar {
    pub fn resolve(&self, field: &str) -> Result<f64> {
        match self {
            Scalar::Number(v) => Ok(*v),
            Scalar::Expr(s) => parse_scalar(s).map_err(|reason| Error::config(field, reason)),
        }
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Number(v)
    }
}

impl From<&str> for Scalar {
    fn from(s: &str) -> Self {
        Scalar::Expr(s.to_owned())
    }
}

/// Evaluates a product/quotient of numbers and `pi` (or `π`), left to right.
/// Juxtaposition multiplies, so `5/16 pi` is `(5/16)·π`.
pub fn parse_scalar(expr: &str) -> std::result::Result<f64, String> {
    let bytes: Vec<char> = expr.chars().collect();
    let mut i = 0;
    let mut value: Option<f64> = None;
    let mut pending_op = '*';
    let mut expect_factor = true;
    while i < bytes.len() {
        let ch = bytes[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch == '*' || ch == '/' {
            if expect_factor && value.is_some() || value.is_none() {
                return Err(format!("unexpected '{ch}' in {expr:?}"));
            }
            pending_op = ch;
            expect_factor = true;
            i += 1;
            continue;
        }
        let factor = if ch == 'π' {
            i += 1;
            PI
        } else if bytes[i..].starts_with(&['p', 'i']) {
            i += 2;
            PI
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == 'e' || bytes[i] == 'E') {
                let mut k = i + 1;
                if k < bytes.len() && (bytes[k] == '+' || bytes[k] == '-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    i = k;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let lit: String = bytes[start..i].iter().collect();
            lit.parse::<f64>()
                .map_err(|e| format!("bad number {lit:?} in {expr:?}: {e}"))?
        } else {
            return Err(format!("unexpected '{ch}' in {expr:?}"));
        };
        value = Some(match (value, pending_op) {
            (None, _) => factor,
            (Some(v), '/') => v / factor,
            (Some(v), _) => v * factor,
        });
        pending_op = '*';
        expect_factor = false;
    }
    if expect_factor && value.is_some() {
        return Err(format!("dangling operator in {expr:?}"));
    }
    value.ok_or_else(|| format!("empty expression {expr:?}"))
}

fn default_threads() -> usize {
    1
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

/// One experiment as read from JSON. Unknown fields are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: WalkKind,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub casino: CasinoSpec,
    pub seed: u64,
    #[serde(default = "default_threads")]
    pub threads: usize,
    #[serde(default)]
    pub trace_runs: Vec<usize>,
    #[serde(default = "default_output")]
    pub output: PathBuf,
}

/// A validated [`ExperimentConfig`] with every parameter resolved.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub agent: AgentConfig,
    pub casino: Casino,
    pub decisions: usize,
    pub runs: usize,
    pub seed: u64,
    pub threads: usize,
    pub trace_runs: Vec<usize>,
    pub output: PathBuf,
}

impl ExperimentConfig {
    /// The benchmark parameters: paper casino, `N = 32`, `K = 500`, `J = 5000`,
    /// `(a, b, θ°) = (5, 6, 5π/16)` for the quantum agent and
    /// `(a, b, q°) = (9, 6, 0.5)` for the random-walk agent.
    pub fn benchmark(model: WalkKind, steps: usize, seed: u64) -> Self {
        let (a, b, c) = match model {
            WalkKind::Qw => (5.0, 6.0, Scalar::from("5/16 pi")),
            WalkKind::Rw => (9.0, 6.0, Scalar::Number(0.5)),
        };
        ExperimentConfig {
            model,
            n: 32,
            t: steps,
            j: 5000,
            k: 500,
            a: a.into(),
            b: b.into(),
            c,
            casino: CasinoSpec::Preset(PAPER_PRESET.into()),
            seed,
            threads: default_threads(),
            trace_runs: Vec::new(),
            output: default_output(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(json_field(&e), e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config is always serialisable")
    }

    pub fn resolve(&self) -> Result<Experiment> {
        let casino = Casino::from_spec(&self.casino)?;
        if casino.len() != self.n {
            return Err(Error::config(
                "N",
                format!(
                    "{} does not match the casino's {} arms",
                    self.n,
                    casino.len()
                ),
            ));
        }
        let agent = AgentConfig::new(
            self.model,
            self.a.resolve("a")?,
            self.b.resolve("b")?,
            self.c.resolve("c")?,
            self.t,
        )?;
        if self.j == 0 {
            return Err(Error::config("J", "must be at least 1"));
        }
        if self.k == 0 {
            return Err(Error::config("K", "must be at least 1"));
        }
        if self.threads == 0 {
            return Err(Error::config("threads", "must be at least 1"));
        }
        if let Some(&bad) = self.trace_runs.iter().find(|&&r| r >= self.k) {
            return Err(Error::config(
                "trace_runs",
                format!("run {bad} does not exist (K = {})", self.k),
            ));
        }
        Ok(Experiment {
            agent,
            casino,
            decisions: self.j,
            runs: self.k,
            seed: self.seed,
            threads: self.threads,
            trace_runs: self.trace_runs.clone(),
            output: self.output.clone(),
        })
    }
}

/// Best-effort name of the offending field in a serde error message.
fn json_field(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    for marker in ["unknown field `", "missing field `"] {
        if let Some(rest) = msg.split(marker).nth(1) {
            if let Some(name) = rest.split('`').next() {
                return name.to_owned();
            }
        }
    }
    "<json>".to_owned()
}

/// Parameter varied by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    T,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::T => "T",
            Axis::A => "a",
            Axis::B => "b",
            Axis::C => "c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<Scalar>,
    pub base: ExperimentConfig,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(json_field(&e), e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Base config with the swept parameter set to `value`; the seed is left
    /// to the caller.
    pub fn cell(&self, value: &Scalar) -> Result<ExperimentConfig> {
        let mut cfg = self.base.clone();
        match self.axis {
            Axis::T => {
                let v = value.resolve("values")?;
                if !(v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64) {
                    return Err(Error::config(
                        "values",
                        format!("T = {v} is not a positive integer"),
                    ));
                }
                cfg.t = v as usize;
            }
            Axis::A => cfg.a = value.clone(),
            Axis::B => cfg.b = value.clone(),
            Axis::C => cfg.c = value.clone(),
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_expressions() {
        let close = |s: &str, v: f64| {
            let got = parse_scalar(s).unwrap();
            assert!(
                (got - v).abs() <= 1e-15 * v.abs().max(1.0),
                "{s}: {got} vs {v}"
            );
        };
        close("5/16 pi", 5.0 * PI / 16.0);
        close("5pi/16", 5.0 * PI / 16.0);
        close("29/64π", 29.0 * PI / 64.0);
        close("pi", PI);
        close("0.5", 0.5);
        close("2 * pi / 3", 2.0 * PI / 3.0);
        close("1e-3", 1e-3);
        assert_eq!(parse_scalar("5/16 pi").unwrap(), 5.0 / 16.0 * PI);
        for bad in ["", "/2", "3/", "pie", "2 ** 3", "-1"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn benchmark_round_trips_through_json() {
        let cfg = ExperimentConfig::benchmark(WalkKind::Qw, 8, 1);
        let back = ExperimentConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back, cfg);
        let exp = back.resolve().unwrap();
        assert_eq!(exp.agent.c, 5.0 / 16.0 * PI);
        assert_eq!((exp.runs, exp.decisions), (500, 5000));
    }

    #[test]
    fn unknown_and_missing_fields_named() {
        let mut v: serde_json::Value =
            serde_json::from_str(&ExperimentConfig::benchmark(WalkKind::Rw, 8, 1).to_json())
                .unwrap();
        v["bogus"] = 1.into();
        match ExperimentConfig::from_json(&v.to_string()) {
            Err(Error::InvalidConfig { field, .. }) => assert_eq!(field, "bogus"),
            other => panic!("{other:?}"),
        }
        v.as_object_mut().unwrap().remove("bogus");
        v.as_object_mut().unwrap().remove("seed");
        match ExperimentConfig::from_json(&v.to_string()) {
            Err(Error::InvalidConfig { field, .. }) => assert_eq!(field, "seed"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn resolve_checks_ranges() {
        let base = ExperimentConfig::benchmark(WalkKind::Rw, 8, 1);
        let field_of = |cfg: ExperimentConfig| match cfg.resolve() {
            Err(Error::InvalidConfig { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(
            field_of(ExperimentConfig {
                n: 31,
                ..base.clone()
            }),
            "N"
        );
        assert_eq!(
            field_of(ExperimentConfig {
                c: 0.6.into(),
                ..base.clone()
            }),
            "c"
        );
        assert_eq!(
            field_of(ExperimentConfig {
                a: 0.5.into(),
                ..base.clone()
            }),
            "a"
        );
        assert_eq!(
            field_of(ExperimentConfig {
                t: 0,
                ..base.clone()
            }),
            "T"
        );
        assert_eq!(
            field_of(ExperimentConfig {
                k: 0,
                ..base.clone()
            }),
            "K"
        );
        assert_eq!(
            field_of(ExperimentConfig {
                threads: 0,
                ..base.clone()
            }),
            "threads"
        );
        assert_eq!(
            field_of(ExperimentConfig {
                trace_runs: vec![500],
                ..base.clone()
            }),
            "trace_runs"
        );
        assert_eq!(
            field_of(ExperimentConfig {
                c: "pi/x".into(),
                ..base
            }),
            "c"
        );
    }

    #[test]
    fn sweep_cells() {
        let spec = SweepSpec {
            axis: Axis::T,
            values: vec![4.0.into(), 8.0.into()],
            base: ExperimentConfig::benchmark(WalkKind::Qw, 1, 3),
        };
        assert_eq!(spec.cell(&8.0.into()).unwrap().t, 8);
        assert!(spec.cell(&2.5.into()).is_err());
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(SweepSpec::from_json(&json).unwrap(), spec);
        let c = SweepSpec {
            axis: Axis::C,
            ..spec
        };
        assert_eq!(
            c.cell(&"29/64 pi".into()).unwrap().c,
            Scalar::from("29/64 pi")
        );
    }
}
