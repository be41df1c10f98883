//! JSON configuration files.
//!
//! ```json
//! {
//!   "junctions": {
//!     "y": { "theta": [0, "pi:1", "pi:1"], "beta": "pi:1.5", "gamma": "pi:1",
//!            "delta": "pi:1/4", "b": "pi:1/6", "l0": 1.0 }
//!   },
//!   "ring": { "left": "y", "mode": "symmetric", "xi1": 1.0, "xi2": 0.0 },
//!   "task": { "k": 1.3, "k_min": 0.1, "k_max": 10.0, "n": 512 }
//! }
//! ```
//!
//! Angles are radians, either as numbers or as strings. A `pi:` prefix
//! multiplies by π and accepts a decimal or a fraction (`"pi:0.5"`,
//! `"pi:1/6"`). Euler angles default to 0 and `l0` to 1.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use serde::Deserialize;
use yring::{EulerAngles, JunctionParams, Orientation, RingConfig, SymmetryMode};

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Angle {
    Number(f64),
    Text(String),
}

impl Default for Angle {
    fn default() -> Self {
        Angle::Number(0.0)
    }
}

impl Angle {
    pub fn radians(&self) -> Result<f64, String> {
        let value = match self {
            Angle::Number(x) => *x,
            Angle::Text(s) => parse_angle(s)?,
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(format!("angle {value} is not finite"))
        }
    }
}

/// Parses `"1.25"`, `"pi:0.5"` or `"pi:1/6"`.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let text = text.trim();
    let Some(multiple) = text.strip_prefix("pi:") else {
        return text
            .parse::<f64>()
            .map_err(|_| format!("cannot parse angle {text:?}"));
    };
    let multiple = multiple.trim();
    let factor = match multiple.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in {text:?}"))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in {text:?}"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in {text:?}"));
            }
            num / den
        }
        None => multiple
            .parse()
            .map_err(|_| format!("cannot parse multiple of pi in {text:?}"))?,
    };
    Ok(factor * PI)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JunctionSpec {
    pub theta: [Angle; 3],
    #[serde(default)]
    pub alpha: Angle,
    #[serde(default)]
    pub beta: Angle,
    #[serde(default)]
    pub gamma: Angle,
    #[serde(default)]
    pub delta: Angle,
    #[serde(default)]
    pub a: Angle,
    #[serde(default)]
    pub b: Angle,
    #[serde(default = "default_l0")]
    pub l0: f64,
}

fn default_l0() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    Symmetric,
    #[serde(alias = "antisymmetric")]
    AntiSymmetric,
    General,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub left: String,
    pub mode: ModeSpec,
    #[serde(default)]
    pub right: Option<String>,
    pub xi1: f64,
    pub xi2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum KindSpec {
    Transmission,
    Reflection,
}

impl From<KindSpec> for yring::ResonanceKind {
    fn from(k: KindSpec) -> Self {
        match k {
            KindSpec::Transmission => yring::ResonanceKind::PerfectTransmission,
            KindSpec::Reflection => yring::ResonanceKind::PerfectReflection,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OrientationSpec {
    Inward,
    Outward,
}

impl From<OrientationSpec> for Orientation {
    fn from(o: OrientationSpec) -> Self {
        match o {
            OrientationSpec::Inward => Orientation::Inward,
            OrientationSpec::Outward => Orientation::Outward,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub junction: Option<String>,
    pub k: Option<f64>,
    pub xi: Option<f64>,
    pub orientation: Option<OrientationSpec>,
    pub k_min: Option<f64>,
    pub k_max: Option<f64>,
    pub n: Option<usize>,
    pub scan_n: Option<usize>,
    pub tol: Option<f64>,
    pub kind: Option<KindSpec>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub junctions: BTreeMap<String, JunctionSpec>,
    #[serde(default)]
    pub ring: Option<RingSpec>,
    #[serde(default)]
    pub task: TaskSpec,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub junctions: BTreeMap<String, JunctionParams>,
    pub ring: Option<RingConfig>,
    pub ring_spec: Option<RingSpec>,
    pub task: TaskSpec,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: ConfigFile =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        raw.validate()
    }

    /// The junction named on the command line, in the task block, or as the
    /// ring's left node, or the only junction defined.
    pub fn junction(&self, name: Option<&str>) -> Result<(&str, &JunctionParams), CliError> {
        let name = name
            .or(self.task.junction.as_deref())
            .map(str::to_owned)
            .or_else(|| self.ring_spec.as_ref().map(|r| r.left.clone()))
            .or_else(|| {
                (self.junctions.len() == 1)
                    .then(|| self.junctions.keys().next().cloned())
                    .flatten()
            })
            .ok_or_else(|| CliError::Config("task.junction: no junction selected".into()))?;
        self.junctions
            .get_key_value(name.as_str())
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| CliError::Config(format!("task.junction: unknown junction {name:?}")))
    }

    pub fn ring(&self) -> Result<&RingConfig, CliError> {
        self.ring
            .as_ref()
            .ok_or_else(|| CliError::Config("ring: block is missing".into()))
    }
}

impl JunctionSpec {
    fn to_params(&self, name: &str) -> Result<JunctionParams, CliError> {
        let field = |label: &str, a: &Angle| {
            a.radians()
                .map_err(|e| CliError::Config(format!("junctions.{name}.{label}: {e}")))
        };
        let theta = [
            field("theta[0]", &self.theta[0])?,
            field("theta[1]", &self.theta[1])?,
            field("theta[2]", &self.theta[2])?,
        ];
        let euler = EulerAngles {
            alpha: field("alpha", &self.alpha)?,
            beta: field("beta", &self.beta)?,
            gamma: field("gamma", &self.gamma)?,
            delta: field("delta", &self.delta)?,
            a: field("a", &self.a)?,
            b: field("b", &self.b)?,
        };
        JunctionParams::new(theta, euler, self.l0)
            .map_err(|e| CliError::Config(format!("junctions.{name}: {e}")))
    }
}

impl ConfigFile {
    fn validate(self) -> Result<Config, CliError> {
        if self.junctions.is_empty() {
            return Err(CliError::Config(
                "junctions: at least one junction is required".into(),
            ));
        }
        let junctions = self
            .junctions
            .iter()
            .map(|(name, spec)| Ok((name.clone(), spec.to_params(name)?)))
            .collect::<Result<BTreeMap<_, _>, CliError>>()?;
        let lookup = |field: &str, name: &str| {
            junctions
                .get(name)
                .copied()
                .ok_or_else(|| CliError::Config(format!("ring.{field}: unknown junction {name:?}")))
        };
        let ring = match &self.ring {
            None => None,
            Some(r) => {
                let left = lookup("left", &r.left)?;
                let mode = match (r.mode, &r.right) {
                    (ModeSpec::General, Some(right)) => {
                        SymmetryMode::General(lookup("right", right)?)
                    }
                    (ModeSpec::General, None) => {
                        return Err(CliError::Config(
                            "ring.right: general mode needs a right junction".into(),
                        ))
                    }
                    (_, Some(_)) => {
                        return Err(CliError::Config(
                            "ring.right: only general mode takes a right junction".into(),
                        ))
                    }
                    (ModeSpec::Symmetric, None) => SymmetryMode::Symmetric,
                    (ModeSpec::AntiSymmetric, None) => SymmetryMode::AntiSymmetric,
                };
                Some(
                    RingConfig::new(left, mode, r.xi1, r.xi2)
                        .map_err(|e| CliError::Config(format!("ring: {e}")))?,
                )
            }
        };
        Ok(Config {
            junctions,
            ring,
            ring_spec: self.ring,
            task: self.task,
        })
    }
}
