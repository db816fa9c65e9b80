//! JSON scenario and sweep documents. Unknown keys are rejected everywhere.

use std::fs;
use std::path::Path;

use polarispec_core::{
    CavityParams, Dipole, DisorderKind, DisorderSpec, FrequencyGrid, InverseTemperature, Level,
    MultilevelModel, TlsEnsemble, VibronicModel,
};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};

/// Inverse temperature; written as the string `"inf"` for zero temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beta(pub f64);

impl Serialize for Beta {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Beta {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Beta(x)),
            Raw::Text(t) if t == "inf" || t == "infinity" => Ok(Beta(f64::INFINITY)),
            Raw::Text(t) => Err(serde::de::Error::custom(format!(
                "beta must be a number or \"inf\" (got \"{t}\")"
            ))),
        }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavityConfig {
    pub omega_ph: f64,
    pub kappa_l: f64,
    pub kappa_r: f64,
}

impl CavityConfig {
    pub fn build(&self) -> CliResult<CavityParams> {
        CavityParams::new(self.omega_ph, self.kappa_l, self.kappa_r)
            .map_err(|e| CliError::from(e).at("cavity"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_points: usize,
}

impl GridConfig {
    pub fn build(&self) -> CliResult<FrequencyGrid> {
        FrequencyGrid::new(self.omega_min, self.omega_max, self.n_points)
            .map_err(|e| CliError::from(e).at("grid"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisorderKindConfig {
    Gaussian,
    Lorentzian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderConfig {
    pub kind: DisorderKindConfig,
    pub center: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelConfig {
    pub omega: f64,
    pub population: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleConfig {
    pub from: usize,
    pub to: usize,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    Tls {
        #[serde(default = "one")]
        n_emitters: f64,
        g: f64,
        omega_exc: f64,
        beta: Beta,
        gamma: f64,
    },
    DisorderedTls {
        #[serde(default = "one")]
        n_emitters: f64,
        g: f64,
        gamma: f64,
        disorder: DisorderConfig,
    },
    Vibronic {
        #[serde(default = "one")]
        n_emitters: f64,
        g: f64,
        omega_exc: f64,
        omega_v: f64,
        huang_rhys: f64,
        gamma: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m_max: Option<usize>,
    },
    Multilevel {
        #[serde(default = "one")]
        n_emitters: f64,
        g: f64,
        gamma: f64,
        levels: Vec<LevelConfig>,
        dipoles: Vec<DipoleConfig>,
    },
    /// Susceptibility table with header `omega,re_chi,im_chi`; the path is
    /// relative to the config file.
    TabulatedChi { path: String },
}

/// A model ready for evaluation.
#[derive(Debug, Clone)]
pub enum Model {
    Tls(TlsEnsemble),
    Disordered(TlsEnsemble, DisorderSpec),
    Vibronic(VibronicModel),
    Multilevel(MultilevelModel),
    Tabulated(String),
}

fn model_err(e: polarispec_core::Error) -> CliError {
    CliError::from(e).at("model")
}

impl ModelConfig {
    pub fn build(&self) -> CliResult<Model> {
        Ok(match self {
            ModelConfig::Tls {
                n_emitters,
                g,
                omega_exc,
                beta,
                gamma,
            } => {
                let beta = InverseTemperature::new(beta.0)
                    .map_err(|e| CliError::from(e).at("model.beta"))?;
                Model::Tls(
                    TlsEnsemble::new(*n_emitters, *g, *omega_exc, beta, *gamma)
                        .map_err(model_err)?,
                )
            }
            ModelConfig::DisorderedTls {
                n_emitters,
                g,
                gamma,
                disorder,
            } => {
                let kind = match disorder.kind {
                    DisorderKindConfig::Gaussian => DisorderKind::Gaussian,
                    DisorderKindConfig::Lorentzian => DisorderKind::Lorentzian,
                };
                let d = DisorderSpec::new(kind, disorder.center, disorder.sigma)
                    .map_err(|e| CliError::from(e).at("model.disorder"))?;
                let m = TlsEnsemble::new(
                    *n_emitters,
                    *g,
                    d.center,
                    InverseTemperature::Infinite,
                    *gamma,
                )
                .map_err(model_err)?;
                Model::Disordered(m, d)
            }
            ModelConfig::Vibronic {
                n_emitters,
                g,
                omega_exc,
                omega_v,
                huang_rhys,
                gamma,
                m_max,
            } => {
                let m = VibronicModel {
                    n_emitters: *n_emitters,
                    g: *g,
                    omega_exc: *omega_exc,
                    omega_v: *omega_v,
                    huang_rhys: *huang_rhys,
                    gamma: *gamma,
                    m_max: *m_max,
                };
                m.validate().map_err(model_err)?;
                Model::Vibronic(m)
            }
            ModelConfig::Multilevel {
                n_emitters,
                g,
                gamma,
                levels,
                dipoles,
            } => {
                let m = MultilevelModel {
                    levels: levels
                        .iter()
                        .map(|l| Level {
                            omega: l.omega,
                            population: l.population,
                        })
                        .collect(),
                    dipoles: dipoles
                        .iter()
                        .map(|d| Dipole {
                            from: d.from,
                            to: d.to,
                            amplitude: d.amplitude,
                        })
                        .collect(),
                    n_emitters: *n_emitters,
                    g: *g,
                    gamma: *gamma,
                };
                m.validate().map_err(model_err)?;
                Model::Multilevel(m)
            }
            ModelConfig::TabulatedChi { path } => Model::Tabulated(path.clone()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MethodConfig {
    #[default]
    Harmonic,
    /// Discretized surrogate bath; `gamma_mode` defaults to the molecular
    /// linewidth for line models and to the bin width otherwise.
    FiniteN {
        n_modes: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma_mode: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub csv_path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg_path: Option<String>,
}

/// One cavity + model + grid computation. A missing `model` is an empty cavity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub cavity: CavityConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelConfig>,
    pub grid: GridConfig,
    #[serde(default)]
    pub method: MethodConfig,
    #[serde(default)]
    pub outputs: Vec<OutputConfig>,
}

impl Scenario {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let s: Scenario =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Structural checks that do not need any computation.
    pub fn validate(&self) -> CliResult<()> {
        self.cavity.build()?;
        self.grid.build()?;
        if let Some(m) = &self.model {
            m.build()?;
        }
        if let MethodConfig::FiniteN {
            n_modes,
            gamma_mode,
        } = &self.method
        {
            if *n_modes == 0 {
                return Err(CliError::Config("method.n_modes must be >= 1".into()));
            }
            if let Some(g) = gamma_mode {
                if !(g.is_finite() && *g > 0.0) {
                    return Err(CliError::Config(format!(
                        "method.gamma_mode must be > 0 (got {g})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Grid overrides from the command line.
#[derive(Debug, Clone, Copy, Default)]
pub struct GridOverride {
    pub points: Option<usize>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
}

impl GridOverride {
    pub fn apply(&self, s: &mut Scenario) -> CliResult<()> {
        if let Some(n) = self.points {
            s.grid.n_points = n;
        }
        if let Some(a) = self.omega_min {
            s.grid.omega_min = a;
        }
        if let Some(b) = self.omega_max {
            s.grid.omega_max = b;
        }
        s.grid.build().map(|_| ())
    }
}

/// A scenario evaluated for each value of one parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    /// Inline base scenario; exclusive with `preset`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Scenario>,
    /// Name of an embedded preset to use as the base.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Dotted path into the base scenario (e.g. `model.beta`), or
    /// `model.populations` for the level populations of a multilevel model.
    pub parameter: String,
    pub values: Vec<serde_json::Value>,
    /// Where to write the `value,peak_splitting` table; stdout if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary_path: Option<String>,
}

impl Sweep {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn base_scenario(&self) -> CliResult<Scenario> {
        match (&self.base, &self.preset) {
            (Some(b), None) => {
                b.validate().map_err(|e| e.at("base"))?;
                Ok(b.clone())
            }
            (None, Some(name)) => crate::presets::preset(name),
            _ => Err(CliError::Config(
                "sweep needs exactly one of `base` or `preset`".into(),
            )),
        }
    }

    /// The base scenario with the swept parameter set to `value`.
    pub fn scenario_for(&self, base: &Scenario, value: &serde_json::Value) -> CliResult<Scenario> {
        let mut doc = serde_json::to_value(base).expect("scenario serializes");
        set_parameter(&mut doc, &self.parameter, value)?;
        let s: Scenario = serde_json::from_value(doc)
            .map_err(|e| CliError::Config(format!("parameter {}: {e}", self.parameter)))?;
        s.validate()
            .map_err(|e| e.at(&format!("parameter {} = {value}", self.parameter)))?;
        Ok(s)
    }
}

fn set_parameter(
    doc: &mut serde_json::Value,
    path: &str,
    value: &serde_json::Value,
) -> CliResult<()> {
    let unresolved = || {
        CliError::Config(format!(
            "sweep parameter `{path}` does not resolve against the base scenario"
        ))
    };
    if path == "model.populations" {
        let levels = doc
            .pointer_mut("/model/levels")
            .and_then(|l| l.as_array_mut())
            .ok_or_else(unresolved)?;
        let pops = value.as_array().ok_or_else(|| {
            CliError::Config(format!(
                "model.populations values must be arrays (got {value})"
            ))
        })?;
        if pops.len() != levels.len() {
            return Err(CliError::Config(format!(
                "model.populations value has {} entries for {} levels",
                pops.len(),
                levels.len()
            )));
        }
        for (level, p) in levels.iter_mut().zip(pops) {
            level["population"] = p.clone();
        }
        return Ok(());
    }
    let mut node = doc;
    for segment in path.split('.') {
        node = match node {
            serde_json::Value::Object(map) => map.get_mut(segment).ok_or_else(unresolved)?,
            serde_json::Value::Array(items) => segment
                .parse::<usize>()
                .ok()
                .and_then(|i| items.get_mut(i))
                .ok_or_else(unresolved)?,
            _ => return Err(unresolved()),
        };
    }
    *node = value.clone();
    Ok(())
}
