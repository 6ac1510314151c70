//! Experiment configuration: a JSON file with `model`, `budget`, `noise`,
//! `run` and an optional `sweep` block, plus `key=value` overrides.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use spectral_fe::lattice::{build_hamiltonian, Hamiltonian, LatticeGraph, ModelSpec};
use spectral_fe::plan::{ErrorBudget, PlanLimits, DEFAULT_MAX_SAMPLES};
use spectral_fe::NoiseModel;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config `{path}`: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("config is not valid JSON: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

fn field(path: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        path: path.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelBlock,
    pub budget: BudgetBlock,
    #[serde(default = "exact_noise")]
    pub noise: NoiseModel,
    #[serde(default)]
    pub run: RunBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepBlock>,
}

fn exact_noise() -> NoiseModel {
    NoiseModel::Exact
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Ising,
    Xxz,
    Free,
    Synthetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Chain,
    Grid,
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelBlock {
    pub model: ModelKind,
    pub n: usize,
    #[serde(default = "default_lattice")]
    pub lattice: LatticeKind,
    #[serde(default = "default_boundary")]
    pub boundary: Boundary,
    /// Grid rows; columns are `n / rows`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(rename = "Jz", default, skip_serializing_if = "Option::is_none")]
    pub jz: Option<f64>,
    #[serde(rename = "Jx", default, skip_serializing_if = "Option::is_none")]
    pub jx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    /// `[[energy, degeneracy], …]` for synthetic spectra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<(f64, usize)>>,
}

fn default_lattice() -> LatticeKind {
    LatticeKind::Chain
}

fn default_boundary() -> Boundary {
    Boundary::Open
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetBlock {
    pub beta: f64,
    pub gamma: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

fn default_epsilon() -> f64 {
    0.1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunBlock {
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
    #[serde(default)]
    pub use_bandwidth_bound: bool,
    #[serde(default)]
    pub include_l0_variance: bool,
    #[serde(default)]
    pub force_large_n: bool,
    #[serde(default = "default_max_samples")]
    pub max_samples: u64,
    #[serde(default = "default_dos_points")]
    pub dos_points: usize,
    #[serde(default = "default_max_order")]
    pub lemma_max_order: u32,
}

fn default_trials() -> usize {
    1000
}
fn default_max_samples() -> u64 {
    DEFAULT_MAX_SAMPLES
}
fn default_dos_points() -> usize {
    spectral_fe::estimate::DEFAULT_DOS_POINTS
}
fn default_max_order() -> u32 {
    60
}

impl Default for RunBlock {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: default_trials(),
            output_dir: None,
            use_bandwidth_bound: false,
            include_l0_variance: false,
            force_large_n: false,
            max_samples: default_max_samples(),
            dos_points: default_dos_points(),
            lemma_max_order: default_max_order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub spins: Vec<usize>,
    /// Bandwidth rule `ΔE = bandwidth_per_spin · n`.
    #[serde(default = "default_per_spin")]
    pub bandwidth_per_spin: f64,
}

fn default_per_spin() -> f64 {
    1.0
}

/// Parses a config, applies `a.b.c=value` overrides, and validates it.
pub fn load(text: &str, overrides: &[String]) -> Result<(ExperimentConfig, String), ConfigError> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    for o in overrides {
        apply_override(&mut value, o)?;
    }
    let text = value.to_string();
    let de = &mut serde_json::Deserializer::from_str(&text);
    let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        field(&path, e.into_inner().to_string())
    })?;
    config.validate()?;
    let hash = config_hash(&config);
    Ok((config, hash))
}

fn apply_override(root: &mut Value, spec: &str) -> Result<(), ConfigError> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| field(spec, "override must look like key.path=value"))?;
    let parsed: Value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| field(&parts[..i].join("."), "cannot override inside a non-object"))?;
        if i + 1 == parts.len() {
            obj.insert(part.to_string(), parsed);
            return Ok(());
        }
        node = obj.entry(part.to_string()).or_insert_with(|| Value::Object(Default::default()));
    }
    Err(field(key, "empty override key"))
}

/// SHA-256 of the canonical (validated, defaults filled) config.
pub fn config_hash(config: &ExperimentConfig) -> String {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn positive(path: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(field(path, format!("must be positive and finite, got {v}")))
    }
}

fn need(path: &str, v: Option<f64>) -> Result<f64, ConfigError> {
    let v = v.ok_or_else(|| field(path, "required for this model"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(field(path, format!("must be finite, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let m = &self.model;
        if m.n == 0 {
            return Err(field("model.n", "must be at least 1"));
        }
        match m.model {
            ModelKind::Ising => {
                need("model.Jz", m.jz)?;
                need("model.h", m.h)?;
            }
            ModelKind::Xxz => {
                need("model.Jx", m.jx)?;
                need("model.Jz", m.jz)?;
                if m.n > spectral_fe::lattice::DENSE_SPIN_LIMIT {
                    return Err(field(
                        "model.n",
                        format!("XXZ is limited to {} spins", spectral_fe::lattice::DENSE_SPIN_LIMIT),
                    ));
                }
            }
            ModelKind::Free => {
                need("model.h", m.h)?;
            }
            ModelKind::Synthetic => {
                let levels = m.levels.as_ref().ok_or_else(|| field("model.levels", "required for synthetic"))?;
                if levels.is_empty() {
                    return Err(field("model.levels", "must not be empty"));
                }
                for (i, &(e, d)) in levels.iter().enumerate() {
                    if !e.is_finite() || d == 0 {
                        return Err(field(
                            &format!("model.levels[{i}]"),
                            "energy must be finite and degeneracy ≥ 1",
                        ));
                    }
                }
            }
        }
        if m.model != ModelKind::Synthetic && m.model != ModelKind::Free {
            match (m.lattice, m.boundary) {
                (LatticeKind::Chain, Boundary::Periodic) if m.n < 3 => {
                    return Err(field("model.n", "a periodic chain needs at least 3 sites"))
                }
                (LatticeKind::Grid, _) => {
                    let rows = m.rows.ok_or_else(|| field("model.rows", "required for a grid"))?;
                    if rows == 0 || !m.n.is_multiple_of(rows) {
                        return Err(field("model.rows", format!("must divide n = {}", m.n)));
                    }
                }
                _ => {}
            }
        }
        if m.n > spectral_fe::lattice::DIAGONAL_SPIN_LIMIT && m.model != ModelKind::Synthetic {
            return Err(field(
                "model.n",
                format!("at most {} spins", spectral_fe::lattice::DIAGONAL_SPIN_LIMIT),
            ));
        }
        let b = &self.budget;
        positive("budget.beta", b.beta)?;
        positive("budget.gamma", b.gamma)?;
        if !(b.epsilon > 0.0 && b.epsilon < 1.0) {
            return Err(field("budget.epsilon", format!("must lie in (0, 1), got {}", b.epsilon)));
        }
        match self.noise {
            NoiseModel::Shots { repetitions: 0 } => return Err(field("noise.repetitions", "must be at least 1")),
            NoiseModel::AdditiveGaussian { sigma } if !(sigma >= 0.0 && sigma.is_finite()) => {
                return Err(field("noise.sigma", format!("must be non-negative, got {sigma}")))
            }
            _ => {}
        }
        let r = &self.run;
        if r.trials == 0 {
            return Err(field("run.trials", "must be at least 1"));
        }
        if r.dos_points < 2 {
            return Err(field("run.dos_points", "must be at least 2"));
        }
        if r.max_samples == 0 {
            return Err(field("run.max_samples", "must be at least 1"));
        }
        if r.lemma_max_order < 2 {
            return Err(field("run.lemma_max_order", "must be at least 2"));
        }
        if let Some(s) = &self.sweep {
            if s.spins.is_empty() || s.spins.contains(&0) {
                return Err(field("sweep.spins", "needs positive spin counts"));
            }
            positive("sweep.bandwidth_per_spin", s.bandwidth_per_spin)?;
        }
        Ok(())
    }

    pub fn budget(&self) -> ErrorBudget {
        ErrorBudget {
            spins: self.model.n,
            beta: self.budget.beta,
            gamma: self.budget.gamma,
            epsilon: self.budget.epsilon,
        }
    }

    pub fn limits(&self) -> PlanLimits {
        PlanLimits {
            max_samples: self.run.max_samples,
            force: self.run.force_large_n,
            ..PlanLimits::default()
        }
    }

    pub fn hamiltonian(&self) -> spectral_fe::Result<Hamiltonian> {
        let m = &self.model;
        let graph = match (m.model, m.lattice, m.boundary) {
            (ModelKind::Synthetic | ModelKind::Free, _, _) => LatticeGraph::chain(m.n)?,
            (_, LatticeKind::Chain, Boundary::Open) => LatticeGraph::chain(m.n)?,
            (_, LatticeKind::Chain, Boundary::Periodic) => LatticeGraph::ring(m.n)?,
            (_, LatticeKind::Grid, b) => {
                let rows = m.rows.unwrap_or(1);
                LatticeGraph::grid(rows, m.n / rows, b == Boundary::Periodic)?
            }
            (_, LatticeKind::Complete, _) => LatticeGraph::complete(m.n)?,
        };
        let spec = match m.model {
            ModelKind::Ising => ModelSpec::IsingLongitudinal {
                jz: m.jz.unwrap_or_default(),
                h: m.h.unwrap_or_default(),
            },
            ModelKind::Xxz => ModelSpec::Xxz {
                jx: m.jx.unwrap_or_default(),
                jz: m.jz.unwrap_or_default(),
            },
            ModelKind::Free => ModelSpec::FreeSpins {
                h: m.h.unwrap_or_default(),
            },
            ModelKind::Synthetic => ModelSpec::Synthetic {
                levels: m.levels.clone().unwrap_or_default(),
            },
        };
        build_hamiltonian(graph, spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "model": {"model": "ising", "n": 4, "boundary": "periodic", "Jz": 1.0, "h": 0.3},
        "budget": {"beta": 1.0, "gamma": 0.1}
    }"#;

    #[test]
    fn defaults_and_hash() {
        let (c, h) = load(BASE, &[]).unwrap();
        assert_eq!(c.noise, NoiseModel::Exact);
        assert_eq!(c.run.trials, 1000);
        assert_eq!(h.len(), 64);
        let (_, h2) = load(BASE, &["run.seed=0".into()]).unwrap();
        assert_eq!(h, h2, "explicit default hashes the same");
        let (_, h3) = load(BASE, &["run.seed=1".into()]).unwrap();
        assert_ne!(h, h3);
    }

    #[test]
    fn overrides_reach_nested_fields() {
        let (c, _) = load(BASE, &["budget.beta=2.5".into(), "noise={\"kind\":\"shots\",\"repetitions\":9}".into()]).unwrap();
        assert_eq!(c.budget.beta, 2.5);
        assert_eq!(c.noise, NoiseModel::Shots { repetitions: 9 });
        let (c, _) = load(BASE, &["noise.kind=additive_gaussian".into(), "noise.sigma=0.01".into()]).unwrap();
        assert_eq!(c.noise, NoiseModel::AdditiveGaussian { sigma: 0.01 });
    }

    #[test]
    fn errors_name_the_field() {
        let e = load(BASE, &["budget.gamma=0".into()]).unwrap_err().to_string();
        assert!(e.starts_with("budget.gamma:"), "{e}");
        let e = load(BASE, &["model.colour=3".into()]).unwrap_err().to_string();
        assert!(e.contains("model") && e.contains("colour"), "{e}");
        let e = load(BASE, &["model.Jz=\"big\"".into()]).unwrap_err().to_string();
        assert!(e.starts_with("model.Jz"), "{e}");
        assert!(load("{", &[]).is_err());
    }
}
