//! Declarative run configurations (TOML). Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stationarity::farima::DEFAULT_BURN_IN;
use stationarity::harness::{Experiment, ModelSpec};
use stationarity::TestMethod;

use crate::CliError;

fn default_alpha() -> f64 {
    0.05
}

fn default_method() -> TestMethod {
    TestMethod::Bootstrap
}

fn default_b() -> usize {
    200
}

fn default_p_max() -> usize {
    10
}

fn default_burn_in() -> usize {
    DEFAULT_BURN_IN
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestConfig {
    pub input: PathBuf,
    pub n: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_method")]
    pub method: TestMethod,
    #[serde(default = "default_b")]
    pub b: usize,
    #[serde(default = "default_p_max")]
    pub p_max: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub model: ModelSpec,
    pub t: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_burn_in")]
    pub burn_in: usize,
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Directory receiving `<name>.report.json` and the CSV table.
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    #[serde(default)]
    pub name: Option<String>,
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Remark32Config {
    #[serde(default = "default_remark_n")]
    pub n: usize,
    #[serde(default = "default_remark_m")]
    pub m: usize,
    #[serde(default = "default_remark_reps")]
    pub reps: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

fn default_remark_n() -> usize {
    128
}

fn default_remark_m() -> usize {
    8
}

fn default_remark_reps() -> usize {
    20_000
}

/// A complete run description, selected by its `command` key.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RunConfig {
    Test(TestConfig),
    Simulate(SimulateConfig),
    Experiment(ExperimentConfig),
    Power(ExperimentConfig),
    Remark32Check(Remark32Config),
}

pub fn read_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Resolves a path in a config file relative to the file's directory.
pub fn relative_to(config: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match config.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => dir.join(p),
        _ => p.to_path_buf(),
    }
}
