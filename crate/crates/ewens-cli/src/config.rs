//! Config-file loading and stable digesting.

use std::fs;
use std::path::Path;

use anyhow::Context;
use ewens::montecarlo::ExperimentConfig;
use sha2::{Digest, Sha256};

/// Loads a TOML experiment config; `None` means the built-in default grid.
/// Missing keys fall back to the defaults, unknown keys are rejected.
pub fn load_config(path: Option<&Path>) -> anyhow::Result<ExperimentConfig> {
    let Some(path) = path else {
        return Ok(ExperimentConfig::default());
    };
    let text =
        fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

/// Hex SHA-256 of the config's canonical JSON form. Stable across platforms
/// and across input orderings of the same canonicalized config.
pub fn config_digest(cfg: &ExperimentConfig) -> String {
    let bytes = serde_json::to_vec(cfg).expect("config serializes to JSON");
    let digest = Sha256::digest(&bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
