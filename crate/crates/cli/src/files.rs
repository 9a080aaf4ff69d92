//! Reading and writing the on-disk artifacts.

use std::fs;
use std::path::{Path, PathBuf};

use qwalk_core::keyfile::{
    config_from_json, config_to_json, secret_key_from_json, secret_key_to_json,
};
use qwalk_core::qws::{format_qws, parse_qws};
use qwalk_core::{QuantumState, SecretKey, WalkConfig};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const SECRET_KEY_FILE: &str = "secret_key.json";
pub const PUBLIC_KEY_FILE: &str = "public_key.qws";

/// `<state>.json`
pub fn sidecar_path(state_path: &Path) -> PathBuf {
    let mut s = state_path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn format_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Format(format!("{}: {e}", path.display()))
}

/// A normalized state from a QWS1 file.
pub fn read_state(path: &Path) -> CliResult<QuantumState> {
    let state = parse_qws(&read(path)?).map_err(|e| format_err(path, e))?;
    state.check_normalized().map_err(|e| format_err(path, e))?;
    Ok(state)
}

/// A state and the public parameters from its sidecar, checked against
/// each other.
pub fn read_state_with_sidecar(path: &Path) -> CliResult<(QuantumState, WalkConfig)> {
    let state = read_state(path)?;
    let side = sidecar_path(path);
    let config = config_from_json(&read(&side)?).map_err(|e| format_err(&side, e))?;
    if config.n_positions() != state.n_positions() {
        return Err(format_err(
            path,
            format!(
                "state has N = {} but sidecar says N = {}",
                state.n_positions(),
                config.n_positions()
            ),
        ));
    }
    Ok((state, config))
}

pub fn write_state_with_sidecar(
    path: &Path,
    state: &QuantumState,
    config: &WalkConfig,
) -> CliResult<()> {
    write(path, &format_qws(state))?;
    write(
        &sidecar_path(path),
        &format!("{}\n", config_to_json(config)),
    )
}

pub fn read_secret_key(path: &Path) -> CliResult<(WalkConfig, SecretKey)> {
    secret_key_from_json(&read(path)?).map_err(|e| format_err(path, e))
}

pub fn write_secret_key(path: &Path, config: &WalkConfig, sk: &SecretKey) -> CliResult<()> {
    write(path, &format!("{}\n", secret_key_to_json(config, sk)))
}

/// Any subset of the public parameters, as found in a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub n: Option<u32>,
    #[serde(rename = "N")]
    pub n_positions: Option<usize>,
    pub d: Option<u64>,
    pub t_min: Option<usize>,
    pub t_max: Option<usize>,
}

pub fn read_partial_config(path: &Path) -> CliResult<PartialConfig> {
    serde_json::from_str(&read(path)?).map_err(|e| format_err(path, e))
}
