//! JSON forms of the public parameters and the secret key.
//!
//! A secret-key file is one object `{n, N, d, t_min, t_max, k, t, l, s}`
//! with `s` either `"L"` or `"R"`. Public-key and cipher sidecars carry only
//! `{n, N, d, t_min, t_max}`.

use serde::{Deserialize, Serialize};

use crate::error::{QwalkError, Result};
use crate::protocol::{SecretKey, WalkConfig};
use crate::state::CoinLabel;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigRepr {
    n: u32,
    #[serde(rename = "N")]
    n_positions: usize,
    d: u64,
    t_min: usize,
    t_max: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecretKeyRepr {
    n: u32,
    #[serde(rename = "N")]
    n_positions: usize,
    d: u64,
    t_min: usize,
    t_max: usize,
    k: u64,
    t: usize,
    l: u64,
    s: CoinLabel,
}

impl From<&WalkConfig> for ConfigRepr {
    fn from(c: &WalkConfig) -> Self {
        Self {
            n: c.n(),
            n_positions: c.n_positions(),
            d: c.d(),
            t_min: c.t_min(),
            t_max: c.t_max(),
        }
    }
}

impl Serialize for WalkConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WalkConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ConfigRepr::deserialize(d)?;
        WalkConfig::new(r.n, r.n_positions, r.d, r.t_min, r.t_max).map_err(serde::de::Error::custom)
    }
}

fn json_error(e: serde_json::Error) -> QwalkError {
    QwalkError::Format {
        line: e.line(),
        msg: e.to_string(),
    }
}

pub fn config_to_json(config: &WalkConfig) -> String {
    serde_json::to_string(config).expect("config serializes")
}

/// Parses a sidecar. Validation failures surface as [`QwalkError::Format`].
pub fn config_from_json(text: &str) -> Result<WalkConfig> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn secret_key_to_json(config: &WalkConfig, sk: &SecretKey) -> String {
    let repr = SecretKeyRepr {
        n: config.n(),
        n_positions: config.n_positions(),
        d: config.d(),
        t_min: config.t_min(),
        t_max: config.t_max(),
        k: sk.k,
        t: sk.t,
        l: sk.l,
        s: sk.s,
    };
    serde_json::to_string(&repr).expect("secret key serializes")
}

pub fn secret_key_from_json(text: &str) -> Result<(WalkConfig, SecretKey)> {
    let r: SecretKeyRepr = serde_json::from_str(text).map_err(json_error)?;
    let config = WalkConfig::new(r.n, r.n_positions, r.d, r.t_min, r.t_max)?;
    let sk = SecretKey::new(r.k, r.t, r.l, r.s, &config)?;
    Ok((config, sk))
}
