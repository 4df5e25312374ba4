//! JSON run configuration.
//!
//! ```json
//! {
//!   "n": 2,
//!   "seed": 42,
//!   "augmentations": [
//!     {"kind": "stretch", "magnitude": 1.4},
//!     {"kind": "noise", "level": 0.5},
//!     {"kind": "reverse"}
//!   ],
//!   "mel": {"n_fft": 1024, "hop": 512, "n_mels": 64, "resize": "32x32"}
//! }
//! ```
//! Every key is optional. Without `augmentations` the default nine-kind space
//! is used.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use wavaug_core::policy::{space_from_config, AugmentationSetting, SpaceConfig};
use wavaug_core::{MelParams, SearchSpace};

use crate::error::{Error, Result};

pub const SCHEMA_HELP: &str = r#"config schema (JSON, every key optional):
  n              integer   policy size (default 2)
  seed           integer   master seed (default 0)
  augmentations  array     enabled kinds; omit for the default nine
    kind         string    noise|pitch|stretch|pad|clip|reverse|bpf|gain|time_mask|trim|bsf
    magnitude    number    value in the kind's natural unit
    level        number    0..1, mapped onto the kind's range (exclusive with magnitude)
  mel            object    n_fft, hop, n_mels, fmin, fmax, resize ("RxC" or [R, C])"#;

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub augmentations: Option<Vec<AugmentationEntry>>,
    pub mel: Option<MelConfig>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AugmentationEntry {
    pub kind: String,
    pub magnitude: Option<f64>,
    pub level: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MelConfig {
    pub n_fft: Option<usize>,
    pub hop: Option<usize>,
    pub n_mels: Option<usize>,
    pub fmin: Option<f64>,
    pub fmax: Option<f64>,
    pub resize: Option<ResizeSpec>,
}

impl MelConfig {
    /// The defaults with this block's overrides applied.
    pub fn params(&self) -> MelParams {
        let mut p = MelParams::default();
        p.n_fft = self.n_fft.unwrap_or(p.n_fft);
        p.hop = self.hop.unwrap_or(p.hop);
        p.n_mels = self.n_mels.unwrap_or(p.n_mels);
        p.fmin = self.fmin.unwrap_or(p.fmin);
        p.fmax = self.fmax.or(p.fmax);
        p
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(try_from = "ResizeRepr")]
pub struct ResizeSpec {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ResizeRepr {
    Text(String),
    Pair([usize; 2]),
}

impl TryFrom<ResizeRepr> for ResizeSpec {
    type Error = String;

    fn try_from(r: ResizeRepr) -> std::result::Result<Self, String> {
        match r {
            ResizeRepr::Text(s) => s.parse(),
            ResizeRepr::Pair([rows, cols]) => ResizeSpec::new(rows, cols),
        }
    }
}

impl ResizeSpec {
    pub fn new(rows: usize, cols: usize) -> std::result::Result<Self, String> {
        if rows == 0 || cols == 0 {
            return Err(format!(
                "resize dimensions must be at least 1, got {rows}x{cols}"
            ));
        }
        Ok(Self { rows, cols })
    }
}

impl Default for ResizeSpec {
    fn default() -> Self {
        Self { rows: 32, cols: 32 }
    }
}

impl FromStr for ResizeSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (r, c) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected RxC, got {s:?}"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| format!("expected RxC, got {s:?}"))
        };
        ResizeSpec::new(parse(r)?, parse(c)?)
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn space(&self) -> Result<SearchSpace> {
        let cfg = SpaceConfig {
            augmentations: self.augmentations.as_ref().map(|list| {
                list.iter()
                    .map(|a| AugmentationSetting {
                        kind: a.kind.clone(),
                        magnitude: a.magnitude,
                        level: a.level,
                    })
                    .collect()
            }),
        };
        Ok(space_from_config(&cfg)?)
    }

    /// Mel parameters with config overrides applied to the defaults.
    pub fn mel_params(&self) -> MelParams {
        self.mel
            .as_ref()
            .map_or_else(MelParams::default, MelConfig::params)
    }

    pub fn resize(&self) -> Option<ResizeSpec> {
        self.mel.as_ref().and_then(|m| m.resize)
    }
}
