//! Entry points for in-process callers (language bindings, data loaders).
//!
//! Configuration arrives as JSON text in the same schema the CLI reads, and
//! the numerics are the ones `augment`, `preview` and `features` use.

use wavaug_core::policy::{augment_with_seed, DEFAULT_N};
use wavaug_core::{FeatureImage, Policy, Waveform};

use crate::config::{Config, MelConfig};
use crate::error::{Error, Result};

/// Sample a policy from `seed` under `config_json` and apply it, exactly as
/// one `augment` work item with that seed would.
pub fn apply_config_json(w: &Waveform, config_json: &str, seed: u64) -> Result<(Policy, Waveform)> {
    let cfg = Config::from_json(config_json)?;
    let space = cfg.space()?;
    Ok(augment_with_seed(
        w,
        &space,
        cfg.n.unwrap_or(DEFAULT_N),
        seed,
    )?)
}

/// dB mel image for `w`, resized to 32x32 unless the config says otherwise.
///
/// Accepts either a bare `mel` block or a full config containing one.
pub fn mel_features_json(w: &Waveform, mel_config_json: &str) -> Result<FeatureImage> {
    let mel: MelConfig = match serde_json::from_str(mel_config_json) {
        Ok(m) => m,
        Err(_) => Config::from_json(mel_config_json)
            .map_err(|e| Error::Config(format!("not a mel block or a config: {e}")))?
            .mel
            .unwrap_or_default(),
    };
    let resize = mel.resize.unwrap_or_default();
    Ok(wavaug_core::dsp::mel_features(
        w,
        &mel.params(),
        Some((resize.rows, resize.cols)),
    )?)
}
