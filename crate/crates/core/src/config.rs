//! Tunables, loadable from a TOML file. Every section and key is optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::autoplay::Perspective;
use crate::event::Key;
use crate::region::{PlaybackTiming, SelectionFlow};
use crate::salience::SalienceConfig;
use crate::sonify::SonifierConfig;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    pub rows: usize,
    pub cols: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { rows: 20, cols: 20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct SelectionConfig {
    pub flow: SelectionFlow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AutoplayConfig {
    pub interval_s: f64,
    pub perspective: Perspective,
}

impl Default for AutoplayConfig {
    fn default() -> Self {
        Self {
            interval_s: 0.18,
            perspective: Perspective::XRows,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderConfig {
    pub sample_rate: u32,
    /// Seed of the reverb impulse response noise.
    pub ir_seed: u64,
    /// Linear scale applied to every tone before mixing.
    pub level: f64,
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self {
            sample_rate: 48_000,
            ir_seed: 0x5eed,
            level: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub grid: GridConfig,
    pub sonification: SonifierConfig,
    pub salience: SalienceConfig,
    pub selection: SelectionConfig,
    pub playback: PlaybackTiming,
    pub autoplay: AutoplayConfig,
    pub render: RenderConfig,
    /// Extra physical-key bindings, e.g. `s = "D"`.
    pub keys: BTreeMap<String, Key>,
}

fn positive(v: f64) -> bool {
    v > 0.0
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: Config = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |msg: &str| Err(ConfigError::Invalid(msg.to_string()));
        if self.grid.rows == 0 || self.grid.cols == 0 {
            return fail("grid rows and cols must be at least 1");
        }
        if !self.salience.is_valid() {
            return fail("salience counts must be positive and threshold_fraction in (0, 1)");
        }
        if !positive(self.autoplay.interval_s) {
            return fail("autoplay interval_s must be positive");
        }
        if self.render.sample_rate < 8000 {
            return fail("render sample_rate must be at least 8000");
        }
        let s = &self.sonification;
        if !(s.min_hz > 0.0 && s.max_hz > s.min_hz) {
            return fail("sonification needs 0 < min_hz < max_hz");
        }
        if !positive(s.focus_tone_s) {
            return fail("sonification focus_tone_s must be positive");
        }
        if self.playback.item_ms == 0 || self.playback.aggregate_ms == 0 {
            return fail("playback durations must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_all_defaults() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn partial_overrides() {
        let c = Config::from_toml(
            r#"
            [grid]
            rows = 10

            [sonification]
            max_hz = 1000.0
            waveform_driver = "x_position"

            [selection]
            flow = "anchor_on_enter"

            [keys]
            s = "D"
            "#,
        )
        .unwrap();
        assert_eq!(c.grid, GridConfig { rows: 10, cols: 20 });
        assert_eq!(c.sonification.max_hz, 1000.0);
        assert_eq!(c.sonification.min_hz, 200.0);
        assert_eq!(c.selection.flow, SelectionFlow::AnchorOnEnter);
        assert_eq!(c.keys["s"], Key::Select);
    }

    #[test]
    fn invalid_values_rejected() {
        assert!(Config::from_toml("[grid]\nrows = 0").is_err());
        assert!(Config::from_toml("[salience]\nthreshold_fraction = 1.5").is_err());
        assert!(Config::from_toml("[render]\nsample_rate = 100").is_err());
        assert!(Config::from_toml("[keys]\nq = \"Bogus\"").is_err());
    }
}
