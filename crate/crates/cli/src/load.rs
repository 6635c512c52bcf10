use std::path::Path;

use sonoterrain_core::config::Config;
use sonoterrain_core::data::{generate_synthetic, parse_dataset, SyntheticKind, SyntheticParams};
use sonoterrain_core::SurfaceDataset;
use thiserror::Error;

use crate::session::SessionScript;

/// Anything that goes wrong before a session starts.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("dataset {name}")]
    Dataset {
        name: String,
        source: sonoterrain_core::DataError,
    },
    #[error("config {path}")]
    Config {
        path: String,
        source: sonoterrain_core::config::ConfigError,
    },
    #[error("script {path}: {reason}")]
    Script { path: String, reason: String },
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A built-in name (`gaussian`, `sinusoidal`, `benzene_like`) or a CSV path.
pub fn load_dataset(reference: &str) -> Result<SurfaceDataset, LoadError> {
    if let Ok(kind) = reference.parse::<SyntheticKind>() {
        return generate_synthetic(kind, &SyntheticParams::for_kind(kind)).map_err(|source| LoadError::Dataset {
            name: reference.to_string(),
            source,
        });
    }
    let path = Path::new(reference);
    let text = read(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| reference.to_string());
    parse_dataset(&text)
        .map(|d| d.with_source_name(name))
        .map_err(|source| LoadError::Dataset {
            name: reference.to_string(),
            source,
        })
}

pub fn load_config(path: Option<&Path>) -> Result<Config, LoadError> {
    let Some(path) = path else {
        return Ok(Config::default());
    };
    Config::from_toml(&read(path)?).map_err(|source| LoadError::Config {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_script(path: &Path) -> Result<SessionScript, LoadError> {
    let fail = |reason: String| LoadError::Script {
        path: path.display().to_string(),
        reason,
    };
    let script: SessionScript = serde_json::from_str(&read(path)?).map_err(|e| fail(e.to_string()))?;
    script.validate().map_err(fail)?;
    Ok(script)
}
