//! Optional JSON configuration; command-line flags win over it.

use std::path::Path;

use serde::{Deserialize, Serialize};
use stabscan::InnerProduct;

use crate::render::RenderSpec;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum IpChoice {
    #[default]
    Identity,
    Hexagonal,
}

impl IpChoice {
    pub fn build(self) -> InnerProduct {
        match self {
            IpChoice::Identity => InnerProduct::identity(),
            IpChoice::Hexagonal => InnerProduct::hexagonal(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub depth: Option<u32>,
    pub trials: Option<u64>,
    pub max_steps: Option<u64>,
    pub seed: Option<u64>,
    pub depths: Option<Vec<u32>>,
    pub ip: Option<IpChoice>,
    pub window: Option<f64>,
    pub render: Option<RenderSpec>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {0}: {1}")]
    Io(String, std::io::Error),
    #[error("bad config {0}: {1}")]
    Parse(String, serde_json::Error),
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| ConfigError::Parse(path.display().to_string(), e))
    }
}
