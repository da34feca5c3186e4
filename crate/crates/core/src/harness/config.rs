use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::MetricsConfig;
use crate::sim::{SimConfig, SocialForceParams};

/// Everything a run depends on. This is both the `--config` file format and
/// the `config_echo` block of every report, so an echoed config can be fed
/// straight back in.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub metrics: MetricsConfig,
    pub sim: SimConfig,
    pub social_force: SocialForceParams,
}

impl BenchConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: BenchConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.metrics.validate()?;
        self.sim.validate()?;
        self.social_force.validate()
    }
}
