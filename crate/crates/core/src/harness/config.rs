//! Experiment configuration, read from TOML.
//!
//! ```toml
//! family = "lamplighter"   # or "integers"
//! max_n = 6
//! output = "table.csv"     # optional
//! ```

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::hall::{GroupElement, QuotientSpec, DEFAULT_RADIUS_CAP};

/// Which group is scanned, and with which witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessFamily {
    /// `Z` as the `t`-powers, separated by `Z/p`.
    Integers,
    /// `Z wr Z`, separated by the lamplighter quotients over split primes.
    Lamplighter,
}

impl WitnessFamily {
    pub fn group(&self) -> QuotientSpec {
        QuotientSpec::TrivialCenter
    }

    /// Whether `g` (an element of [`Self::group`]) belongs to the scanned set.
    pub fn admits(&self, g: &GroupElement) -> bool {
        match self {
            WitnessFamily::Integers => g.a_part().is_empty(),
            WitnessFamily::Lamplighter => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: WitnessFamily,
    pub max_n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl ExperimentConfig {
    pub fn new(family: WitnessFamily, max_n: u32) -> Self {
        ExperimentConfig { family, max_n, output: None }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_n > DEFAULT_RADIUS_CAP {
            return Err(Error::Config(format!("max_n = {} exceeds the ball cap {DEFAULT_RADIUS_CAP}", self.max_n)));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON encoding, hex.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serialises");
        hex::encode(Sha256::digest(&bytes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let cfg = ExperimentConfig::from_toml("family = \"lamplighter\"\nmax_n = 4\n").unwrap();
        assert_eq!(cfg, ExperimentConfig::new(WitnessFamily::Lamplighter, 4));
        assert!(ExperimentConfig::from_toml("family = \"lamplighter\"\nmax_n = 40\n").is_err());
        assert!(ExperimentConfig::from_toml("family = \"free\"\nmax_n = 4\n").is_err());
        assert!(ExperimentConfig::from_toml("family = \"integers\"\nmax_n = 4\nextra = 1\n").is_err());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = ExperimentConfig::new(WitnessFamily::Integers, 5);
        assert_eq!(a.hash(), a.clone().hash());
        assert_eq!(a.hash().len(), 64);
        assert_ne!(a.hash(), ExperimentConfig::new(WitnessFamily::Integers, 6).hash());
    }
}
