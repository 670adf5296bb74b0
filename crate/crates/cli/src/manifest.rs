//! Run manifest: everything needed to replay a command and audit its output.

use std::path::Path;

use serde::{Deserialize, Serialize};

use oic_reliability::interval::Interval;
use oic_reliability::mc::RNG_ALGORITHM;

use crate::CliResult;

/// Reference-value check attached to a manifest when `--reference` is given.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReferenceCheck {
    /// The externally supplied value being checked against.
    pub reference: Interval,
    /// What this build computed for the same allocation.
    pub computed: Interval,
    /// max(|lo - lo'|, |hi - hi'|).
    pub max_deviation: f64,
    pub within_0_01: bool,
}

impl ReferenceCheck {
    pub fn new(reference: Interval, computed: Interval) -> Self {
        let max_deviation = (reference.lo() - computed.lo())
            .abs()
            .max((reference.hi() - computed.hi()).abs());
        Self {
            reference,
            computed,
            max_deviation,
            within_0_01: max_deviation <= 0.01,
        }
    }
}

/// Written as `manifest.json` next to every artifact a command produces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub command: String,
    pub subcommand: String,
    pub instance: String,
    pub params: serde_json::Value,
    pub seed: u64,
    pub rng: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_index: Option<usize>,
    pub mission_interval: Interval,
    pub outputs: Vec<String>,
    pub wall_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<ReferenceCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, instance: &Path, mission: Interval) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: full_command_line(),
            subcommand: subcommand.to_string(),
            instance: instance.display().to_string(),
            params: serde_json::Value::Null,
            seed: 0,
            rng: RNG_ALGORITHM.to_string(),
            set_index: None,
            mission_interval: mission,
            outputs: Vec::new(),
            wall_ms: 0,
            reference: None,
            notes: Vec::new(),
        }
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        crate::write_file(path, &text)
    }
}

fn full_command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}
