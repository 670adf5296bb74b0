//! Mission-interval candidate sets and the per-run interval selection.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use oic_reliability::interval::{Interval, OrderPolicy};
use oic_reliability::rap::{max_interval_in_set, RapInstance};
use oic_reliability::Error as CoreError;

use crate::args::InstanceArgs;
use crate::CliResult;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalSet {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub intervals: Vec<Interval>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntervalSets {
    pub sets: Vec<IntervalSet>,
}

pub fn load_sets(path: &Path) -> CliResult<IntervalSets> {
    let text = crate::read_to_string(path)?;
    let sets: IntervalSets = serde_json::from_str(&text)
        .map_err(|e| CoreError::Parse(format!("{}: {e}", path.display())))?;
    if sets.sets.is_empty() {
        return Err(CoreError::Parse(format!("{}: no sets", path.display())).into());
    }
    Ok(sets)
}

/// The mission candidates a run draws from, and where they came from.
#[derive(Debug, Clone)]
pub struct MissionChoice {
    /// Best candidate under the combined order; the interval runs use.
    pub mission: Interval,
    pub candidates: Vec<Interval>,
    /// 1-based index into the sets file, when one was used.
    pub set_index: Option<usize>,
    pub set_name: Option<String>,
}

/// Loads the instance and resolves the mission interval: the instance's own
/// candidates by default, or set `--set` from the sets file.
pub fn load_instance_and_mission(args: &InstanceArgs) -> CliResult<(RapInstance, MissionChoice)> {
    let text = crate::read_to_string(&args.instance)?;
    let inst = RapInstance::from_json(&text)?;

    let (candidates, set_index, set_name) = match args.set {
        None => (inst.r_intervals.clone(), None, None),
        Some(k) => {
            let sets_path = match &args.sets {
                Some(p) => p.clone(),
                None => default_sets_path(&args.instance),
            };
            let sets = load_sets(&sets_path)?;
            if k == 0 || k > sets.sets.len() {
                return Err(CoreError::InvalidConfig(format!(
                    "--set {k} outside 1..={}",
                    sets.sets.len()
                ))
                .into());
            }
            let set = &sets.sets[k - 1];
            (set.intervals.clone(), Some(k), Some(set.name.clone()))
        }
    };

    let mission = max_interval_in_set(&candidates, OrderPolicy::Combined)?;
    Ok((
        inst,
        MissionChoice {
            mission,
            candidates,
            set_index,
            set_name,
        },
    ))
}

fn default_sets_path(instance: &Path) -> PathBuf {
    instance
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .join("interval_sets.json")
}

impl MissionChoice {
    /// One-line provenance statement for printouts and manifests.
    pub fn describe(&self) -> String {
        let source = match (&self.set_index, &self.set_name) {
            (Some(k), Some(name)) => format!("set {k} ({name})"),
            _ => "instance candidates".to_string(),
        };
        format!(
            "mission interval [{:.6}, {:.6}] = best of {} candidates from {source} (combined order)",
            self.mission.lo(),
            self.mission.hi(),
            self.candidates.len()
        )
    }
}
