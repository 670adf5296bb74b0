//! Shared solver run reports.

use serde::{Deserialize, Serialize};

use crate::rap::{Allocation, IntervalFitness};

/// Best-so-far fitness after one optimizer step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    /// Generation or iteration index, starting at 0 for the initial
    /// population or swarm.
    pub step: usize,
    pub fitness: IntervalFitness,
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverReport {
    /// Solver name, e.g. `"ga"` or `"pso-gbest"`.
    pub solver: String,
    pub best: Allocation,
    pub fitness: IntervalFitness,
    /// Best-so-far per step; non-worsening under the gating policy.
    pub trace: Vec<TraceRow>,
    /// Parameters the run used, as loosely typed JSON.
    pub params: serde_json::Value,
    pub seed: u64,
    /// RNG algorithm identifier.
    pub rng: String,
    pub wall_ms: u64,
}
