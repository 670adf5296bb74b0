//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "oic",
    version,
    about = "Reliability of one-shot systems backed by warm-standby one-instruction cores"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an allocation's interval reliability and startup cost.
    Eval(EvalArgs),
    /// Cross-check the closed form against Monte Carlo simulation.
    Mc(McArgs),
    /// Optimize an allocation with the GA or a PSO variant.
    Solve(SolveArgs),
    /// Sweep one GA parameter and chart the outcomes.
    Sweep(SweepArgs),
    /// Chart time-dependent system reliability per spare-pool size.
    Curve(CurveArgs),
}

/// Flags shared by every command that reads an instance.
#[derive(Debug, Args, Clone)]
pub struct InstanceArgs {
    /// Instance description (JSON).
    #[arg(long)]
    pub instance: PathBuf,
    /// Pick mission-interval candidate set <SET> (1-based) from the sets
    /// file instead of the instance's own candidates.
    #[arg(long)]
    pub set: Option<usize>,
    /// Candidate-sets file; defaults to `interval_sets.json` next to the
    /// instance.
    #[arg(long)]
    pub sets: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Allocation dump to evaluate.
    #[arg(long)]
    pub alloc: PathBuf,
    /// Reference interval "lo,hi" to compare against; deviations are
    /// recorded in the manifest.
    #[arg(long)]
    pub reference: Option<String>,
    /// Directory for the run manifest.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AtPoint {
    /// Lower mission endpoint.
    Lo,
    /// Interval midpoint.
    Mid,
    /// Upper mission endpoint.
    Hi,
}

#[derive(Debug, Args)]
pub struct McArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Allocation dump; defaults to every supported copy available with no
    /// startups.
    #[arg(long)]
    pub alloc: Option<PathBuf>,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where in the mission interval to simulate.
    #[arg(long, value_enum, default_value_t = AtPoint::Mid)]
    pub at: AtPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    Ga,
    Pso,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantKind {
    Gbest,
    Lbest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetKind {
    /// Desk-scale defaults (swarm 30, 50 iterations).
    ExampleOne,
    /// Larger-instance defaults (swarm 50, 100 iterations).
    ExampleTwo,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, value_enum)]
    pub solver: SolverKind,
    /// PSO attraction topology.
    #[arg(long, value_enum, default_value_t = VariantKind::Gbest)]
    pub variant: VariantKind,
    /// PSO parameter preset; flags and params files override it.
    #[arg(long, value_enum)]
    pub preset: Option<PresetKind>,
    /// Solver parameters as a JSON file (same schema as the manifest's
    /// params block).
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Master seed; per-run seeds derive from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent runs; the best result is reported.
    #[arg(long, default_value_t = 1)]
    pub runs: usize,
    /// Skip the GA primary phase (plain random initial population).
    #[arg(long)]
    pub no_primary_phase: bool,
    /// Stop when the best solution stalls.
    #[arg(long)]
    pub early_stop: bool,
    /// Directory for manifest, trace CSV, allocation dump, and chart.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    MGen,
    PSize,
    PCross,
    PMutat,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::MGen => "m_gen",
            SweepParam::PSize => "p_size",
            SweepParam::PCross => "p_cross",
            SweepParam::PMutat => "p_mutat",
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// GA parameter to sweep.
    #[arg(long, value_enum)]
    pub param: SweepParam,
    /// Comma-separated parameter values.
    #[arg(long)]
    pub values: String,
    /// Repetitions per value with derived seeds.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for the sweep CSV and chart.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Conventional cores whose failures the spares absorb.
    #[arg(long, default_value_t = 2)]
    pub cores: usize,
    /// Comma-separated spare-pool sizes, each a prefix of the instance's
    /// OIC list. Empty means all pool sizes from 1 to m.
    #[arg(long, default_value = "")]
    pub oics: String,
    /// Failure rate per logical element, in failures per hour.
    #[arg(long, default_value_t = 1e-9)]
    pub element_scale: f64,
    /// Erlang shape override; defaults to pool size + 1.
    #[arg(long)]
    pub beta: Option<u32>,
    /// Curve horizon in hours.
    #[arg(long, default_value_t = 1.0e5)]
    pub t_max: f64,
    /// Sample count along the horizon.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Directory for the curve CSV and chart.
    #[arg(long)]
    pub out: PathBuf,
}
