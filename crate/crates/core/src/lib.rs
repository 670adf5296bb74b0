//! Reliability toolkit for multi-core systems backed by warm-standby
//! one-instruction cores (OICs).
//!
//! The library models a one-shot system: a set of candidate OICs, each with a
//! readiness probability, stands by to execute a fixed repertoire of
//! functions when a conventional core fails. Function activation succeeds
//! with a wakeup probability unless the function was startup-strategized in
//! advance, and execution succeeds with a mission reliability that may be
//! known only as an interval.
//!
//! Modules:
//! - [`interval`]: closed-interval arithmetic and order relations used for
//!   interval-valued mission reliability and fitness comparison.
//! - [`oss`]: the one-shot-system reliability model, its special-case
//!   reductions, and per-function reliability.
//! - [`erlang`]: Erlang failure-time model, time-dependent reliability and
//!   mean time to failure.
//! - [`mc`]: Monte Carlo estimator used as an independent oracle for the
//!   closed-form model.
//! - [`rap`]: the redundancy allocation problem (instances, allocations,
//!   interval fitness, cost and repair).
//! - [`ga`]: two-phase genetic algorithm over allocation bit matrices.
//! - [`pso`]: interval particle swarm optimization (Gbest and Lbest).
//! - [`report`]: solver run reports and traces.

pub mod erlang;
pub mod ga;
pub mod interval;
pub mod mc;
pub mod oss;
pub mod pso;
pub mod rap;
pub mod report;

use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// A divisor interval contains zero.
    #[error("division by an interval containing zero: [{lo}, {hi}]")]
    ZeroInDivisor { lo: f64, hi: f64 },

    /// Matrix or vector dimensions do not agree.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A configuration value is out of its documented domain.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Subset enumeration over the selected OICs would be too large.
    #[error("subset enumeration over {selected} selected OICs exceeds the supported maximum of {max}")]
    EnumerationTooLarge { selected: usize, max: usize },

    /// A reduction requiring identical readiness was fed mixed values.
    #[error("readiness values are not uniform: {0}")]
    NonUniformReadiness(String),

    /// A reduction requiring per-function identical wakeup was fed mixed values.
    #[error("wakeup values differ across OICs: {0}")]
    NonIdenticalWakeup(String),

    /// Time arguments must be non-negative.
    #[error("negative time: {0}")]
    NegativeTime(f64),

    /// An iterative routine failed to reach its tolerance.
    #[error("failed to converge: {0}")]
    NonConvergence(String),

    /// No candidate exists for a placement or selection.
    #[error("no candidate available: {0}")]
    NoCandidate(String),

    /// An allocation cannot be made feasible.
    #[error("allocation cannot be repaired: {0}")]
    Unrepairable(String),

    /// A problem instance failed validation.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A file or string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
