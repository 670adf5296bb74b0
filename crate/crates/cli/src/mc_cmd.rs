//! `mc`: Monte Carlo cross-check of the closed-form system reliability.

use oic_reliability::interval::Interval;
use oic_reliability::oss::system_reliability;
use oic_reliability::rap::{parse_allocation, Allocation, RapInstance};
use oic_reliability::{mc, Error as CoreError};

use crate::args::{AtPoint, McArgs};
use crate::sets::load_instance_and_mission;
use crate::CliResult;

/// Absolute floor on the agreement tolerance; below this, sampling noise on
/// a million-trial run is indistinguishable from disagreement.
const ABS_TOL: f64 = 1e-3;
/// Standard-error multiple defining agreement.
const STDERR_K: f64 = 4.0;

pub fn run(args: &McArgs) -> CliResult<()> {
    let (inst, mission) = load_instance_and_mission(&args.instance)?;

    let alloc = match &args.alloc {
        Some(path) => {
            let text = crate::read_to_string(path)?;
            parse_allocation(&text, &inst)?
        }
        None => all_supported(&inst),
    };

    let (r, label) = match args.at {
        AtPoint::Lo => (mission.mission.lo(), "lo"),
        AtPoint::Mid => (mission.mission.center(), "mid"),
        AtPoint::Hi => (mission.mission.hi(), "hi"),
    };

    let cfg = inst.config_for(&alloc, Interval::point(r))?;
    let closed = system_reliability(&cfg, r)?;
    let estimate = mc::simulate(&cfg, r, args.trials, args.seed)?;

    println!("{}", mission.describe());
    println!("simulating at r = {r:.9} ({label} point)");
    println!("closed form   {closed:.9}");
    println!(
        "monte carlo   {:.9} +- {:.9}  ({} trials, seed {}, {})",
        estimate.mean, estimate.stderr, estimate.trials, estimate.seed, estimate.rng
    );

    let tol = (STDERR_K * estimate.stderr).max(ABS_TOL);
    let diff = (estimate.mean - closed).abs();
    let agree = diff <= tol;
    println!(
        "verdict       {}  |diff| {diff:.3e} vs tolerance {tol:.3e}",
        if agree { "AGREE" } else { "DISAGREE" }
    );

    if agree {
        Ok(())
    } else {
        Err(CoreError::NonConvergence(format!(
            "Monte Carlo mean {:.9} disagrees with closed form {closed:.9} beyond {tol:.3e}",
            estimate.mean
        ))
        .into())
    }
}

/// Default allocation for a cross-check: every supported copy hosted, none
/// pre-started.
fn all_supported(inst: &RapInstance) -> Allocation {
    let mut alloc = Allocation::empty(inst.m, inst.n);
    for i in 0..inst.m {
        for j in 0..inst.n {
            if inst.supported(i, j) {
                alloc.availability[i][j] = 1;
            }
        }
    }
    alloc
}
