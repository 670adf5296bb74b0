//! `eval`: interval reliability and startup cost of a fixed allocation.

use oic_reliability::interval::Interval;
use oic_reliability::rap::{check_cost, evaluate, parse_allocation};
use oic_reliability::Error as CoreError;

use crate::args::EvalArgs;
use crate::manifest::{ReferenceCheck, RunManifest};
use crate::sets::load_instance_and_mission;
use crate::CliResult;

pub fn run(args: &EvalArgs) -> CliResult<()> {
    let started = std::time::Instant::now();
    let (inst, mission) = load_instance_and_mission(&args.instance)?;
    let alloc_text = crate::read_to_string(&args.alloc)?;
    let alloc = parse_allocation(&alloc_text, &inst)?;

    let fit = evaluate(&inst, &alloc, mission.mission)?;
    let breakdown = check_cost(&inst, &alloc);

    println!("{}", mission.describe());
    println!(
        "reliability   [{:.9}, {:.9}]  center {:.9}",
        fit.value.lo(),
        fit.value.hi(),
        fit.value.center()
    );
    println!("copies        {:?}", alloc.copy_counts());
    println!(
        "startup cost  per-OIC {:?}  max {}  total {}  budget {}",
        breakdown.per_oic, breakdown.max_latency, breakdown.total, inst.budget
    );
    println!(
        "feasible      {}",
        if fit.feasible { "yes" } else { "no" }
    );

    let reference = match &args.reference {
        None => None,
        Some(text) => {
            let reference = parse_reference(text)?;
            let check = ReferenceCheck::new(reference, fit.value);
            println!(
                "reference     [{:.9}, {:.9}]  max deviation {:.6}  {}",
                reference.lo(),
                reference.hi(),
                check.max_deviation,
                if check.within_0_01 {
                    "within 0.01"
                } else {
                    "outside 0.01"
                }
            );
            Some(check)
        }
    };

    if let Some(out) = &args.out {
        let mut manifest = RunManifest::new("eval", &args.instance.instance, mission.mission);
        manifest.set_index = mission.set_index;
        manifest.params = serde_json::json!({
            "alloc": args.alloc.display().to_string(),
            "fitness": fit,
            "cost": breakdown,
        });
        manifest.reference = reference;
        manifest.wall_ms = started.elapsed().as_millis() as u64;
        let path = out.join("manifest.json");
        manifest.outputs = vec![path.display().to_string()];
        manifest.write(&path)?;
        println!("manifest      {}", path.display());
    }

    Ok(())
}

/// Parses `"lo,hi"` into an interval.
fn parse_reference(text: &str) -> CliResult<Interval> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CoreError::Parse(format!("reference '{text}' is not 'lo,hi'")).into());
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| CoreError::Parse(format!("reference endpoint '{}'", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| CoreError::Parse(format!("reference endpoint '{}'", parts[1])))?;
    Interval::try_new(lo, hi).map_err(Into::into)
}
