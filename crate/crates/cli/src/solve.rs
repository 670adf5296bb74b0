//! `solve`: optimizer runs with manifests, trace CSVs, dumps, and charts.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use oic_reliability::interval::{beats, OrderPolicy};
use oic_reliability::rap::format_allocation;
use oic_reliability::report::SolverReport;
use oic_reliability::{ga, pso, Error as CoreError};

use crate::args::{PresetKind, SolveArgs, SolverKind, VariantKind};
use crate::manifest::RunManifest;
use crate::seeds::run_seed;
use crate::sets::load_instance_and_mission;
use crate::svg::{line_chart, Series};
use crate::CliResult;

pub fn run(args: &SolveArgs) -> CliResult<()> {
    let started = std::time::Instant::now();
    if args.runs == 0 {
        return Err(CoreError::InvalidConfig("--runs must be at least 1".into()).into());
    }
    let (inst, mission) = load_instance_and_mission(&args.instance)?;
    println!("{}", mission.describe());

    // --- independent runs, best kept under the combined order ---
    let mut best: Option<(usize, SolverReport)> = None;
    let mut notes = Vec::new();
    for idx in 0..args.runs {
        let seed = run_seed(args.seed, idx as u64);
        let report = match args.solver {
            SolverKind::Ga => ga::run(&inst, &ga_params(args, seed)?, mission.mission)?,
            SolverKind::Pso => pso::run(&inst, &pso_params(args, seed)?, mission.mission)?,
        };
        let line = format!(
            "run {idx}  seed {seed}  best [{:.9}, {:.9}]  cost {}  steps {}  {} ms",
            report.fitness.value.lo(),
            report.fitness.value.hi(),
            report.fitness.cost,
            report.trace.len().saturating_sub(1),
            report.wall_ms
        );
        println!("{line}");
        notes.push(line);

        let replace = match &best {
            None => true,
            Some((_, incumbent)) => beats(
                &report.fitness.value,
                &incumbent.fitness.value,
                OrderPolicy::Combined,
            ),
        };
        if replace {
            best = Some((idx, report));
        }
    }
    let (winner, report) = best.expect("at least one run");

    println!(
        "best of {} runs: run {winner} ({}), [{:.9}, {:.9}]  center {:.9}  cost {}  feasible {}",
        args.runs,
        report.solver,
        report.fitness.value.lo(),
        report.fitness.value.hi(),
        report.fitness.value.center(),
        report.fitness.cost,
        if report.fitness.feasible { "yes" } else { "no" }
    );
    print!("{}", format_allocation(&report.best));

    if let Some(out) = &args.out {
        let step_label = if report.solver == "ga" {
            "generation"
        } else {
            "iteration"
        };

        let csv_path = out.join("trace.csv");
        crate::write_file(&csv_path, &trace_csv(&report, step_label))?;

        let alloc_path = out.join("allocation.txt");
        crate::write_file(&alloc_path, &format_allocation(&report.best))?;

        let svg_path = out.join("trace.svg");
        let chart = line_chart(
            &format!("{} best-so-far, run {winner}", report.solver),
            step_label,
            "system reliability",
            &trace_series(&report),
        );
        crate::write_file(&svg_path, &chart)?;

        let manifest_path = out.join("manifest.json");
        let mut manifest = RunManifest::new("solve", &args.instance.instance, mission.mission);
        manifest.seed = args.seed;
        manifest.set_index = mission.set_index;
        manifest.params = serde_json::json!({
            "solver": report.solver,
            "runs": args.runs,
            "winning_run": winner,
            "winning_seed": report.seed,
            "solver_params": report.params,
            "best_fitness": report.fitness,
        });
        manifest.notes = notes;
        manifest.wall_ms = started.elapsed().as_millis() as u64;
        manifest.outputs = [&manifest_path, &csv_path, &alloc_path, &svg_path]
            .iter()
            .map(|p| p.display().to_string())
            .collect();
        manifest.write(&manifest_path)?;

        println!(
            "wrote {} {} {} {}",
            manifest_path.display(),
            csv_path.display(),
            alloc_path.display(),
            svg_path.display()
        );
    }

    Ok(())
}

// ---------------------------------------------------------------------------
// Parameter assembly: preset base, flag adjustments, then the params file
// (which has the last word), then the derived per-run seed.
// ---------------------------------------------------------------------------

fn ga_params(args: &SolveArgs, seed: u64) -> CliResult<ga::GaParams> {
    let mut base = ga::GaParams::default();
    if args.no_primary_phase {
        base.d_runs = 0;
    }
    if args.early_stop {
        base.early_stop = true;
    }
    let mut params: ga::GaParams = overlay_file(base, args.params.as_deref())?;
    params.seed = seed;
    params.validate()?;
    Ok(params)
}

fn pso_params(args: &SolveArgs, seed: u64) -> CliResult<pso::PsoParams> {
    let mut base = match args.preset {
        None | Some(PresetKind::ExampleOne) => pso::PsoParams::example_one(),
        Some(PresetKind::ExampleTwo) => pso::PsoParams::example_two(),
    };
    base.variant = match args.variant {
        VariantKind::Gbest => pso::PsoVariant::Gbest,
        VariantKind::Lbest => pso::PsoVariant::Lbest,
    };
    if args.early_stop {
        base.early_stop = true;
    }
    let mut params: pso::PsoParams = overlay_file(base, args.params.as_deref())?;
    params.seed = seed;
    params.validate()?;
    Ok(params)
}

/// Overlays the JSON object in `path` onto `base`, field by field. Unknown
/// keys are rejected so a typo cannot silently fall back to a default.
fn overlay_file<T>(base: T, path: Option<&Path>) -> CliResult<T>
where
    T: Serialize + DeserializeOwned,
{
    let Some(path) = path else { return Ok(base) };
    let text = crate::read_to_string(path)?;
    let overlay: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CoreError::Parse(format!("{}: {e}", path.display())))?;
    let mut value = serde_json::to_value(&base).expect("params serialize");
    match (&mut value, overlay) {
        (serde_json::Value::Object(dst), serde_json::Value::Object(src)) => {
            for (k, v) in src {
                if !dst.contains_key(&k) {
                    return Err(CoreError::InvalidConfig(format!(
                        "{}: unknown parameter '{k}'",
                        path.display()
                    ))
                    .into());
                }
                dst.insert(k, v);
            }
        }
        _ => {
            return Err(CoreError::Parse(format!(
                "{}: params file must be a JSON object",
                path.display()
            ))
            .into())
        }
    }
    serde_json::from_value(value)
        .map_err(|e| CoreError::Parse(format!("{}: {e}", path.display())).into())
}

// ---------------------------------------------------------------------------
// Trace rendering
// ---------------------------------------------------------------------------

fn trace_csv(report: &SolverReport, step_label: &str) -> String {
    let mut out = format!("{step_label},best_lo,best_hi,best_center,cost\n");
    for row in &report.trace {
        out.push_str(&format!(
            "{},{:.12},{:.12},{:.12},{}\n",
            row.step,
            row.fitness.value.lo(),
            row.fitness.value.hi(),
            row.fitness.value.center(),
            row.fitness.cost
        ));
    }
    out
}

fn trace_series(report: &SolverReport) -> Vec<Series> {
    let lo = report
        .trace
        .iter()
        .map(|r| (r.step as f64, r.fitness.value.lo()))
        .collect();
    let hi = report
        .trace
        .iter()
        .map(|r| (r.step as f64, r.fitness.value.hi()))
        .collect();
    vec![
        Series {
            name: "best lo".into(),
            points: lo,
        },
        Series {
            name: "best hi".into(),
            points: hi,
        },
    ]
}
