//! `sweep`: one GA parameter across a value list, charted.

use oic_reliability::interval::{beats, OrderPolicy};
use oic_reliability::report::SolverReport;
use oic_reliability::{ga, Error as CoreError};

use crate::args::{SweepArgs, SweepParam};
use crate::manifest::RunManifest;
use crate::seeds::run_seed;
use crate::sets::load_instance_and_mission;
use crate::svg::{line_chart, Series};
use crate::CliResult;

pub fn run(args: &SweepArgs) -> CliResult<()> {
    let started = std::time::Instant::now();
    if args.reps == 0 {
        return Err(CoreError::InvalidConfig("--reps must be at least 1".into()).into());
    }
    let values = parse_values(args)?;
    let (inst, mission) = load_instance_and_mission(&args.instance)?;
    println!("{}", mission.describe());

    let mut csv = String::from("param,value,rep,seed,best_lo,best_hi,best_center,cost\n");
    let mut lo_points = Vec::new();
    let mut hi_points = Vec::new();

    for (vi, &value) in values.iter().enumerate() {
        let mut best: Option<SolverReport> = None;
        for rep in 0..args.reps {
            let seed = run_seed(args.seed, (vi * args.reps + rep) as u64);
            let mut params = ga::GaParams::default();
            apply(args.param, &mut params, value)?;
            params.seed = seed;
            params.validate()?;
            let report = ga::run(&inst, &params, mission.mission)?;
            csv.push_str(&format!(
                "{},{},{rep},{seed},{:.12},{:.12},{:.12},{}\n",
                args.param.name(),
                value_label(args.param, value),
                report.fitness.value.lo(),
                report.fitness.value.hi(),
                report.fitness.value.center(),
                report.fitness.cost
            ));
            let replace = best.as_ref().map_or(true, |b| {
                beats(
                    &report.fitness.value,
                    &b.fitness.value,
                    OrderPolicy::Combined,
                )
            });
            if replace {
                best = Some(report);
            }
        }
        let best = best.expect("at least one rep");
        println!(
            "{} = {}: best of {} reps [{:.9}, {:.9}]  cost {}",
            args.param.name(),
            value_label(args.param, value),
            args.reps,
            best.fitness.value.lo(),
            best.fitness.value.hi(),
            best.fitness.cost
        );
        lo_points.push((value, best.fitness.value.lo()));
        hi_points.push((value, best.fitness.value.hi()));
    }

    let csv_path = args.out.join("sweep.csv");
    crate::write_file(&csv_path, &csv)?;

    let svg_path = args.out.join("sweep.svg");
    let chart = line_chart(
        &format!("GA outcome vs {}", args.param.name()),
        args.param.name(),
        "system reliability",
        &[
            Series {
                name: "best lo".into(),
                points: lo_points,
            },
            Series {
                name: "best hi".into(),
                points: hi_points,
            },
        ],
    );
    crate::write_file(&svg_path, &chart)?;

    let manifest_path = args.out.join("manifest.json");
    let mut manifest = RunManifest::new("sweep", &args.instance.instance, mission.mission);
    manifest.seed = args.seed;
    manifest.set_index = mission.set_index;
    manifest.params = serde_json::json!({
        "param": args.param.name(),
        "values": values,
        "reps": args.reps,
    });
    manifest.wall_ms = started.elapsed().as_millis() as u64;
    manifest.outputs = [&manifest_path, &csv_path, &svg_path]
        .iter()
        .map(|p| p.display().to_string())
        .collect();
    manifest.write(&manifest_path)?;

    println!(
        "wrote {} {} {}",
        manifest_path.display(),
        csv_path.display(),
        svg_path.display()
    );
    Ok(())
}

fn parse_values(args: &SweepArgs) -> CliResult<Vec<f64>> {
    let mut values = Vec::new();
    for part in args.values.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: f64 = part
            .parse()
            .map_err(|_| CoreError::Parse(format!("sweep value '{part}'")))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(CoreError::InvalidConfig("--values is empty".into()).into());
    }
    Ok(values)
}

/// Writes `value` into the swept field, checking integer parameters really
/// got integers.
fn apply(param: SweepParam, params: &mut ga::GaParams, value: f64) -> CliResult<()> {
    let as_count = |v: f64| -> CliResult<usize> {
        if v.fract() != 0.0 || v < 0.0 || v > u32::MAX as f64 {
            return Err(CoreError::InvalidConfig(format!(
                "{} must be a whole number, got {v}",
                param.name()
            ))
            .into());
        }
        Ok(v as usize)
    };
    match param {
        SweepParam::MGen => params.m_gen = as_count(value)?,
        SweepParam::PSize => params.p_size = as_count(value)?,
        SweepParam::PCross => params.p_cross = value,
        SweepParam::PMutat => params.p_mutat = value,
    }
    Ok(())
}

fn value_label(param: SweepParam, value: f64) -> String {
    match param {
        SweepParam::MGen | SweepParam::PSize => format!("{}", value as u64),
        SweepParam::PCross | SweepParam::PMutat => format!("{value}"),
    }
}
