//! `curve`: time-dependent system reliability per spare-pool size, with
//! mean time to failure for each pool.

use oic_reliability::erlang::{self, ErlangParams, CORE_LOGICAL_ELEMENTS};
use oic_reliability::interval::Interval;
use oic_reliability::oss::OssConfig;
use oic_reliability::rap::RapInstance;
use oic_reliability::Error as CoreError;

use crate::args::CurveArgs;
use crate::manifest::RunManifest;
use crate::sets::load_instance_and_mission;
use crate::svg::{line_chart, Series};
use crate::CliResult;

pub fn run(args: &CurveArgs) -> CliResult<()> {
    let started = std::time::Instant::now();
    if args.cores == 0 {
        return Err(CoreError::InvalidConfig("--cores must be at least 1".into()).into());
    }
    if args.points < 2 {
        return Err(CoreError::InvalidConfig("--points must be at least 2".into()).into());
    }
    if !args.t_max.is_finite() || args.t_max <= 0.0 {
        return Err(CoreError::NegativeTime(args.t_max).into());
    }
    let (inst, mission) = load_instance_and_mission(&args.instance)?;
    let pools = parse_pools(&args.oics, inst.m)?;
    println!("{}", mission.describe());

    // One failure process per conventional core; every spare pool watches the
    // same core set, so the rate vector is shared across series.
    let elements = vec![CORE_LOGICAL_ELEMENTS; args.cores];

    let grid: Vec<f64> = (0..args.points)
        .map(|i| args.t_max * i as f64 / (args.points - 1) as f64)
        .collect();

    let mut series = Vec::new();
    let mut notes = Vec::new();
    for &pool in &pools {
        let cfg = pooled_config(&inst, pool, mission.mission)?;
        let shape = args.beta.unwrap_or_else(|| ErlangParams::default_shape(pool));
        let params = ErlangParams::from_elements(&elements, args.element_scale, shape)?;

        let mut points = Vec::with_capacity(grid.len());
        for &t in &grid {
            let value = erlang::time_dependent_system_reliability(&cfg, &params, t)?;
            points.push((t, value));
        }
        series.push(Series {
            name: format!("M={pool}"),
            points,
        });

        let mttf = erlang::mttf(&cfg, &params)?;
        let line = format!("M={pool}  shape {shape}  MTTF {mttf:.4e} hours");
        println!("{line}");
        notes.push(line);
    }

    // --- CSV: one grid column, one column per pool size ---
    let mut csv = String::from("t");
    for &pool in &pools {
        csv.push_str(&format!(",M={pool}"));
    }
    csv.push('\n');
    for (i, &t) in grid.iter().enumerate() {
        csv.push_str(&format!("{t:.6}"));
        for s in &series {
            csv.push_str(&format!(",{:.12}", s.points[i].1));
        }
        csv.push('\n');
    }
    let csv_path = args.out.join("curve.csv");
    crate::write_file(&csv_path, &csv)?;

    let svg_path = args.out.join("curve.svg");
    let chart = line_chart(
        &format!("system reliability over time, {} cores", args.cores),
        "hours",
        "system reliability",
        &series,
    );
    crate::write_file(&svg_path, &chart)?;

    let manifest_path = args.out.join("manifest.json");
    let mut manifest = RunManifest::new("curve", &args.instance.instance, mission.mission);
    manifest.set_index = mission.set_index;
    manifest.params = serde_json::json!({
        "cores": args.cores,
        "pools": pools,
        "element_scale": args.element_scale,
        "beta": args.beta,
        "t_max": args.t_max,
        "points": args.points,
    });
    manifest.notes = notes;
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

/// Parses `--oics`; empty selects every pool size up to the instance's OIC
/// count. Sizes beyond it are rejected.
fn parse_pools(text: &str, m: usize) -> CliResult<Vec<usize>> {
    let mut pools = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let pool: usize = part
            .parse()
            .map_err(|_| CoreError::Parse(format!("pool size '{part}'")))?;
        pools.push(pool);
    }
    if pools.is_empty() {
        pools = (1..=m).collect();
    }
    for &pool in &pools {
        if pool == 0 || pool > m {
            return Err(CoreError::InvalidConfig(format!(
                "pool size {pool} outside 1..={m}"
            ))
            .into());
        }
    }
    Ok(pools)
}

/// The first `pool` OICs of the instance, hosting every supported function
/// with no pre-starts.
fn pooled_config(inst: &RapInstance, pool: usize, mission: Interval) -> CliResult<OssConfig> {
    let readiness = inst.readiness[..pool].to_vec();
    let wakeup: Vec<Vec<f64>> = inst.wakeup[..pool].to_vec();
    let availability: Vec<Vec<u8>> = (0..pool)
        .map(|i| {
            (0..inst.n)
                .map(|j| u8::from(inst.supported(i, j)))
                .collect()
        })
        .collect();
    let startup = vec![vec![0u8; inst.n]; pool];
    OssConfig::new(readiness, wakeup, availability, startup, mission).map_err(Into::into)
}
