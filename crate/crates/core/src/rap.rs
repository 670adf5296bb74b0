//! Redundancy allocation over one-instruction cores.
//!
//! An instance fixes the OIC pool (readiness, wakeup, per-cell startup
//! latency) and a latency budget; a solution decides which OICs host a copy
//! of each function (availability bits) and which copies are pre-started
//! (startup bits). The objective is the interval-valued all-ready system
//! reliability, evaluated at both endpoints of a mission-reliability
//! interval.
//!
//! Cost semantics: OICs start their functions sequentially but independently
//! of each other, so the latency a waiting core observes is the largest
//! per-OIC startup sum, and that maximum is what the budget constrains. The
//! grand total across OICs is also reported for reference.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::interval::{beats, Interval, OrderPolicy};
use crate::oss::OssConfig;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

/// A redundancy-allocation problem instance.
///
/// Serializes as the on-disk JSON schema: `m`, `n`, `readiness[m]`,
/// `wakeup[m][n]`, `cost[m][n]`, `budget`, `r_intervals[[lo, hi], ...]`,
/// `function_names[n]`, and optional `unsupported[m][n]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RapInstance {
    /// Number of candidate OICs.
    pub m: usize,
    /// Number of functions.
    pub n: usize,
    /// Readiness probability per OIC.
    pub readiness: Vec<f64>,
    /// Wakeup probability per OIC per function. A zero keeps the cell
    /// startup-eligible; use `unsupported` to forbid a cell outright.
    pub wakeup: Vec<Vec<f64>>,
    /// Startup latency per cell, in clock cycles.
    pub cost: Vec<Vec<u64>>,
    /// Latency budget in clock cycles.
    pub budget: u64,
    /// Candidate mission-reliability intervals.
    pub r_intervals: Vec<Interval>,
    /// Function names, for printing; empty means `F1..Fn`.
    #[serde(default)]
    pub function_names: Vec<String>,
    /// Optional mask: 1 marks a cell that can host no copy at all.
    #[serde(default)]
    pub unsupported: Option<Vec<Vec<u8>>>,
}

impl RapInstance {
    pub fn from_json(text: &str) -> Result<Self> {
        let inst: RapInstance =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance JSON: {e}")))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidInstance(
                "need at least one OIC and one function".into(),
            ));
        }
        if self.readiness.len() != self.m {
            return Err(Error::InvalidInstance(format!(
                "readiness has {} entries, expected {}",
                self.readiness.len(),
                self.m
            )));
        }
        check_dims("wakeup", self.wakeup.len(), &self.wakeup, self.m, self.n)?;
        check_dims("cost", self.cost.len(), &self.cost, self.m, self.n)?;
        if let Some(mask) = &self.unsupported {
            check_dims("unsupported", mask.len(), mask, self.m, self.n)?;
        }
        for (i, &rd) in self.readiness.iter().enumerate() {
            if !(0.0..=1.0).contains(&rd) {
                return Err(Error::InvalidInstance(format!(
                    "readiness[{i}] = {rd} outside [0, 1]"
                )));
            }
        }
        for i in 0..self.m {
            for j in 0..self.n {
                let p = self.wakeup[i][j];
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidInstance(format!(
                        "wakeup[{i}][{j}] = {p} outside [0, 1]"
                    )));
                }
            }
        }
        if self.budget == 0 {
            return Err(Error::InvalidInstance("budget must be positive".into()));
        }
        if self.r_intervals.is_empty() {
            return Err(Error::InvalidInstance(
                "need at least one mission-reliability interval".into(),
            ));
        }
        for (k, iv) in self.r_intervals.iter().enumerate() {
            if iv.lo() < 0.0 || iv.hi() > 1.0 {
                return Err(Error::InvalidInstance(format!(
                    "r_intervals[{k}] = {iv} outside [0, 1]"
                )));
            }
        }
        if !self.function_names.is_empty() && self.function_names.len() != self.n {
            return Err(Error::InvalidInstance(format!(
                "function_names has {} entries, expected {}",
                self.function_names.len(),
                self.n
            )));
        }
        for j in 0..self.n {
            if (0..self.m).all(|i| !self.supported(i, j)) {
                return Err(Error::InvalidInstance(format!(
                    "function {j} has no supportable OIC"
                )));
            }
        }
        Ok(())
    }

    /// True when OIC `i` may host a copy of function `j`.
    pub fn supported(&self, i: usize, j: usize) -> bool {
        match &self.unsupported {
            Some(mask) => mask[i][j] == 0,
            None => true,
        }
    }

    pub fn function_name(&self, j: usize) -> String {
        self.function_names
            .get(j)
            .cloned()
            .unwrap_or_else(|| format!("F{}", j + 1))
    }

    /// Full system description for `alloc` at mission reliability `r`.
    pub fn config_for(&self, alloc: &Allocation, r: Interval) -> Result<OssConfig> {
        OssConfig::new(
            self.readiness.clone(),
            self.wakeup.clone(),
            alloc.availability.clone(),
            alloc.startup.clone(),
            r,
        )
    }
}

fn check_dims<T>(name: &str, rows: usize, matrix: &[Vec<T>], m: usize, n: usize) -> Result<()> {
    if rows != m {
        return Err(Error::InvalidInstance(format!(
            "{name} has {rows} rows, expected {m}"
        )));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{name} row {i} has {} columns, expected {n}",
                row.len()
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Allocations
// ---------------------------------------------------------------------------

/// One candidate solution: startup and availability bit matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Allocation {
    /// `startup[i][j] = 1`: the copy of function `j` on OIC `i` is
    /// pre-started. Implies the availability bit.
    pub startup: Vec<Vec<u8>>,
    /// `availability[i][j] = 1`: OIC `i` hosts a copy of function `j`.
    pub availability: Vec<Vec<u8>>,
}

impl Allocation {
    /// All-zero matrices.
    pub fn empty(m: usize, n: usize) -> Self {
        Self {
            startup: vec![vec![0; n]; m],
            availability: vec![vec![0; n]; m],
        }
    }

    /// Copies of each function across OICs (the `U` row of a dump).
    pub fn copy_counts(&self) -> Vec<u32> {
        let n = self.availability.first().map_or(0, Vec::len);
        (0..n)
            .map(|j| self.availability.iter().map(|row| row[j] as u32).sum())
            .collect()
    }

    fn dims(&self) -> (usize, usize) {
        (
            self.availability.len(),
            self.availability.first().map_or(0, Vec::len),
        )
    }
}

/// Interval objective value of one allocation, with its cost and
/// feasibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalFitness {
    /// All-ready system reliability at both mission endpoints.
    pub value: Interval,
    /// Largest per-OIC startup latency, in cycles.
    pub cost: u64,
    /// Within budget and every function hosted somewhere.
    pub feasible: bool,
}

/// Startup-latency breakdown of an allocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostBreakdown {
    /// Startup latency per OIC.
    pub per_oic: Vec<u64>,
    /// Largest per-OIC latency; the budgeted quantity.
    pub max_latency: u64,
    /// Grand total across OICs, for reference.
    pub total: u64,
    pub within_budget: bool,
}

/// Computes the startup-latency breakdown of `alloc`.
pub fn check_cost(inst: &RapInstance, alloc: &Allocation) -> CostBreakdown {
    let per_oic: Vec<u64> = (0..inst.m)
        .map(|i| {
            (0..inst.n)
                .map(|j| inst.cost[i][j] * alloc.startup[i][j] as u64)
                .sum()
        })
        .collect();
    let max_latency = per_oic.iter().copied().max().unwrap_or(0);
    let total = per_oic.iter().sum();
    CostBreakdown {
        per_oic,
        max_latency,
        total,
        within_budget: max_latency <= inst.budget,
    }
}

/// Evaluates the interval objective of `alloc` at mission reliability `r`.
///
/// Infeasible allocations still get their raw interval; a function with no
/// copy anywhere zeroes the whole objective.
pub fn evaluate(inst: &RapInstance, alloc: &Allocation, r: Interval) -> Result<IntervalFitness> {
    let (m, n) = alloc.dims();
    if m != inst.m || n != inst.n {
        return Err(Error::ShapeMismatch(format!(
            "allocation is {m}x{n}, instance is {}x{}",
            inst.m, inst.n
        )));
    }

    let ready_weight: f64 = inst.readiness.iter().product();
    let mut endpoints = [0.0f64; 2];
    for (slot, r_point) in endpoints.iter_mut().zip([r.lo(), r.hi()]) {
        let mut served = 1.0;
        for j in 0..n {
            let mut unserved = 1.0;
            for i in 0..m {
                if alloc.availability[i][j] == 1 {
                    let e = if alloc.startup[i][j] == 1 {
                        1.0
                    } else {
                        inst.wakeup[i][j]
                    };
                    unserved *= 1.0 - r_point * e;
                }
            }
            served *= 1.0 - unserved;
        }
        *slot = ready_weight * served;
    }

    let breakdown = check_cost(inst, alloc);
    let all_hosted = alloc.copy_counts().iter().all(|&u| u >= 1);
    Ok(IntervalFitness {
        value: Interval::new(endpoints[0].min(endpoints[1]), endpoints[0].max(endpoints[1])),
        cost: breakdown.max_latency,
        feasible: breakdown.within_budget && all_hosted,
    })
}

// ---------------------------------------------------------------------------
// Repair
// ---------------------------------------------------------------------------

/// Makes `alloc` feasible, deterministically, changing as little as the
/// greedy rules allow:
///
/// 1. unsupported cells are cleared; a stray startup bit on a supported cell
///    promotes its availability bit (startup implies a hosted copy);
/// 2. every uncovered function gets a copy on the supported OIC where a
///    single wakeup-gated copy is most reliable;
/// 3. while the worst per-OIC startup latency exceeds the budget, one
///    startup bit on that OIC is cleared: if single bits can cover the
///    whole deficit, the one losing the least reliability among them (the
///    brute-force-best single clear); otherwise the bit with the least
///    function-reliability loss per cycle.
///
/// Feasible inputs are returned unchanged, so the operator is idempotent.
pub fn repair(inst: &RapInstance, mut alloc: Allocation) -> Result<Allocation> {
    let (m, n) = alloc.dims();
    if m != inst.m || n != inst.n {
        return Err(Error::ShapeMismatch(format!(
            "allocation is {m}x{n}, instance is {}x{}",
            inst.m, inst.n
        )));
    }

    for i in 0..m {
        for j in 0..n {
            if !inst.supported(i, j) {
                alloc.startup[i][j] = 0;
                alloc.availability[i][j] = 0;
            } else if alloc.startup[i][j] == 1 {
                alloc.availability[i][j] = 1;
            }
        }
    }

    // Cover functions no OIC hosts.
    for j in 0..n {
        if (0..m).any(|i| alloc.availability[i][j] == 1) {
            continue;
        }
        let mut host: Option<(usize, f64)> = None;
        for i in (0..m).filter(|&i| inst.supported(i, j)) {
            let gain = inst.readiness[i] * inst.wakeup[i][j];
            // Strict inequality keeps the lowest index among ties.
            if host.map_or(true, |(_, best)| gain > best) {
                host = Some((i, gain));
            }
        }
        let (host, _) = host.ok_or_else(|| {
            Error::Unrepairable(format!("function {j} has no supportable OIC"))
        })?;
        alloc.availability[host][j] = 1;
    }

    // Trim startup bits until the worst OIC fits the budget.
    let mid = mission_midpoint(inst);
    loop {
        let breakdown = check_cost(inst, &alloc);
        if breakdown.max_latency <= inst.budget {
            break;
        }
        let worst = breakdown
            .per_oic
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i)
            .expect("at least one OIC");
        let deficit = breakdown.per_oic[worst] - inst.budget;
        let candidates: Vec<usize> = (0..n)
            .filter(|&j| alloc.startup[worst][j] == 1 && inst.cost[worst][j] > 0)
            .collect();
        debug_assert!(!candidates.is_empty(), "over-budget OIC has a costed bit");
        // One clear restoring this OIC's feasibility beats spreading the
        // loss: take the candidate keeping the largest share of its
        // function's reliability. Otherwise shed cycles efficiently.
        let covering: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&j| inst.cost[worst][j] >= deficit)
            .collect();
        let victim = if covering.is_empty() {
            candidates
                .into_iter()
                .min_by(|&a, &b| {
                    let la = startup_loss_per_cycle(inst, &alloc, worst, a, mid);
                    let lb = startup_loss_per_cycle(inst, &alloc, worst, b, mid);
                    la.partial_cmp(&lb).unwrap().then(a.cmp(&b))
                })
                .expect("candidates checked non-empty")
        } else {
            covering
                .into_iter()
                .min_by(|&a, &b| {
                    let la = startup_loss_ratio(inst, &alloc, worst, a, mid);
                    let lb = startup_loss_ratio(inst, &alloc, worst, b, mid);
                    la.partial_cmp(&lb).unwrap().then(a.cmp(&b))
                })
                .expect("covering checked non-empty")
        };
        alloc.startup[worst][victim] = 0;
    }

    Ok(alloc)
}

fn mission_midpoint(inst: &RapInstance) -> f64 {
    // Ranking point for repair decisions; any fixed choice works, the
    // midpoint of the first candidate interval is used throughout.
    inst.r_intervals[0].center()
}

// Fraction of function j's reliability lost by clearing startup (i, j);
// minimizing it maximizes the product-form objective after the clear.
fn startup_loss_ratio(inst: &RapInstance, alloc: &Allocation, i: usize, j: usize, r: f64) -> f64 {
    let with_bit = column_function_reliability(inst, alloc, j, r, None);
    let without = column_function_reliability(inst, alloc, j, r, Some(i));
    if with_bit > 0.0 {
        (with_bit - without) / with_bit
    } else {
        0.0
    }
}

// Function-reliability drop per cycle saved when clearing startup (i, j).
fn startup_loss_per_cycle(
    inst: &RapInstance,
    alloc: &Allocation,
    i: usize,
    j: usize,
    r: f64,
) -> f64 {
    let with_bit = column_function_reliability(inst, alloc, j, r, None);
    let without = column_function_reliability(inst, alloc, j, r, Some(i));
    (with_bit - without) / inst.cost[i][j] as f64
}

// Reliability of function j under alloc, optionally pretending the startup
// bit on OIC `cleared` is off.
pub(crate) fn column_function_reliability(
    inst: &RapInstance,
    alloc: &Allocation,
    j: usize,
    r: f64,
    cleared: Option<usize>,
) -> f64 {
    let mut unserved = 1.0;
    for i in 0..inst.m {
        if alloc.availability[i][j] == 1 {
            let started = alloc.startup[i][j] == 1 && cleared != Some(i);
            let e = if started { 1.0 } else { inst.wakeup[i][j] };
            unserved *= 1.0 - inst.readiness[i] * r * e;
        }
    }
    1.0 - unserved
}

/// Draws uniformly random bit matrices and repairs them feasible.
pub fn random_allocation<R: Rng>(inst: &RapInstance, rng: &mut R) -> Result<Allocation> {
    let mut alloc = Allocation::empty(inst.m, inst.n);
    for i in 0..inst.m {
        for j in 0..inst.n {
            alloc.availability[i][j] = u8::from(rng.gen::<bool>());
            alloc.startup[i][j] = u8::from(rng.gen::<bool>());
        }
    }
    repair(inst, alloc)
}

// ---------------------------------------------------------------------------
// Mission-interval selection
// ---------------------------------------------------------------------------

/// Picks the best interval of a candidate set under `policy`, keeping the
/// earliest of incomparable candidates.
pub fn max_interval_in_set(set: &[Interval], policy: OrderPolicy) -> Result<Interval> {
    let mut iter = set.iter();
    let mut best = *iter
        .next()
        .ok_or_else(|| Error::NoCandidate("empty interval set".into()))?;
    for candidate in iter {
        if beats(candidate, &best, policy) {
            best = *candidate;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Copy placement from per-function counts
// ---------------------------------------------------------------------------

/// Builds the availability matrix for given startup bits and per-function
/// copy counts: each function keeps its pre-started cells and fills the
/// remaining copies onto the supported OICs with the highest
/// readiness-times-wakeup product (ties to the lowest OIC index).
///
/// This reconstructs a full allocation from the startup-plus-counts form
/// used by the bundled reference solutions.
pub fn place_copies(
    inst: &RapInstance,
    startup: &[Vec<u8>],
    copies: &[u32],
) -> Result<Allocation> {
    if startup.len() != inst.m || startup.iter().any(|row| row.len() != inst.n) {
        return Err(Error::ShapeMismatch(format!(
            "startup matrix is not {}x{}",
            inst.m, inst.n
        )));
    }
    if copies.len() != inst.n {
        return Err(Error::ShapeMismatch(format!(
            "copy counts has {} entries, expected {}",
            copies.len(),
            inst.n
        )));
    }

    let mut availability = vec![vec![0u8; inst.n]; inst.m];
    for (j, &u) in copies.iter().enumerate() {
        let mut hosts: Vec<usize> = Vec::new();
        for i in 0..inst.m {
            if startup[i][j] == 1 {
                if !inst.supported(i, j) {
                    return Err(Error::InvalidInstance(format!(
                        "startup bit on unsupported cell [{i}][{j}]"
                    )));
                }
                hosts.push(i);
            }
        }
        if (u as usize) < hosts.len() {
            return Err(Error::InvalidInstance(format!(
                "function {j} has {} startup bits but only {u} copies",
                hosts.len()
            )));
        }
        let mut rest: Vec<usize> = (0..inst.m)
            .filter(|&i| inst.supported(i, j) && startup[i][j] == 0)
            .collect();
        // Stable sort keeps the lowest index first among exact ties.
        rest.sort_by(|&a, &b| {
            let ga = inst.readiness[a] * inst.wakeup[a][j];
            let gb = inst.readiness[b] * inst.wakeup[b][j];
            gb.partial_cmp(&ga).unwrap()
        });
        let missing = u as usize - hosts.len();
        if missing > rest.len() {
            return Err(Error::InvalidInstance(format!(
                "function {j} wants {u} copies but only {} cells are supported",
                hosts.len() + rest.len()
            )));
        }
        hosts.extend(rest.into_iter().take(missing));
        for i in hosts {
            availability[i][j] = 1;
        }
    }

    Ok(Allocation {
        startup: startup.to_vec(),
        availability,
    })
}

// ---------------------------------------------------------------------------
// Genome encoding
// ---------------------------------------------------------------------------

/// Flattens an allocation to bits: startup row-major, then availability
/// row-major.
pub fn encode_genome(alloc: &Allocation) -> Vec<u8> {
    let mut bits = Vec::with_capacity(2 * alloc.startup.len() * alloc.startup[0].len());
    for row in &alloc.startup {
        bits.extend_from_slice(row);
    }
    for row in &alloc.availability {
        bits.extend_from_slice(row);
    }
    bits
}

/// Inverse of [`encode_genome`]. Performs no repair; the result may violate
/// feasibility and even startup-implies-availability.
pub fn decode_genome(bits: &[u8], m: usize, n: usize) -> Result<Allocation> {
    if bits.len() != 2 * m * n {
        return Err(Error::ShapeMismatch(format!(
            "genome has {} bits, expected {}",
            bits.len(),
            2 * m * n
        )));
    }
    let cell = |k: usize| bits[k] & 1;
    let startup = (0..m)
        .map(|i| (0..n).map(|j| cell(i * n + j)).collect())
        .collect();
    let availability = (0..m)
        .map(|i| (0..n).map(|j| cell(m * n + i * n + j)).collect())
        .collect();
    Ok(Allocation {
        startup,
        availability,
    })
}

// ---------------------------------------------------------------------------
// Allocation dump format
// ---------------------------------------------------------------------------

/// Renders an allocation in the reference dump form: startup bit groups per
/// OIC and the per-function copy-count row, plus the availability groups
/// needed to rebuild the exact solution.
pub fn format_allocation(alloc: &Allocation) -> String {
    let groups = |matrix: &[Vec<u8>]| {
        matrix
            .iter()
            .map(|row| row.iter().map(|b| (b'0' + b) as char).collect::<String>())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let counts = alloc
        .copy_counts()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "X: {}\nU: {}\nA: {}\n",
        groups(&alloc.startup),
        counts,
        groups(&alloc.availability)
    )
}

/// Parses an allocation dump.
///
/// Accepts the keyed multi-line form written by [`format_allocation`] (`A`
/// optional, `U` used to place copies when `A` is absent) and the compact
/// single-line `"<startup groups> / <copy counts>"` form. Without either `A`
/// or `U`, copies are exactly the pre-started cells.
pub fn parse_allocation(text: &str, inst: &RapInstance) -> Result<Allocation> {
    let mut startup: Option<Vec<Vec<u8>>> = None;
    let mut availability: Option<Vec<Vec<u8>>> = None;
    let mut copies: Option<Vec<u32>> = None;

    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            match key.trim().to_ascii_uppercase().as_str() {
                "X" => startup = Some(parse_bit_groups(value, inst.m, inst.n)?),
                "A" => availability = Some(parse_bit_groups(value, inst.m, inst.n)?),
                "U" => copies = Some(parse_counts(value, inst.n)?),
                other => {
                    return Err(Error::Parse(format!("unknown allocation key '{other}'")));
                }
            }
        } else if let Some((bits, counts)) = line.split_once('/') {
            startup = Some(parse_bit_groups(bits, inst.m, inst.n)?);
            copies = Some(parse_counts(counts, inst.n)?);
        } else {
            return Err(Error::Parse(format!("unrecognized allocation line '{line}'")));
        }
    }

    let startup = startup.ok_or_else(|| Error::Parse("allocation needs an X line".into()))?;
    let alloc = match (availability, copies) {
        (Some(availability), _) => Allocation {
            startup,
            availability,
        },
        (None, Some(copies)) => place_copies(inst, &startup, &copies)?,
        (None, None) => Allocation {
            availability: startup.clone(),
            startup,
        },
    };

    for i in 0..inst.m {
        for j in 0..inst.n {
            if alloc.startup[i][j] == 1 && alloc.availability[i][j] == 0 {
                return Err(Error::Parse(format!(
                    "startup bit [{i}][{j}] has no availability bit"
                )));
            }
        }
    }
    Ok(alloc)
}

fn parse_bit_groups(text: &str, m: usize, n: usize) -> Result<Vec<Vec<u8>>> {
    let groups: Vec<&str> = text.split_whitespace().collect();
    if groups.len() != m {
        return Err(Error::Parse(format!(
            "expected {m} bit groups, got {}",
            groups.len()
        )));
    }
    groups
        .iter()
        .enumerate()
        .map(|(i, group)| {
            if group.len() != n {
                return Err(Error::Parse(format!(
                    "bit group {i} has {} bits, expected {n}",
                    group.len()
                )));
            }
            group
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Error::Parse(format!("invalid bit '{other}'"))),
                })
                .collect()
        })
        .collect()
}

fn parse_counts(text: &str, n: usize) -> Result<Vec<u32>> {
    let counts: Vec<u32> = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::Parse(format!("invalid copy count '{tok}'")))
        })
        .collect::<Result<_>>()?;
    if counts.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} copy counts, got {}",
            counts.len()
        )));
    }
    Ok(counts)
}
