//! Two-phase Genetic Algorithm over allocations with interval fitness.
//!
//! The primary phase assembles the initial population from several short
//! independent random searches (plus one greedy seed on large instances);
//! the secondary phase runs threshold-filtered fitness-proportional
//! selection, two-point crossover on the flattened bit genome, per-gene
//! mutation, repair, and elitism.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::interval::{beats, Interval, OrderPolicy};
use crate::rap::{
    self, column_function_reliability, decode_genome, encode_genome, evaluate, repair,
    Allocation, IntervalFitness, RapInstance,
};
use crate::report::{SolverReport, TraceRow};
use crate::{Error, Result};

/// Generations the optional early stop looks back over.
pub const EARLY_STOP_WINDOW: usize = 50;
/// Minimum best-center improvement over the window to keep going.
pub const EARLY_STOP_DELTA: f64 = 1e-9;
/// Instances with at least this many cells get a greedy seed.
pub const GREEDY_SEED_CELLS: usize = 60;

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaParams {
    /// Population size.
    pub p_size: usize,
    /// Crossover probability per mating pair.
    pub p_cross: f64,
    /// Mutation probability per gene.
    pub p_mutat: f64,
    /// Secondary-phase generation count.
    pub m_gen: usize,
    /// Primary-phase independent random-search runs; 0 skips the primary
    /// phase entirely (plain random initial population).
    pub d_runs: usize,
    /// Mating-pool cut: individuals below this center-fitness quantile are
    /// excluded from selection.
    pub threshold_quantile: f64,
    /// Elite gating policy.
    pub policy: OrderPolicy,
    pub seed: u64,
    /// Stop early once the best center improves by less than
    /// [`EARLY_STOP_DELTA`] over [`EARLY_STOP_WINDOW`] generations.
    #[serde(default)]
    pub early_stop: bool,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            p_size: 100,
            p_cross: 0.8,
            p_mutat: 0.06,
            m_gen: 200,
            d_runs: 10,
            threshold_quantile: 0.5,
            policy: OrderPolicy::Combined,
            seed: 0,
            early_stop: false,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.p_size < 2 {
            return Err(Error::InvalidConfig("population needs at least 2".into()));
        }
        if !(0.0..=1.0).contains(&self.p_cross) {
            return Err(Error::InvalidConfig(format!(
                "crossover probability {} outside [0, 1]",
                self.p_cross
            )));
        }
        if !(0.0..=1.0).contains(&self.p_mutat) {
            return Err(Error::InvalidConfig(format!(
                "mutation probability {} outside [0, 1]",
                self.p_mutat
            )));
        }
        if !(0.0..1.0).contains(&self.threshold_quantile) {
            return Err(Error::InvalidConfig(format!(
                "threshold quantile {} outside [0, 1)",
                self.threshold_quantile
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Greedy seed
// ---------------------------------------------------------------------------

/// Deterministic greedy construction: host every function everywhere it is
/// supported (copies are free), run one pass of pairwise host swaps keeping
/// strict center improvements, then pre-start the cells with the largest
/// function-reliability gain while each OIC stays within budget.
pub fn greedy_allocation(inst: &RapInstance, r: Interval) -> Result<Allocation> {
    let mid = r.center();
    let mut alloc = Allocation::empty(inst.m, inst.n);
    for i in 0..inst.m {
        for j in 0..inst.n {
            alloc.availability[i][j] = u8::from(inst.supported(i, j));
        }
    }

    // Pairwise swap pass: move a copy of function j from host b to host a
    // when that strictly improves the objective center. With every supported
    // cell hosted this is a no-op; it matters for masked instances.
    let mut improved = true;
    while improved {
        improved = false;
        for j in 0..inst.n {
            for a in 0..inst.m {
                for b in 0..inst.m {
                    if a == b
                        || alloc.availability[a][j] == 1
                        || alloc.availability[b][j] == 0
                        || alloc.startup[b][j] == 1
                        || !inst.supported(a, j)
                    {
                        continue;
                    }
                    let before = evaluate(inst, &alloc, r)?.value.center();
                    alloc.availability[a][j] = 1;
                    alloc.availability[b][j] = 0;
                    let after = evaluate(inst, &alloc, r)?.value.center();
                    if after > before {
                        improved = true;
                    } else {
                        alloc.availability[a][j] = 0;
                        alloc.availability[b][j] = 1;
                    }
                }
            }
        }
    }

    // Start the best cells while the worst OIC fits the budget.
    let mut row_cost = vec![0u64; inst.m];
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..inst.m {
            for j in 0..inst.n {
                if alloc.startup[i][j] == 1
                    || alloc.availability[i][j] == 0
                    || row_cost[i] + inst.cost[i][j] > inst.budget
                {
                    continue;
                }
                let without = column_function_reliability(inst, &alloc, j, mid, None);
                alloc.startup[i][j] = 1;
                let with = column_function_reliability(inst, &alloc, j, mid, None);
                alloc.startup[i][j] = 0;
                let gain = with - without;
                // Strict inequality keeps the lowest (i, j) among ties.
                if gain > 1e-15 && best.map_or(true, |(g, _, _)| gain > g) {
                    best = Some((gain, i, j));
                }
            }
        }
        match best {
            Some((_, i, j)) => {
                alloc.startup[i][j] = 1;
                row_cost[i] += inst.cost[i][j];
            }
            None => break,
        }
    }

    repair(inst, alloc)
}

// ---------------------------------------------------------------------------
// Primary phase
// ---------------------------------------------------------------------------

/// Builds the initial population. Each of the `d_runs` short random
/// searches admits every allocation that improved on the run's best so far;
/// large instances also get one greedy seed; the remainder is filled with
/// random feasible allocations.
pub fn primary_phase<R: Rng>(
    inst: &RapInstance,
    params: &GaParams,
    r: Interval,
    rng: &mut R,
) -> Result<Vec<Allocation>> {
    let mut population = Vec::with_capacity(params.p_size);
    if params.d_runs > 0 {
        if inst.m * inst.n >= GREEDY_SEED_CELLS {
            population.push(greedy_allocation(inst, r)?);
        }
        let run_len = (params.p_size / 10).max(2);
        for _ in 0..params.d_runs {
            let mut run_best = f64::NEG_INFINITY;
            for _ in 0..run_len {
                let candidate = rap::random_allocation(inst, rng)?;
                let center = evaluate(inst, &candidate, r)?.value.center();
                if center > run_best {
                    run_best = center;
                    population.push(candidate);
                }
            }
        }
        population.truncate(params.p_size);
    }
    while population.len() < params.p_size {
        population.push(rap::random_allocation(inst, rng)?);
    }
    Ok(population)
}

// ---------------------------------------------------------------------------
// Secondary phase
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct GaState {
    pub population: Vec<Allocation>,
    pub fitness: Vec<IntervalFitness>,
    pub elite: Allocation,
    pub elite_fitness: IntervalFitness,
    pub generation: usize,
}

impl GaState {
    pub fn new(inst: &RapInstance, population: Vec<Allocation>, r: Interval) -> Result<Self> {
        let fitness = evaluate_all(inst, &population, r)?;
        let best = best_index(&fitness, OrderPolicy::Combined);
        Ok(Self {
            elite: population[best].clone(),
            elite_fitness: fitness[best].clone(),
            population,
            fitness,
            generation: 0,
        })
    }
}

fn evaluate_all(
    inst: &RapInstance,
    population: &[Allocation],
    r: Interval,
) -> Result<Vec<IntervalFitness>> {
    population
        .par_iter()
        .map(|alloc| evaluate(inst, alloc, r))
        .collect()
}

// First index whose fitness no later one beats; ties keep the earliest.
fn best_index(fitness: &[IntervalFitness], policy: OrderPolicy) -> usize {
    let mut best = 0;
    for (i, f) in fitness.iter().enumerate().skip(1) {
        if beats(&f.value, &fitness[best].value, policy) {
            best = i;
        }
    }
    best
}

/// Advances one generation: threshold filter, fitness-proportional
/// selection on interval centers, two-point crossover, mutation, repair,
/// and elitism.
pub fn step<R: Rng>(
    state: &mut GaState,
    inst: &RapInstance,
    params: &GaParams,
    r: Interval,
    rng: &mut R,
) -> Result<()> {
    let pool = mating_pool(&state.fitness, params.threshold_quantile);
    let weights: Vec<f64> = pool
        .iter()
        .map(|&i| state.fitness[i].value.center().max(0.0))
        .collect();
    let picker = Picker::new(&pool, &weights);

    let genome_len = 2 * inst.m * inst.n;
    let mut offspring = Vec::with_capacity(params.p_size);
    while offspring.len() < params.p_size {
        let p1 = encode_genome(&state.population[picker.pick(rng)]);
        let p2 = encode_genome(&state.population[picker.pick(rng)]);
        let (mut c1, mut c2) = (p1, p2);
        if rng.gen::<f64>() < params.p_cross {
            let a = rng.gen_range(0..=genome_len);
            let b = rng.gen_range(0..=genome_len);
            let (lo, hi) = (a.min(b), a.max(b));
            for k in lo..hi {
                std::mem::swap(&mut c1[k], &mut c2[k]);
            }
        }
        for child in [&mut c1, &mut c2] {
            for gene in child.iter_mut() {
                if rng.gen::<f64>() < params.p_mutat {
                    *gene ^= 1;
                }
            }
            offspring.push(repair(inst, decode_genome(child, inst.m, inst.n)?)?);
            if offspring.len() == params.p_size {
                break;
            }
        }
    }

    let mut fitness = evaluate_all(inst, &offspring, r)?;
    let best = best_index(&fitness, params.policy);
    if beats(
        &fitness[best].value,
        &state.elite_fitness.value,
        params.policy,
    ) {
        state.elite = offspring[best].clone();
        state.elite_fitness = fitness[best].clone();
    } else {
        // The elite always survives into the new population.
        offspring[0] = state.elite.clone();
        fitness[0] = state.elite_fitness.clone();
    }
    state.population = offspring;
    state.fitness = fitness;
    state.generation += 1;
    Ok(())
}

// Indices at or above the center-fitness quantile; never empty.
fn mating_pool(fitness: &[IntervalFitness], quantile: f64) -> Vec<usize> {
    let mut centers: Vec<f64> = fitness.iter().map(|f| f.value.center()).collect();
    centers.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let cut = centers[((quantile * centers.len() as f64) as usize).min(centers.len() - 1)];
    let pool: Vec<usize> = (0..fitness.len())
        .filter(|&i| fitness[i].value.center() >= cut)
        .collect();
    if pool.is_empty() {
        (0..fitness.len()).collect()
    } else {
        pool
    }
}

// Fitness-proportional index picker; uniform when all weights vanish.
struct Picker<'a> {
    pool: &'a [usize],
    dist: Option<WeightedIndex<f64>>,
}

impl<'a> Picker<'a> {
    fn new(pool: &'a [usize], weights: &[f64]) -> Self {
        let dist = WeightedIndex::new(weights).ok();
        Self { pool, dist }
    }

    fn pick<R: Rng>(&self, rng: &mut R) -> usize {
        match &self.dist {
            Some(dist) => self.pool[dist.sample(rng)],
            None => self.pool[rng.gen_range(0..self.pool.len())],
        }
    }
}

// ---------------------------------------------------------------------------
// Full run
// ---------------------------------------------------------------------------

/// Runs the two-phase GA to completion and reports the elite, its fitness,
/// and the per-generation best-so-far trace.
pub fn run(inst: &RapInstance, params: &GaParams, r: Interval) -> Result<SolverReport> {
    params.validate()?;
    inst.validate()?;
    let started = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let population = primary_phase(inst, params, r, &mut rng)?;
    let mut state = GaState::new(inst, population, r)?;
    let mut trace = vec![TraceRow {
        step: 0,
        fitness: state.elite_fitness.clone(),
    }];

    for gen in 1..=params.m_gen {
        step(&mut state, inst, params, r, &mut rng)?;
        trace.push(TraceRow {
            step: gen,
            fitness: state.elite_fitness.clone(),
        });
        if params.early_stop && gen >= EARLY_STOP_WINDOW {
            let now = trace[gen].fitness.value.center();
            let then = trace[gen - EARLY_STOP_WINDOW].fitness.value.center();
            if now - then < EARLY_STOP_DELTA {
                break;
            }
        }
    }

    Ok(SolverReport {
        solver: "ga".into(),
        best: state.elite,
        fitness: state.elite_fitness,
        trace,
        params: serde_json::to_value(params).map_err(|e| Error::Parse(e.to_string()))?,
        seed: params.seed,
        rng: crate::mc::RNG_ALGORITHM.into(),
        wall_ms: started.elapsed().as_millis() as u64,
    })
}
