//! Interval Gbest/Lbest Particle Swarm Optimizers.
//!
//! Particles carry one interval per genome dimension; velocities and
//! positions update endpoint-pairwise inside the unit box with a linearly
//! decaying inertia weight. Personal, global, and ring-neighborhood bests
//! are gated optimistically; an archive of the overall bests is gated by
//! the combined policy and its head forms the reported trace.
//!
//! Positions are bridged to discrete allocations by thresholding each
//! component's center at 0.5 and repairing the resulting bit matrices; the
//! bridge is isolated in [`decode_position`] so alternates can be swapped.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::interval::{beats, Interval, OrderPolicy, SubMode};
use crate::rap::{decode_genome, evaluate, repair, Allocation, IntervalFitness, RapInstance};
use crate::report::{SolverReport, TraceRow};
use crate::{Error, Result};

/// Iterations the optional early stop looks back over.
pub const EARLY_STOP_WINDOW: usize = 20;
/// Minimum archive-head center improvement over the window to keep going.
pub const EARLY_STOP_DELTA: f64 = 1e-9;

/// Position box. Centers above the box midpoint decode to set bits.
const BOX_MIN: f64 = 0.0;
const BOX_MAX: f64 = 1.0;
const DECODE_THRESHOLD: f64 = 0.5;
/// Initial positions are the fittest `swarm` of a random pool this many
/// times larger, so the run starts from the best of a wider sample.
const POOL_FACTOR: usize = 3;

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsoVariant {
    /// Every particle is attracted to the swarm-wide best.
    Gbest,
    /// Every particle is attracted to the best within its ring
    /// neighborhood.
    Lbest,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PsoParams {
    pub swarm: usize,
    pub iterations: usize,
    /// Archive capacity for the overall best solutions.
    pub archive: usize,
    /// Cognitive acceleration coefficient.
    pub phi1: f64,
    /// Social acceleration coefficient.
    pub phi2: f64,
    /// Initial inertia weight.
    pub w1: f64,
    /// Final inertia weight.
    pub w2: f64,
    /// Ring size for the Lbest variant; 3 means self plus one neighbor on
    /// each side. Must be odd.
    pub neighborhood: usize,
    pub variant: PsoVariant,
    /// Endpoint subtraction used inside the velocity update. The paired
    /// mode keeps scalar-degenerate swarms at classical PSO behavior; the
    /// enclosing mode widens differences to their full interval hull.
    pub sub_mode: SubMode,
    pub seed: u64,
    /// Stop early once the archive head improves by less than
    /// [`EARLY_STOP_DELTA`] over [`EARLY_STOP_WINDOW`] iterations.
    #[serde(default)]
    pub early_stop: bool,
}

impl PsoParams {
    /// Desk-scale defaults (three OICs, six functions).
    pub fn example_one() -> Self {
        Self {
            swarm: 30,
            iterations: 50,
            archive: 15,
            phi1: 0.99876,
            phi2: 0.99678,
            w1: 0.8999,
            w2: 0.2466,
            neighborhood: 3,
            variant: PsoVariant::Gbest,
            sub_mode: SubMode::Paired,
            seed: 0,
            early_stop: false,
        }
    }

    /// Larger-instance defaults (six OICs, ten functions).
    pub fn example_two() -> Self {
        Self {
            swarm: 50,
            iterations: 100,
            archive: 15,
            phi1: 1.69876,
            phi2: 0.19678,
            w1: 0.20,
            w2: 0.10,
            ..Self::example_one()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.swarm < 2 {
            return Err(Error::InvalidConfig("swarm needs at least 2".into()));
        }
        if self.archive == 0 {
            return Err(Error::InvalidConfig("archive must hold at least 1".into()));
        }
        if self.neighborhood % 2 == 0 || self.neighborhood == 0 {
            return Err(Error::InvalidConfig(format!(
                "neighborhood {} is not odd",
                self.neighborhood
            )));
        }
        for (name, v) in [
            ("phi1", self.phi1),
            ("phi2", self.phi2),
            ("w1", self.w1),
            ("w2", self.w2),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidConfig(format!("{name} = {v} is invalid")));
            }
        }
        Ok(())
    }
}

impl Default for PsoParams {
    fn default() -> Self {
        Self::example_one()
    }
}

// ---------------------------------------------------------------------------
// Kernel operations
// ---------------------------------------------------------------------------

/// Linear inertia schedule from `w1` at `t = 0` down to `w2` at `t = t_max`.
pub fn inertia(t: usize, t_max: usize, w1: f64, w2: f64) -> f64 {
    if t_max == 0 {
        return w2;
    }
    (w1 - w2) * ((t_max - t) as f64 / t_max as f64) + w2
}

/// One velocity-and-position update for a single dimension.
///
/// Each endpoint runs the classical scalar update; only the assembled
/// velocity pair is renormalized to `lo <= hi`. Normalizing the difference
/// terms individually would turn the signed width pull `w_attractor - w_pos`
/// into its absolute value, and position widths would then grow until the
/// box clamp pins every center at the midpoint, blinding the decode.
///
/// The paired mode subtracts like endpoints; the enclosing mode takes the
/// full Moore difference, which widens velocities and is kept only as a
/// fidelity toggle.
pub fn step_component(
    pos: &Interval,
    vel: &Interval,
    pbest: &Interval,
    best: &Interval,
    omega: f64,
    phi1: f64,
    phi2: f64,
    r1: f64,
    r2: f64,
    mode: SubMode,
) -> (Interval, Interval) {
    let diff = |a: &Interval, b: &Interval| -> (f64, f64) {
        match mode {
            SubMode::Paired => (a.lo() - b.lo(), a.hi() - b.hi()),
            SubMode::Enclosing => (a.lo() - b.hi(), a.hi() - b.lo()),
        }
    };
    let (c_lo, c_hi) = diff(pbest, pos);
    let (s_lo, s_hi) = diff(best, pos);
    let v_lo = omega * vel.lo() + phi1 * r1 * c_lo + phi2 * r2 * s_lo;
    let v_hi = omega * vel.hi() + phi1 * r1 * c_hi + phi2 * r2 * s_hi;
    let vel = Interval::normalized(v_lo, v_hi).clamp_to(-(BOX_MAX - BOX_MIN), BOX_MAX - BOX_MIN);
    // Ordered velocity endpoints keep the position pair ordered by itself.
    let p_lo = pos.lo() + vel.lo();
    let p_hi = pos.hi() + vel.hi();
    let pos = Interval::new(p_lo, p_hi).clamp_to(BOX_MIN, BOX_MAX);
    // Reflecting walls: a component that ran out of the box is clamped and
    // its velocity reversed. An absorbed overshoot would leave the attractor
    // pushing the particle into the wall for good, and that coordinate of
    // the whole swarm dies at the boundary.
    let vel = if p_lo < BOX_MIN || p_hi > BOX_MAX {
        Interval::normalized(-vel.hi(), -vel.lo())
    } else {
        vel
    };
    (pos, vel)
}

/// Bridges a position vector to a feasible allocation: bit = 1 iff the
/// component center exceeds the box midpoint, then repair.
pub fn decode_position(inst: &RapInstance, pos: &[Interval]) -> Result<Allocation> {
    let bits: Vec<u8> = pos
        .iter()
        .map(|iv| u8::from(iv.center() > DECODE_THRESHOLD))
        .collect();
    repair(inst, decode_genome(&bits, inst.m, inst.n)?)
}

// ---------------------------------------------------------------------------
// Swarm state
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Particle {
    pub pos: Vec<Interval>,
    pub vel: Vec<Interval>,
    pub pbest_pos: Vec<Interval>,
    pub pbest_fit: IntervalFitness,
}

#[derive(Debug)]
pub(crate) struct Swarm {
    pub particles: Vec<Particle>,
    /// Swarm-wide best position and fitness, optimistically gated.
    pub gbest: (Vec<Interval>, IntervalFitness),
    /// Per-particle ring bests for the Lbest variant.
    pub lbest: Vec<(Vec<Interval>, IntervalFitness)>,
    /// Overall best feasible solutions, combined-gated, deduplicated.
    pub archive: Vec<(Allocation, IntervalFitness)>,
    rng: ChaCha8Rng,
}

impl Swarm {
    pub fn init(inst: &RapInstance, params: &PsoParams, r: Interval) -> Result<Self> {
        let dims = 2 * inst.m * inst.n;
        let widths: Vec<f64> = inst.r_intervals.iter().map(Interval::width).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

        // The initial swarm is selected from a larger candidate pool: draw
        // POOL_FACTOR times as many random positions as particles, score
        // them all, and keep the fittest. Everything scored lands in the
        // archive either way, so no evaluation is wasted.
        let pool_size = POOL_FACTOR * params.swarm;
        let mut pool = Vec::with_capacity(pool_size);
        let mut archive = Vec::new();
        for _ in 0..pool_size {
            let mut pos = Vec::with_capacity(dims);
            for _ in 0..dims {
                let center = rng.gen::<f64>();
                let width = widths[rng.gen_range(0..widths.len())];
                pos.push(
                    Interval::new(center - width / 2.0, center + width / 2.0)
                        .clamp_to(BOX_MIN, BOX_MAX),
                );
            }
            let alloc = decode_position(inst, &pos)?;
            let fit = evaluate(inst, &alloc, r)?;
            archive_insert(&mut archive, alloc, fit.clone(), params.archive);
            pool.push((pos, fit));
        }
        // Stable sort keeps generation order among ties, so selection is
        // deterministic for a given seed.
        pool.sort_by(|a, b| {
            if beats(&a.1.value, &b.1.value, OrderPolicy::Optimistic) {
                std::cmp::Ordering::Less
            } else if beats(&b.1.value, &a.1.value, OrderPolicy::Optimistic) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        });
        pool.truncate(params.swarm);

        let mut particles = Vec::with_capacity(params.swarm);
        for (pos, fit) in pool {
            // Small random point kick; a swarm started at rest contracts
            // before it has mixed coordinates, while a large or widened kick
            // scatters the selected elite before the attractors form.
            let vel = (0..dims)
                .map(|_| Interval::point(rng.gen_range(-0.22..0.22)))
                .collect();
            particles.push(Particle {
                vel,
                pbest_pos: pos.clone(),
                pbest_fit: fit,
                pos,
            });
        }

        let gbest = fold_best(particles.iter().map(|p| (&p.pbest_pos, &p.pbest_fit)));
        let lbest = (0..params.swarm)
            .map(|i| ring_best(&particles, i, params.neighborhood))
            .collect();
        Ok(Self {
            particles,
            gbest,
            lbest,
            archive,
            rng,
        })
    }

    /// One iteration at inertia `omega`. Particles update in index order;
    /// an improved personal best becomes visible to the swarm best right
    /// away, as in the original formulation, so later particles in the same
    /// sweep are attracted to it. Ring bests refresh after the sweep.
    pub fn iterate(&mut self, inst: &RapInstance, params: &PsoParams, r: Interval, omega: f64) -> Result<()> {
        for idx in 0..self.particles.len() {
            let attractor: Vec<Interval> = match params.variant {
                PsoVariant::Gbest => self.gbest.0.clone(),
                PsoVariant::Lbest => self.lbest[idx].0.clone(),
            };
            let particle = &mut self.particles[idx];
            for d in 0..particle.pos.len() {
                // Fresh r1/r2 per dimension, shared by the two endpoints of
                // the pair. Drawing them once per particle would confine the
                // whole trajectory to the line through its start and the
                // attractor, and the swarm stops mixing coordinates.
                let r1 = self.rng.gen::<f64>();
                let r2 = self.rng.gen::<f64>();
                let (p, v) = step_component(
                    &particle.pos[d],
                    &particle.vel[d],
                    &particle.pbest_pos[d],
                    &attractor[d],
                    omega,
                    params.phi1,
                    params.phi2,
                    r1,
                    r2,
                    params.sub_mode,
                );
                particle.pos[d] = p;
                particle.vel[d] = v;
            }
            let alloc = decode_position(inst, &particle.pos)?;
            let fit = evaluate(inst, &alloc, r)?;
            // Ties also refresh the snapshot: the landscape is rich in
            // equal-fitness plateaus (many positions decode alike), and a
            // personal attractor anchored to a stale position would pin the
            // particle there. The recorded fitness still never decreases.
            if beats(&fit.value, &particle.pbest_fit.value, OrderPolicy::Optimistic)
                || fit.value == particle.pbest_fit.value
            {
                particle.pbest_pos = particle.pos.clone();
                particle.pbest_fit = fit.clone();
                if beats(&fit.value, &self.gbest.1.value, OrderPolicy::Optimistic) {
                    self.gbest = (particle.pos.clone(), fit.clone());
                }
            }
            archive_insert(&mut self.archive, alloc, fit, params.archive);
        }

        for i in 0..self.particles.len() {
            let (pos, fit) = ring_best(&self.particles, i, params.neighborhood);
            if beats(&fit.value, &self.lbest[i].1.value, OrderPolicy::Optimistic) {
                self.lbest[i] = (pos, fit);
            }
        }
        Ok(())
    }

    pub fn head(&self) -> (Allocation, IntervalFitness) {
        self.archive[0].clone()
    }
}

// First-wins optimistic fold.
fn fold_best<'a>(
    mut items: impl Iterator<Item = (&'a Vec<Interval>, &'a IntervalFitness)>,
) -> (Vec<Interval>, IntervalFitness) {
    let first = items.next().expect("non-empty swarm");
    let mut best = (first.0.clone(), first.1.clone());
    for (pos, fit) in items {
        if beats(&fit.value, &best.1.value, OrderPolicy::Optimistic) {
            best = (pos.clone(), fit.clone());
        }
    }
    best
}

// Best pbest within the ring of `size` centered on `idx`.
fn ring_best(
    particles: &[Particle],
    idx: usize,
    size: usize,
) -> (Vec<Interval>, IntervalFitness) {
    let n = particles.len();
    let half = (size / 2).min(n.saturating_sub(1) / 2);
    let members = (0..=2 * half).map(|k| {
        let p = &particles[(idx + n + k - half) % n];
        (&p.pbest_pos, &p.pbest_fit)
    });
    fold_best(members)
}

// Keeps the archive sorted by pairwise insertion: a candidate lands before
// the first entry it beats. Duplicates (by genome) are dropped, so the head
// only ever changes to something that beats it.
fn archive_insert(
    archive: &mut Vec<(Allocation, IntervalFitness)>,
    alloc: Allocation,
    fit: IntervalFitness,
    capacity: usize,
) {
    if archive.iter().any(|(a, _)| a == &alloc) {
        return;
    }
    let slot = archive
        .iter()
        .position(|(_, f)| beats(&fit.value, &f.value, OrderPolicy::Combined));
    match slot {
        Some(p) => archive.insert(p, (alloc, fit)),
        None if archive.len() < capacity => archive.push((alloc, fit)),
        None => return,
    }
    archive.truncate(capacity);
}

// ---------------------------------------------------------------------------
// Full run
// ---------------------------------------------------------------------------

/// Runs the swarm to completion and reports the archive head and the
/// per-iteration best-so-far trace.
pub fn run(inst: &RapInstance, params: &PsoParams, r: Interval) -> Result<SolverReport> {
    params.validate()?;
    inst.validate()?;
    let started = std::time::Instant::now();

    let mut swarm = Swarm::init(inst, params, r)?;
    let mut trace = vec![TraceRow {
        step: 0,
        fitness: swarm.head().1,
    }];

    for t in 0..params.iterations {
        let omega = inertia(t, params.iterations, params.w1, params.w2);
        swarm.iterate(inst, params, r, omega)?;
        trace.push(TraceRow {
            step: t + 1,
            fitness: swarm.head().1,
        });
        if params.early_stop && t + 1 >= EARLY_STOP_WINDOW {
            let now = trace[t + 1].fitness.value.center();
            let then = trace[t + 1 - EARLY_STOP_WINDOW].fitness.value.center();
            if now - then < EARLY_STOP_DELTA {
                break;
            }
        }
    }

    let (best, fitness) = swarm.head();
    Ok(SolverReport {
        solver: match params.variant {
            PsoVariant::Gbest => "pso-gbest".into(),
            PsoVariant::Lbest => "pso-lbest".into(),
        },
        best,
        fitness,
        trace,
        params: serde_json::to_value(params).map_err(|e| Error::Parse(e.to_string()))?,
        seed: params.seed,
        rng: crate::mc::RNG_ALGORITHM.into(),
        wall_ms: started.elapsed().as_millis() as u64,
    })
}
