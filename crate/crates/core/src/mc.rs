//! Monte Carlo estimator for the one-shot-system model.
//!
//! Written as an independent oracle for the closed-form enumeration in
//! [`crate::oss`]: it simulates the system event by event (readiness draw per
//! OIC, then activation-and-execution attempts per function) and never
//! touches the analytic formulas.
//!
//! Determinism: trials are split into fixed-size partitions; partition `p`
//! draws from ChaCha8 stream `p` of the user seed, so results are bit-stable
//! for a given `(seed, trials)` regardless of thread count or scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::oss::OssConfig;
use crate::{Error, Result};

/// Name of the generator recorded in reports; estimates are only comparable
/// across runs that used the same algorithm.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Trials per deterministic sub-stream.
const PARTITION: u64 = 1 << 16;

/// A Monte Carlo estimate with its sampling error.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Binomial standard error `sqrt(mean * (1 - mean) / trials)`.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
    /// Generator algorithm used for the draws.
    pub rng: String,
}

impl McEstimate {
    /// True when `value` lies within `k` standard errors of the mean.
    pub fn agrees_with(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.stderr
    }
}

/// Estimates the system reliability at point mission reliability `r` by
/// direct simulation.
pub fn simulate(cfg: &OssConfig, r: f64, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidConfig("need at least one trial".into()));
    }
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::InvalidConfig(format!(
            "mission reliability {r} outside [0, 1]"
        )));
    }

    let partitions = trials.div_ceil(PARTITION);
    let successes: u64 = (0..partitions)
        .into_par_iter()
        .map(|p| {
            let in_partition = PARTITION.min(trials - p * PARTITION);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(p);
            run_partition(cfg, r, in_partition, &mut rng)
        })
        .sum();

    let mean = successes as f64 / trials as f64;
    let stderr = (mean * (1.0 - mean) / trials as f64).sqrt();
    Ok(McEstimate {
        mean,
        stderr,
        trials,
        seed,
        rng: RNG_ALGORITHM.to_string(),
    })
}

fn run_partition(cfg: &OssConfig, r: f64, trials: u64, rng: &mut ChaCha8Rng) -> u64 {
    let w = cfg.selected;
    let n = cfg.functions();
    let mut ready = vec![false; w];
    let mut successes = 0u64;

    for _ in 0..trials {
        for (i, slot) in ready.iter_mut().enumerate() {
            *slot = rng.gen::<f64>() < cfg.readiness[i];
        }
        let mut all_served = true;
        for j in 0..n {
            let mut served = false;
            for i in 0..w {
                if ready[i] && cfg.availability[i][j] == 1 {
                    let e = if cfg.startup[i][j] == 1 {
                        1.0
                    } else {
                        cfg.wakeup[i][j]
                    };
                    if rng.gen::<f64>() < r * e {
                        served = true;
                        break;
                    }
                }
            }
            if !served {
                all_served = false;
                break;
            }
        }
        if all_served {
            successes += 1;
        }
    }
    successes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::oss::system_reliability;

    fn walkthrough() -> OssConfig {
        OssConfig::new(
            vec![0.9, 0.8],
            vec![vec![0.7], vec![0.5]],
            vec![vec![1], vec![1]],
            vec![vec![1], vec![0]],
            Interval::point(0.9),
        )
        .unwrap()
    }

    #[test]
    fn deterministic_for_equal_seeds() {
        let cfg = walkthrough();
        let a = simulate(&cfg, 0.9, 200_000, 7).unwrap();
        let b = simulate(&cfg, 0.9, 200_000, 7).unwrap();
        assert_eq!(a.mean, b.mean);
        let c = simulate(&cfg, 0.9, 200_000, 8).unwrap();
        // Not a guarantee in principle, but a seed change that left all
        // 200k trials identical would mean the stream split is broken.
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn certain_system_always_succeeds() {
        let cfg = OssConfig::new(
            vec![1.0],
            vec![vec![0.5]],
            vec![vec![1]],
            vec![vec![1]],
            Interval::point(1.0),
        )
        .unwrap();
        let est = simulate(&cfg, 1.0, 10_000, 1).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
        let est = simulate(&cfg, 0.0, 10_000, 1).unwrap();
        assert_eq!(est.mean, 0.0);
    }

    #[test]
    fn agrees_with_closed_form_on_walkthrough() {
        let cfg = walkthrough();
        let expected = system_reliability(&cfg, 0.9).unwrap();
        let est = simulate(&cfg, 0.9, 1_000_000, 42).unwrap();
        assert!(
            est.agrees_with(expected, 4.0),
            "mc {} vs closed form {expected} (stderr {})",
            est.mean,
            est.stderr
        );
    }

    #[test]
    fn stderr_is_binomial() {
        let cfg = walkthrough();
        let est = simulate(&cfg, 0.9, 300_000, 3).unwrap();
        let want = (est.mean * (1.0 - est.mean) / est.trials as f64).sqrt();
        assert_eq!(est.stderr, want);
        assert_eq!(est.rng, RNG_ALGORITHM);
    }

    #[test]
    fn rejects_bad_arguments() {
        let cfg = walkthrough();
        assert!(simulate(&cfg, 0.9, 0, 1).is_err());
        assert!(simulate(&cfg, 1.5, 100, 1).is_err());
    }
}
