//! One-shot-system reliability of a function repertoire backed by
//! warm-standby one-instruction cores.
//!
//! The model: a conventional core fails and hands each of its `n` functions
//! to a pool of `m` candidate OICs. OIC `i` is ready with probability
//! `readiness[i]`. A ready OIC activates function `j` with the effective
//! wakeup probability `E[i][j]` (which is 1 when the function was
//! startup-strategized, `wakeup[i][j]` otherwise), and a successful
//! activation then runs with mission reliability `r`. The system succeeds
//! when every function is served by at least one ready OIC.
//!
//! `system_reliability` enumerates ready subsets of the selected OICs, so it
//! is exact; the subset count is capped (see [`MAX_SELECTED`]). The
//! `special_case_*` functions are independent closed forms for restricted
//! configurations and must agree with the general enumeration; they exist as
//! cross-checks and fast paths.

use serde::{Deserialize, Serialize};

use crate::interval::Interval;
use crate::{Error, Result};

/// Enumeration guard: `2^w` ready subsets are walked, so the number of
/// selected OICs is capped here.
pub const MAX_SELECTED: usize = 20;

/// Full description of one one-shot system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OssConfig {
    /// Readiness probability per OIC (length `m`).
    pub readiness: Vec<f64>,
    /// Wakeup probability per OIC per function (`m x n`).
    pub wakeup: Vec<Vec<f64>>,
    /// Availability bits: `availability[i][j] = 1` when OIC `i` hosts a copy
    /// of function `j` (`m x n`).
    pub availability: Vec<Vec<u8>>,
    /// Startup bits: `startup[i][j] = 1` when the copy is pre-started.
    /// Requires `availability[i][j] = 1`.
    pub startup: Vec<Vec<u8>>,
    /// Mission reliability of a successfully activated function, possibly an
    /// interval.
    pub mission: Interval,
    /// Number of OICs actually selected to back the core. Selection takes
    /// the first `selected` OICs; defaults to all of them.
    pub selected: usize,
}

impl OssConfig {
    /// Builds and validates a configuration with all OICs selected.
    pub fn new(
        readiness: Vec<f64>,
        wakeup: Vec<Vec<f64>>,
        availability: Vec<Vec<u8>>,
        startup: Vec<Vec<u8>>,
        mission: Interval,
    ) -> Result<Self> {
        let selected = readiness.len();
        let cfg = Self {
            readiness,
            wakeup,
            availability,
            startup,
            mission,
            selected,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Number of candidate OICs.
    pub fn oics(&self) -> usize {
        self.readiness.len()
    }

    /// Number of functions in the repertoire.
    pub fn functions(&self) -> usize {
        self.wakeup.first().map_or(0, Vec::len)
    }

    /// Checks shapes, probability ranges, bit values and the
    /// startup-implies-availability rule.
    pub fn validate(&self) -> Result<()> {
        let m = self.oics();
        let n = self.functions();
        if m == 0 || n == 0 {
            return Err(Error::InvalidConfig(
                "need at least one OIC and one function".into(),
            ));
        }
        if self.selected == 0 || self.selected > m {
            return Err(Error::InvalidConfig(format!(
                "selected OIC count {} outside 1..={m}",
                self.selected
            )));
        }
        check_shape("wakeup", &self.wakeup, m, n)?;
        check_shape("availability", &self.availability, m, n)?;
        check_shape("startup", &self.startup, m, n)?;
        for (i, &rd) in self.readiness.iter().enumerate() {
            if !(0.0..=1.0).contains(&rd) {
                return Err(Error::InvalidConfig(format!(
                    "readiness[{i}] = {rd} outside [0, 1]"
                )));
            }
        }
        for i in 0..m {
            for j in 0..n {
                let p = self.wakeup[i][j];
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidConfig(format!(
                        "wakeup[{i}][{j}] = {p} outside [0, 1]"
                    )));
                }
                if self.availability[i][j] > 1 || self.startup[i][j] > 1 {
                    return Err(Error::InvalidConfig(format!(
                        "availability/startup must be 0/1 at [{i}][{j}]"
                    )));
                }
                if self.startup[i][j] == 1 && self.availability[i][j] == 0 {
                    return Err(Error::InvalidConfig(format!(
                        "startup[{i}][{j}] set without availability"
                    )));
                }
            }
        }
        if !(0.0..=1.0).contains(&self.mission.lo()) || !(0.0..=1.0).contains(&self.mission.hi()) {
            return Err(Error::InvalidConfig(format!(
                "mission reliability {} outside [0, 1]",
                self.mission
            )));
        }
        Ok(())
    }
}

fn check_shape<T>(name: &str, matrix: &[Vec<T>], m: usize, n: usize) -> Result<()> {
    if matrix.len() != m {
        return Err(Error::ShapeMismatch(format!(
            "{name} has {} rows, expected {m}",
            matrix.len()
        )));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{name} row {i} has {} columns, expected {n}",
                row.len()
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Effective wakeup
// ---------------------------------------------------------------------------

/// Effective wakeup `E[i][j]`: 1 where the copy is pre-started, the raw
/// wakeup probability otherwise.
pub fn effective_wakeup(startup: &[Vec<u8>], wakeup: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if startup.len() != wakeup.len() {
        return Err(Error::ShapeMismatch(format!(
            "startup has {} rows, wakeup has {}",
            startup.len(),
            wakeup.len()
        )));
    }
    startup
        .iter()
        .zip(wakeup)
        .enumerate()
        .map(|(i, (xrow, prow))| {
            if xrow.len() != prow.len() {
                return Err(Error::ShapeMismatch(format!(
                    "startup row {i} has {} columns, wakeup row has {}",
                    xrow.len(),
                    prow.len()
                )));
            }
            Ok(xrow
                .iter()
                .zip(prow)
                .map(|(&x, &p)| if x == 1 { 1.0 } else { p })
                .collect())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// System reliability
// ---------------------------------------------------------------------------

/// Probability that the ready set equals exactly the OICs flagged in `mask`
/// (bit `i` set means OIC `i` is ready), over the first `w = readiness.len()`
/// OICs.
pub fn ready_set_weight(readiness: &[f64], mask: u32) -> f64 {
    readiness
        .iter()
        .enumerate()
        .map(|(i, &rd)| if mask >> i & 1 == 1 { rd } else { 1.0 - rd })
        .product()
}

/// One-shot-system reliability at a point mission reliability `r`.
///
/// Sums over every non-empty ready subset of the selected OICs: the subset
/// weight times the probability that each function is served by at least one
/// ready, available copy.
pub fn system_reliability(cfg: &OssConfig, r: f64) -> Result<f64> {
    let w = cfg.selected;
    if w > MAX_SELECTED {
        return Err(Error::EnumerationTooLarge {
            selected: w,
            max: MAX_SELECTED,
        });
    }
    let n = cfg.functions();
    let factors = survival_factors(cfg, r);
    let readiness = &cfg.readiness[..w];

    let mut total = 0.0;
    for mask in 1u32..(1 << w) {
        let weight = ready_set_weight(readiness, mask);
        if weight == 0.0 {
            continue;
        }
        let mut served = 1.0;
        for j in 0..n {
            let mut unserved = 1.0;
            for i in 0..w {
                if mask >> i & 1 == 1 {
                    unserved *= factors[i][j];
                }
            }
            served *= 1.0 - unserved;
            if served == 0.0 {
                break;
            }
        }
        total += weight * served;
    }
    Ok(total)
}

/// Reliability of the term where every selected OIC is ready: the readiness
/// product times per-function service probabilities over the whole pool.
/// This is also the redundancy-allocation objective.
pub fn all_ready_reliability(cfg: &OssConfig, r: f64) -> Result<f64> {
    let w = cfg.selected;
    let n = cfg.functions();
    let factors = survival_factors(cfg, r);
    let ready_weight: f64 = cfg.readiness[..w].iter().product();

    let mut served = 1.0;
    for j in 0..n {
        let mut unserved = 1.0;
        for row in factors.iter().take(w) {
            unserved *= row[j];
        }
        served *= 1.0 - unserved;
    }
    Ok(ready_weight * served)
}

/// Interval-valued system reliability: the point model evaluated at both
/// mission endpoints. The model is monotone in `r`, so the endpoints bound
/// the range.
pub fn interval_system_reliability(cfg: &OssConfig) -> Result<Interval> {
    let lo = system_reliability(cfg, cfg.mission.lo())?;
    let hi = system_reliability(cfg, cfg.mission.hi())?;
    Ok(Interval::new(lo, hi))
}

/// Interval-valued all-ready reliability (the allocation objective).
pub fn interval_all_ready_reliability(cfg: &OssConfig) -> Result<Interval> {
    let lo = all_ready_reliability(cfg, cfg.mission.lo())?;
    let hi = all_ready_reliability(cfg, cfg.mission.hi())?;
    Ok(Interval::new(lo, hi))
}

// Per-copy survival factor: probability that the copy on OIC `i` does NOT
// serve function `j`, given OIC `i` is ready. 1.0 where no copy is hosted.
fn survival_factors(cfg: &OssConfig, r: f64) -> Vec<Vec<f64>> {
    let n = cfg.functions();
    (0..cfg.oics())
        .map(|i| {
            (0..n)
                .map(|j| {
                    if cfg.availability[i][j] == 1 {
                        let e = if cfg.startup[i][j] == 1 {
                            1.0
                        } else {
                            cfg.wakeup[i][j]
                        };
                        1.0 - r * e
                    } else {
                        1.0
                    }
                })
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Special-case reductions
// ---------------------------------------------------------------------------

/// System reliability when every OIC has the same readiness `rd`: subset
/// weights collapse to `rd^k (1-rd)^(w-k)` for a ready set of size `k`.
pub fn special_case_identical_readiness(cfg: &OssConfig, rd: f64, r: f64) -> Result<f64> {
    for (i, &actual) in cfg.readiness[..cfg.selected].iter().enumerate() {
        if actual != rd {
            return Err(Error::NonUniformReadiness(format!(
                "readiness[{i}] = {actual}, expected {rd}"
            )));
        }
    }
    let w = cfg.selected;
    if w > MAX_SELECTED {
        return Err(Error::EnumerationTooLarge {
            selected: w,
            max: MAX_SELECTED,
        });
    }
    let n = cfg.functions();
    let factors = survival_factors(cfg, r);

    let mut total = 0.0;
    for mask in 1u32..(1 << w) {
        let k = mask.count_ones() as i32;
        let weight = rd.powi(k) * (1.0 - rd).powi(w as i32 - k);
        let mut served = 1.0;
        for j in 0..n {
            let mut unserved = 1.0;
            for i in 0..w {
                if mask >> i & 1 == 1 {
                    unserved *= factors[i][j];
                }
            }
            served *= 1.0 - unserved;
        }
        total += weight * served;
    }
    Ok(total)
}

/// Series system: OIC `j` is the only host of function `j` and must both be
/// ready and wake its own function, so the system needs every OIC.
pub fn special_case_series(readiness: &[f64], r: f64) -> f64 {
    readiness.iter().map(|&rd| rd * r).product()
}

/// Fully parallel system at certain activation and execution: the system
/// succeeds when any OIC is ready.
pub fn special_case_parallel(readiness: &[f64]) -> f64 {
    1.0 - readiness.iter().map(|&rd| 1.0 - rd).product::<f64>()
}

/// System reliability when every OIC wakes function `j` with one common
/// probability `wakeup_per_function[j]`. The per-function service term
/// splits the ready set into pre-started copies (factor `1 - r`) and
/// wakeup-gated copies (factor `1 - r * P_j`).
pub fn special_case_identical_components(
    cfg: &OssConfig,
    wakeup_per_function: &[f64],
    r: f64,
) -> Result<f64> {
    let w = cfg.selected;
    let n = cfg.functions();
    if wakeup_per_function.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "wakeup_per_function has {} entries, expected {n}",
            wakeup_per_function.len()
        )));
    }
    for i in 0..w {
        for j in 0..n {
            if cfg.availability[i][j] == 1 && cfg.wakeup[i][j] != wakeup_per_function[j] {
                return Err(Error::NonIdenticalWakeup(format!(
                    "wakeup[{i}][{j}] = {}, expected {}",
                    cfg.wakeup[i][j], wakeup_per_function[j]
                )));
            }
        }
    }
    if w > MAX_SELECTED {
        return Err(Error::EnumerationTooLarge {
            selected: w,
            max: MAX_SELECTED,
        });
    }

    let mut total = 0.0;
    for mask in 1u32..(1 << w) {
        let weight = ready_set_weight(&cfg.readiness[..w], mask);
        let mut served = 1.0;
        for (j, &pj) in wakeup_per_function.iter().enumerate() {
            let mut unserved = 1.0;
            for i in 0..w {
                if mask >> i & 1 == 1 && cfg.availability[i][j] == 1 {
                    unserved *= if cfg.startup[i][j] == 1 {
                        1.0 - r
                    } else {
                        1.0 - r * pj
                    };
                }
            }
            served *= 1.0 - unserved;
        }
        total += weight * served;
    }
    Ok(total)
}

/// Degenerate system with a single OIC backing the core alone.
/// Evaluated at the mission midpoint.
pub fn single_core_single_oic(cfg: &OssConfig) -> Result<f64> {
    if cfg.oics() != 1 || cfg.selected != 1 {
        return Err(Error::InvalidConfig(format!(
            "expected exactly one OIC, got {} ({} selected)",
            cfg.oics(),
            cfg.selected
        )));
    }
    let r = cfg.mission.center();
    let factors = survival_factors(cfg, r);
    let mut served = 1.0;
    for j in 0..cfg.functions() {
        served *= 1.0 - factors[0][j];
    }
    Ok(cfg.readiness[0] * served)
}

// ---------------------------------------------------------------------------
// Function reliability and startup placement
// ---------------------------------------------------------------------------

/// Reliability of function `j` on its own: the probability that some
/// available OIC is ready, activates the copy and runs it. With
/// `use_startup` the startup bits count (effective wakeup); without it the
/// raw wakeup probabilities are used. Evaluated at the mission midpoint.
pub fn function_reliability(cfg: &OssConfig, j: usize, use_startup: bool) -> f64 {
    function_reliability_at(cfg, j, cfg.mission.center(), use_startup)
}

/// [`function_reliability`] at an explicit point mission reliability.
pub fn function_reliability_at(cfg: &OssConfig, j: usize, r: f64, use_startup: bool) -> f64 {
    let mut unserved = 1.0;
    for i in 0..cfg.selected {
        if cfg.availability[i][j] == 1 {
            let e = if use_startup && cfg.startup[i][j] == 1 {
                1.0
            } else {
                cfg.wakeup[i][j]
            };
            unserved *= 1.0 - cfg.readiness[i] * r * e;
        }
    }
    1.0 - unserved
}

/// Best OIC on which to pre-start function `j`: the available OIC whose
/// forced activation (`E = 1`, others keeping raw wakeup) maximizes the
/// function reliability. Ties break to the lowest OIC index. Evaluated at
/// the mission midpoint.
pub fn best_startup_for_function(cfg: &OssConfig, j: usize) -> Result<usize> {
    let r = cfg.mission.center();
    let hosts: Vec<usize> = (0..cfg.selected)
        .filter(|&i| cfg.availability[i][j] == 1)
        .collect();
    if hosts.is_empty() {
        return Err(Error::NoCandidate(format!(
            "function {j} has no available OIC"
        )));
    }
    let mut best = hosts[0];
    let mut best_value = f64::NEG_INFINITY;
    for &candidate in &hosts {
        let mut unserved = 1.0;
        for &i in &hosts {
            let e = if i == candidate { 1.0 } else { cfg.wakeup[i][j] };
            unserved *= 1.0 - cfg.readiness[i] * r * e;
        }
        let value = 1.0 - unserved;
        if value > best_value {
            best_value = value;
            best = candidate;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn single(rd: f64, p: f64, a: u8, x: u8, mission: Interval) -> OssConfig {
        OssConfig::new(vec![rd], vec![vec![p]], vec![vec![a]], vec![vec![x]], mission).unwrap()
    }

    /// Two OICs, one function; the hand-computable walkthrough case.
    fn two_oic_one_function() -> OssConfig {
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
    fn effective_wakeup_cases() {
        let e = effective_wakeup(&[vec![1, 0]], &[vec![0.3, 0.3]]).unwrap();
        assert_eq!(e, vec![vec![1.0, 0.3]]);
        let e = effective_wakeup(&[vec![0], vec![1]], &[vec![0.9], vec![0.2]]).unwrap();
        assert_eq!(e, vec![vec![0.9], vec![1.0]]);
        assert!(matches!(
            effective_wakeup(&[vec![1, 0]], &[vec![0.3]]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn single_oic_reliability() {
        // Ready (0.99) and pre-started (activation certain), mission 0.9.
        let cfg = single(0.99, 0.5, 1, 1, Interval::point(0.9));
        assert!((system_reliability(&cfg, 0.9).unwrap() - 0.891).abs() <= TOL);
        assert!((all_ready_reliability(&cfg, 0.9).unwrap() - 0.891).abs() <= TOL);
        assert!((single_core_single_oic(&cfg).unwrap() - 0.891).abs() <= TOL);
    }

    #[test]
    fn single_oic_two_functions() {
        // Two functions, both pre-started: 0.99 * 0.9 * 0.9.
        let cfg = OssConfig::new(
            vec![0.99],
            vec![vec![0.5, 0.5]],
            vec![vec![1, 1]],
            vec![vec![1, 1]],
            Interval::point(0.9),
        )
        .unwrap();
        assert!((single_core_single_oic(&cfg).unwrap() - 0.8019).abs() <= TOL);
        // A function with no available copy forces zero.
        let cfg = OssConfig::new(
            vec![0.99],
            vec![vec![0.5, 0.5]],
            vec![vec![1, 0]],
            vec![vec![1, 0]],
            Interval::point(0.9),
        )
        .unwrap();
        assert!(single_core_single_oic(&cfg).unwrap().abs() <= TOL);
        assert!(system_reliability(&cfg, 0.9).unwrap().abs() <= TOL);
    }

    #[test]
    fn two_oic_hand_enumeration() {
        // Ready sets: {1,2}: 0.72 * (1 - 0.1*0.55) = 0.6804
        //             {1}:   0.18 * 0.9            = 0.162
        //             {2}:   0.08 * 0.45           = 0.036
        let cfg = two_oic_one_function();
        let expected = 0.6804 + 0.162 + 0.036;
        assert!((system_reliability(&cfg, 0.9).unwrap() - expected).abs() <= TOL);
        assert!((expected - 0.8784).abs() <= TOL);
    }

    #[test]
    fn interval_endpoints() {
        let cfg = single(0.99, 0.5, 1, 1, Interval::new(0.8, 0.9));
        let iv = interval_system_reliability(&cfg).unwrap();
        assert!((iv.lo() - 0.7920).abs() <= TOL);
        assert!((iv.hi() - 0.8910).abs() <= TOL);
        let iv = interval_all_ready_reliability(&cfg).unwrap();
        assert!((iv.lo() - 0.7920).abs() <= TOL);
        assert!((iv.hi() - 0.8910).abs() <= TOL);
    }

    #[test]
    fn certain_readiness_collapses_to_all_ready_term() {
        let cfg = OssConfig::new(
            vec![1.0, 1.0],
            vec![vec![0.7], vec![0.5]],
            vec![vec![1], vec![1]],
            vec![vec![1], vec![0]],
            Interval::point(0.9),
        )
        .unwrap();
        let full = system_reliability(&cfg, 0.9).unwrap();
        let all_ready = all_ready_reliability(&cfg, 0.9).unwrap();
        assert!((full - all_ready).abs() <= TOL);
    }

    #[test]
    fn enumeration_guard() {
        let m = MAX_SELECTED + 1;
        let cfg = OssConfig::new(
            vec![0.9; m],
            vec![vec![0.5]; m],
            vec![vec![1]; m],
            vec![vec![0]; m],
            Interval::point(0.9),
        )
        .unwrap();
        assert!(matches!(
            system_reliability(&cfg, 0.9),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn identical_readiness_matches_general() {
        let cfg = OssConfig::new(
            vec![0.9, 0.9, 0.9],
            vec![vec![0.7, 0.2], vec![0.5, 0.9], vec![0.3, 0.6]],
            vec![vec![1, 1], vec![1, 0], vec![1, 1]],
            vec![vec![0, 1], vec![1, 0], vec![0, 0]],
            Interval::point(0.85),
        )
        .unwrap();
        let special = special_case_identical_readiness(&cfg, 0.9, 0.85).unwrap();
        let general = system_reliability(&cfg, 0.85).unwrap();
        assert!((special - general).abs() <= TOL);
        assert!(matches!(
            special_case_identical_readiness(&cfg, 0.8, 0.85),
            Err(Error::NonUniformReadiness(_))
        ));
    }

    #[test]
    fn series_matches_identity_config() {
        // OIC j hosts exactly function j, pre-started.
        let n = 3;
        let readiness = vec![0.99, 0.97, 0.95];
        let eye: Vec<Vec<u8>> = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        let cfg = OssConfig::new(
            readiness.clone(),
            vec![vec![0.5; n]; n],
            eye.clone(),
            eye,
            Interval::point(0.9),
        )
        .unwrap();
        let special = special_case_series(&readiness, 0.9);
        let general = system_reliability(&cfg, 0.9).unwrap();
        assert!((special - general).abs() <= TOL);
        assert!((special_case_series(&[0.99, 0.99], 0.9) - 0.793881).abs() <= TOL);
    }

    #[test]
    fn parallel_matches_certain_service() {
        // Every OIC hosts every function pre-started, mission 1: any ready
        // OIC serves the whole repertoire.
        let readiness = vec![0.9, 0.8];
        let cfg = OssConfig::new(
            readiness.clone(),
            vec![vec![1.0, 1.0]; 2],
            vec![vec![1, 1]; 2],
            vec![vec![1, 1]; 2],
            Interval::point(1.0),
        )
        .unwrap();
        let special = special_case_parallel(&readiness);
        let general = system_reliability(&cfg, 1.0).unwrap();
        assert!((special - general).abs() <= TOL);
        assert!((special - 0.98).abs() <= TOL);
    }

    #[test]
    fn identical_components_matches_general() {
        let per_function = [0.8, 0.6];
        let cfg = OssConfig::new(
            vec![0.9, 0.7, 0.8],
            vec![vec![0.8, 0.6]; 3],
            vec![vec![1, 1], vec![1, 1], vec![0, 1]],
            vec![vec![1, 0], vec![0, 0], vec![0, 1]],
            Interval::point(0.9),
        )
        .unwrap();
        let special = special_case_identical_components(&cfg, &per_function, 0.9).unwrap();
        let general = system_reliability(&cfg, 0.9).unwrap();
        assert!((special - general).abs() <= TOL);

        let mut bad = cfg.clone();
        bad.wakeup[1][0] = 0.5;
        assert!(matches!(
            special_case_identical_components(&bad, &per_function, 0.9),
            Err(Error::NonIdenticalWakeup(_))
        ));
    }

    #[test]
    fn function_reliability_cases() {
        let cfg = single(0.99, 0.5, 1, 1, Interval::point(0.9));
        assert!((function_reliability(&cfg, 0, true) - 0.891).abs() <= TOL);
        // Without startup credit the raw wakeup gates activation.
        assert!((function_reliability(&cfg, 0, false) - 0.99 * 0.9 * 0.5).abs() <= TOL);
        // No available copy: zero.
        let cfg = single(0.99, 0.5, 0, 0, Interval::point(0.9));
        assert!(function_reliability(&cfg, 0, true).abs() <= TOL);
        // Two identical copies with rd * r * E = 0.45 each.
        let cfg = OssConfig::new(
            vec![0.9, 0.9],
            vec![vec![0.5], vec![0.5]],
            vec![vec![1], vec![1]],
            vec![vec![0], vec![0]],
            Interval::point(1.0),
        )
        .unwrap();
        assert!((function_reliability(&cfg, 0, true) - 0.6975).abs() <= TOL);
    }

    #[test]
    fn best_startup_prefers_weak_wakeup() {
        // Forcing activation where wakeup is weakest gains the most.
        let cfg = OssConfig::new(
            vec![0.9, 0.9],
            vec![vec![0.2], vec![0.9]],
            vec![vec![1], vec![1]],
            vec![vec![0], vec![0]],
            Interval::point(0.9),
        )
        .unwrap();
        assert_eq!(best_startup_for_function(&cfg, 0).unwrap(), 0);

        // Single host: only candidate.
        let cfg = single(0.9, 0.3, 1, 0, Interval::point(0.9));
        assert_eq!(best_startup_for_function(&cfg, 0).unwrap(), 0);

        // Exact tie: lowest index.
        let cfg = OssConfig::new(
            vec![0.9, 0.9],
            vec![vec![0.5], vec![0.5]],
            vec![vec![1], vec![1]],
            vec![vec![0], vec![0]],
            Interval::point(0.9),
        )
        .unwrap();
        assert_eq!(best_startup_for_function(&cfg, 0).unwrap(), 0);

        // No host at all.
        let cfg = single(0.9, 0.3, 0, 0, Interval::point(0.9));
        assert!(matches!(
            best_startup_for_function(&cfg, 0),
            Err(Error::NoCandidate(_))
        ));
    }

    #[test]
    fn partition_weights_sum_to_one() {
        let readiness = [0.9, 0.8, 0.35, 0.62];
        let total: f64 = (0u32..1 << readiness.len())
            .map(|mask| ready_set_weight(&readiness, mask))
            .sum();
        assert!((total - 1.0).abs() <= TOL);
    }

    #[test]
    fn monotone_in_mission_reliability() {
        let cfg = two_oic_one_function();
        let mut last = 0.0;
        for k in 0..=10 {
            let r = k as f64 / 10.0;
            let s = system_reliability(&cfg, r).unwrap();
            assert!(s + TOL >= last);
            last = s;
        }
    }

    #[test]
    fn validation_rejects_startup_without_availability() {
        let result = OssConfig::new(
            vec![0.9],
            vec![vec![0.5]],
            vec![vec![0]],
            vec![vec![1]],
            Interval::point(0.9),
        );
        assert!(matches!(result, Err(Error::InvalidConfig(_))));
    }
}
