//! Erlang failure-time model for the active conventional cores.
//!
//! Each active core's lifetime follows an Erlang distribution with a shared
//! integer shape and a per-core rate: the shape models one active unit plus
//! `shape - 1` identical warm backups, so survival is the truncated Poisson
//! sum. Cores fail independently and the system needs all of them, so the
//! joint survival is the product over cores. Shape 1 reduces to the pure
//! exponential.
//!
//! Rates derive from logical-element counts times a technology scale factor;
//! the element counts for the reference designs are exported as defaults.

use serde::{Deserialize, Serialize};

use crate::oss::{system_reliability, OssConfig};
use crate::{Error, Result};

/// Logical elements in one one-instruction core of the reference design.
pub const OIC_LOGICAL_ELEMENTS: u64 = 530;

/// Logical elements in one conventional MIPS-style core of the reference
/// design.
pub const CORE_LOGICAL_ELEMENTS: u64 = 19988;

/// Failure-time model parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErlangParams {
    /// Failure rate per active conventional core.
    pub rates: Vec<f64>,
    /// Erlang shape: one active unit plus `shape - 1` standby backups.
    pub shape: u32,
}

impl ErlangParams {
    pub fn new(rates: Vec<f64>, shape: u32) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::InvalidConfig("need at least one failure rate".into()));
        }
        if shape == 0 {
            return Err(Error::InvalidConfig("Erlang shape must be at least 1".into()));
        }
        for (i, &rate) in rates.iter().enumerate() {
            if !rate.is_finite() || rate <= 0.0 {
                return Err(Error::InvalidConfig(format!(
                    "rate[{i}] = {rate} must be positive"
                )));
            }
        }
        Ok(Self { rates, shape })
    }

    /// Derives per-core rates from logical-element counts and a common scale
    /// factor (failures per element per unit time).
    pub fn from_elements(elements: &[u64], element_scale: f64, shape: u32) -> Result<Self> {
        if !element_scale.is_finite() || element_scale <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "element scale {element_scale} must be positive"
            )));
        }
        let rates = elements
            .iter()
            .map(|&e| e as f64 * element_scale)
            .collect();
        Self::new(rates, shape)
    }

    /// Default shape when backed by `oics` ready one-instruction cores: the
    /// active unit plus one stage per backup.
    pub fn default_shape(oics: usize) -> u32 {
        oics as u32 + 1
    }
}

/// Joint survival probability of all active cores at time `t`.
pub fn erlang_reliability(t: f64, params: &ErlangParams) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let mut product = 1.0;
    for &rate in &params.rates {
        let x = rate * t;
        // Truncated Poisson sum: e^-x * sum_{k<shape} x^k / k!.
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..params.shape {
            term *= x / k as f64;
            sum += term;
        }
        product *= sum * (-x).exp();
    }
    Ok(product)
}

/// One-shot-system reliability at time `t`: the closed-form model evaluated
/// at the mission reliability the Erlang model assigns to time `t`.
pub fn time_dependent_system_reliability(
    cfg: &OssConfig,
    params: &ErlangParams,
    t: f64,
) -> Result<f64> {
    let r = erlang_reliability(t, params)?;
    system_reliability(cfg, r)
}

/// Relative tolerance of the MTTF quadrature.
pub const MTTF_REL_TOL: f64 = 1e-8;

/// Integrand threshold below which the MTTF integral is truncated.
pub const MTTF_CUTOFF: f64 = 1e-12;

/// Mean time to failure: the integral of the time-dependent system
/// reliability from zero to the point where the integrand falls below
/// [`MTTF_CUTOFF`], via adaptive Simpson quadrature at [`MTTF_REL_TOL`].
pub fn mttf(cfg: &OssConfig, params: &ErlangParams) -> Result<f64> {
    let integrand = |t: f64| time_dependent_system_reliability(cfg, params, t);

    let mut horizon = 1.0;
    while integrand(horizon)? >= MTTF_CUTOFF {
        horizon *= 2.0;
        if horizon > 1e18 {
            return Err(Error::NonConvergence(
                "system reliability does not decay; MTTF horizon exceeded 1e18".into(),
            ));
        }
    }
    integrate(&integrand, 0.0, horizon, MTTF_REL_TOL)
}

// Adaptive Simpson with the usual Richardson acceptance test. The tolerance
// is taken relative to the running whole-interval estimate.
fn integrate<F>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let whole = simpson(a, b, fa, fm, fb);
    let abs_tol = (rel_tol * whole.abs()).max(1e-300);
    refine(f, a, b, fa, fm, fb, whole, abs_tol, 0)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

const MAX_DEPTH: u32 = 64;

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::NonConvergence(format!(
            "quadrature did not settle on [{a}, {b}] after {MAX_DEPTH} refinements"
        )));
    }
    let half_tol = 0.5 * tol;
    Ok(refine(f, a, m, fa, flm, fm, left, half_tol, depth + 1)?
        + refine(f, m, b, fm, frm, fb, right, half_tol, depth + 1)?)
}
