//! Closed-interval arithmetic and order relations.
//!
//! Intervals stand in for point values wherever a quantity (typically the
//! mission reliability) is only known to lie inside `[lo, hi]`. Arithmetic
//! follows the usual closed-interval rules; subtraction additionally offers a
//! paired-endpoint mode used by the swarm optimizer, where the lower and
//! upper channels are updated independently.
//!
//! Comparison of interval objective values is not a total order. The three
//! policies here ([`OrderPolicy`]) implement an optimistic rule (upper
//! endpoint first), a pessimistic rule (center and radius), and the combined
//! rule that tries the pessimistic verdict first and falls back to the
//! optimistic one. Solvers only ever compare pairwise; none of the relations
//! is transitive in general.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A closed interval `[lo, hi]` with `lo <= hi`.
///
/// Serializes as a two-element array `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Creates `[lo, hi]`. Panics if the endpoints are not finite or ordered;
    /// use [`Interval::try_new`] for untrusted input.
    pub fn new(lo: f64, hi: f64) -> Self {
        Self::try_new(lo, hi).expect("invalid interval endpoints")
    }

    /// Creates `[lo, hi]`, rejecting NaN and inverted endpoints.
    pub fn try_new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::InvalidConfig(format!(
                "interval endpoints must be numbers, got [{lo}, {hi}]"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidConfig(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    /// Creates the interval from two endpoints in either order.
    pub fn normalized(a: f64, b: f64) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    /// A degenerate interval `[v, v]`.
    pub fn point(v: f64) -> Self {
        Self::new(v, v)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Midpoint `(lo + hi) / 2`.
    pub fn center(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    /// Half-width `(hi - lo) / 2`.
    pub fn radius(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// True when `lo == hi`.
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// True when `other` lies inside `self` (endpoints included).
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Clamps both endpoints into `[min, max]`.
    pub fn clamp_to(&self, min: f64, max: f64) -> Interval {
        Interval {
            lo: self.lo.clamp(min, max),
            hi: self.hi.clamp(min, max),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }

    /// Subtraction. [`SubMode::Enclosing`] keeps the full enclosure
    /// `[lo - other.hi, hi - other.lo]`; [`SubMode::Paired`] subtracts the
    /// channels independently and re-normalizes the endpoint order.
    pub fn sub(&self, other: &Interval, mode: SubMode) -> Interval {
        match mode {
            SubMode::Enclosing => Interval {
                lo: self.lo - other.hi,
                hi: self.hi - other.lo,
            },
            SubMode::Paired => Interval::normalized(self.lo - other.lo, self.hi - other.hi),
        }
    }

    /// Multiplication by a scalar; a negative factor swaps the endpoints.
    pub fn scale(&self, k: f64) -> Interval {
        if k >= 0.0 {
            Interval {
                lo: k * self.lo,
                hi: k * self.hi,
            }
        } else {
            Interval {
                lo: k * self.hi,
                hi: k * self.lo,
            }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let mut lo = products[0];
        let mut hi = products[0];
        for &p in &products[1..] {
            lo = lo.min(p);
            hi = hi.max(p);
        }
        Interval { lo, hi }
    }

    /// Division `self / other`, defined only when `other` excludes zero.
    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.lo <= 0.0 && 0.0 <= other.hi {
            return Err(Error::ZeroInDivisor {
                lo: other.lo,
                hi: other.hi,
            });
        }
        let reciprocal = Interval {
            lo: 1.0 / other.hi,
            hi: 1.0 / other.lo,
        };
        Ok(self.mul(&reciprocal))
    }

    /// Integer power with the usual sign case split.
    pub fn powi(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::point(1.0);
        }
        let (pl, ph) = (self.lo.powi(n as i32), self.hi.powi(n as i32));
        if self.lo >= 0.0 || n % 2 == 1 {
            Interval { lo: pl, hi: ph }
        } else if self.hi <= 0.0 {
            // Even power of a non-positive interval reverses the order.
            Interval { lo: ph, hi: pl }
        } else {
            // Interval straddles zero and the power is even.
            Interval {
                lo: 0.0,
                hi: pl.max(ph),
            }
        }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::try_new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> [f64; 2] {
        [iv.lo, iv.hi]
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Subtraction semantics for [`Interval::sub`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubMode {
    /// Full enclosure `[x.lo - y.hi, x.hi - y.lo]`.
    Enclosing,
    /// Independent channels `[x.lo - y.lo, x.hi - y.hi]`, re-normalized.
    Paired,
}

/// Pairwise order policy for maximization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderPolicy {
    /// Upper endpoint decides, lower endpoint breaks ties.
    Optimistic,
    /// Center decides for overlapping/disjoint pairs; for nested pairs the
    /// winner needs at least the center and strictly smaller radius.
    Pessimistic,
    /// Pessimistic first, optimistic when the pessimistic rule abstains.
    Combined,
}

/// Outcome of a pairwise comparison. `Incomparable` covers both exact
/// equality and pairs on which the policy abstains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Greater,
    Less,
    Incomparable,
}

impl Verdict {
    fn flip(self) -> Verdict {
        match self {
            Verdict::Greater => Verdict::Less,
            Verdict::Less => Verdict::Greater,
            Verdict::Incomparable => Verdict::Incomparable,
        }
    }
}

/// Compares `x` against `y` for maximization under `policy`.
///
/// The relation is deterministic and anti-symmetric on strict verdicts:
/// `Greater` in one direction implies `Less` in the other. Equal intervals
/// are always `Incomparable`. No transitivity is promised; solvers use the
/// relation pairwise only.
pub fn compare_max(x: &Interval, y: &Interval, policy: OrderPolicy) -> Verdict {
    if x == y {
        return Verdict::Incomparable;
    }
    match policy {
        OrderPolicy::Optimistic => optimistic(x, y),
        OrderPolicy::Pessimistic => pessimistic(x, y),
        OrderPolicy::Combined => match pessimistic(x, y) {
            Verdict::Incomparable => optimistic(x, y),
            v => v,
        },
    }
}

/// Convenience: true when `x` strictly beats `y` under `policy`.
pub fn beats(x: &Interval, y: &Interval, policy: OrderPolicy) -> bool {
    compare_max(x, y, policy) == Verdict::Greater
}

// Upper endpoints first; equal uppers fall back to lower endpoints so that
// distinct intervals always get a strict, anti-symmetric verdict.
fn optimistic(x: &Interval, y: &Interval) -> Verdict {
    if x.hi > y.hi {
        Verdict::Greater
    } else if x.hi < y.hi {
        Verdict::Less
    } else if x.lo > y.lo {
        Verdict::Greater
    } else if x.lo < y.lo {
        Verdict::Less
    } else {
        Verdict::Incomparable
    }
}

fn pessimistic(x: &Interval, y: &Interval) -> Verdict {
    let nested = x.encloses(y) || y.encloses(x);
    if nested {
        // The winner must not lose on center and must be strictly narrower.
        if x.center() >= y.center() && x.radius() < y.radius() {
            Verdict::Greater
        } else if y.center() >= x.center() && y.radius() < x.radius() {
            Verdict::Less
        } else {
            Verdict::Incomparable
        }
    } else if x.center() > y.center() {
        Verdict::Greater
    } else if x.center() < y.center() {
        Verdict::Less
    } else {
        Verdict::Incomparable
    }
}

/// Anti-symmetry helper used by tests: the verdict of `(y, x)` must be the
/// flip of the verdict of `(x, y)`.
pub fn verdicts_consistent(x: &Interval, y: &Interval, policy: OrderPolicy) -> bool {
    compare_max(x, y, policy) == compare_max(y, x, policy).flip()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    fn assert_iv(got: Interval, lo: f64, hi: f64) {
        assert!(
            (got.lo() - lo).abs() <= TOL && (got.hi() - hi).abs() <= TOL,
            "expected [{lo}, {hi}], got {got}"
        );
    }

    #[test]
    fn add_cases() {
        assert_iv(iv(0.68, 0.72).add(&iv(0.73, 0.75)), 1.41, 1.47);
        assert_iv(iv(-1.0, 2.0).add(&iv(-3.0, 0.5)), -4.0, 2.5);
        assert_iv(iv(0.0, 0.0).add(&iv(0.89, 0.95)), 0.89, 0.95);
    }

    #[test]
    fn sub_enclosing() {
        assert_iv(
            iv(0.8, 0.9).sub(&iv(0.1, 0.3), SubMode::Enclosing),
            0.5,
            0.8,
        );
        // Subtracting an interval from itself keeps the full spread.
        assert_iv(
            iv(0.2, 0.6).sub(&iv(0.2, 0.6), SubMode::Enclosing),
            -0.4,
            0.4,
        );
    }

    #[test]
    fn sub_paired() {
        assert_iv(iv(0.8, 0.9).sub(&iv(0.1, 0.3), SubMode::Paired), 0.6, 0.7);
        // Paired subtraction of an interval from itself collapses to zero.
        assert_iv(iv(0.2, 0.6).sub(&iv(0.2, 0.6), SubMode::Paired), 0.0, 0.0);
        // Channel-wise result may invert; the endpoints are re-normalized.
        assert_iv(iv(0.0, 1.0).sub(&iv(-1.0, 1.5), SubMode::Paired), -0.5, 1.0);
    }

    #[test]
    fn sub_modes_agree_on_points() {
        let x = Interval::point(0.4);
        let y = Interval::point(0.15);
        let a = x.sub(&y, SubMode::Enclosing);
        let b = x.sub(&y, SubMode::Paired);
        assert_eq!(a, b);
        assert_iv(a, 0.25, 0.25);
    }

    #[test]
    fn scale_cases() {
        assert_iv(iv(0.5, 0.8).scale(2.0), 1.0, 1.6);
        assert_iv(iv(0.5, 0.8).scale(-1.0), -0.8, -0.5);
        assert_iv(iv(-0.5, 0.8).scale(0.0), 0.0, 0.0);
    }

    #[test]
    fn mul_cases() {
        assert_iv(iv(0.9, 0.95).mul(&iv(0.9, 0.95)), 0.81, 0.9025);
        assert_iv(iv(-1.0, 2.0).mul(&iv(3.0, 4.0)), -4.0, 8.0);
        assert_iv(iv(-2.0, -1.0).mul(&iv(-3.0, -2.0)), 2.0, 6.0);
    }

    #[test]
    fn div_cases() {
        assert_iv(iv(2.0, 4.0).div(&iv(1.0, 2.0)).unwrap(), 1.0, 4.0);
        assert_iv(iv(1.0, 1.0).div(&iv(4.0, 5.0)).unwrap(), 0.2, 0.25);
        assert!(matches!(
            iv(1.0, 2.0).div(&iv(-1.0, 1.0)),
            Err(Error::ZeroInDivisor { .. })
        ));
        assert!(matches!(
            iv(1.0, 2.0).div(&iv(0.0, 1.0)),
            Err(Error::ZeroInDivisor { .. })
        ));
    }

    #[test]
    fn pow_cases() {
        assert_iv(iv(0.9, 0.95).powi(3), 0.729, 0.857375);
        assert_iv(iv(-2.0, 1.0).powi(2), 0.0, 4.0);
        assert_iv(iv(-3.0, -2.0).powi(2), 4.0, 9.0);
        assert_iv(iv(-3.0, -2.0).powi(3), -27.0, -8.0);
        assert_iv(iv(-5.0, 7.0).powi(0), 1.0, 1.0);
    }

    #[test]
    fn center_radius() {
        let x = iv(0.8, 0.88);
        assert!((x.center() - 0.84).abs() <= TOL);
        assert!((x.radius() - 0.04).abs() <= TOL);
        assert!(Interval::point(0.5).radius() == 0.0);
    }

    #[test]
    fn constructors_reject_bad_endpoints() {
        assert!(Interval::try_new(0.9, 0.8).is_err());
        assert!(Interval::try_new(f64::NAN, 0.8).is_err());
        assert_iv(Interval::normalized(0.9, 0.8), 0.8, 0.9);
    }

    #[test]
    fn serde_two_element_array() {
        let x = iv(0.89, 0.95);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "[0.89,0.95]");
        let back: Interval = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Interval>("[0.95,0.89]").is_err());
    }

    #[test]
    fn optimistic_comparison() {
        // Higher upper endpoint wins regardless of width.
        assert_eq!(
            compare_max(&iv(0.73, 0.75), &iv(0.68, 0.72), OrderPolicy::Optimistic),
            Verdict::Greater
        );
        assert_eq!(
            compare_max(&iv(0.68, 0.72), &iv(0.73, 0.75), OrderPolicy::Optimistic),
            Verdict::Less
        );
        // Equal uppers: the higher lower endpoint wins.
        assert_eq!(
            compare_max(&iv(0.8, 0.9), &iv(0.5, 0.9), OrderPolicy::Optimistic),
            Verdict::Greater
        );
        assert_eq!(
            compare_max(&iv(0.5, 0.9), &iv(0.5, 0.9), OrderPolicy::Optimistic),
            Verdict::Incomparable
        );
    }

    #[test]
    fn pessimistic_comparison() {
        // Disjoint pair: centers decide.
        assert_eq!(
            compare_max(&iv(0.8, 0.88), &iv(0.68, 0.72), OrderPolicy::Pessimistic),
            Verdict::Greater
        );
        // Nested pair where the wider interval has the higher center: the
        // narrow one fails on center, the wide one fails on radius, so the
        // pessimistic rule abstains.
        assert_eq!(
            compare_max(&iv(0.76, 0.86), &iv(0.77, 0.80), OrderPolicy::Pessimistic),
            Verdict::Incomparable
        );
        // Nested pair with equal centers: the narrower interval wins.
        assert_eq!(
            compare_max(&iv(0.79, 0.81), &iv(0.75, 0.85), OrderPolicy::Pessimistic),
            Verdict::Greater
        );
        assert_eq!(
            compare_max(&iv(0.5, 0.5), &iv(0.5, 0.5), OrderPolicy::Pessimistic),
            Verdict::Incomparable
        );
    }

    #[test]
    fn combined_comparison() {
        // Pessimistic abstains on this nested pair; optimistic decides.
        assert_eq!(
            compare_max(&iv(0.76, 0.86), &iv(0.77, 0.80), OrderPolicy::Combined),
            Verdict::Greater
        );
        // Pessimistic verdict is kept when it exists.
        assert_eq!(
            compare_max(&iv(0.79, 0.81), &iv(0.75, 0.85), OrderPolicy::Combined),
            Verdict::Greater
        );
        assert_eq!(
            compare_max(&iv(0.68, 0.72), &iv(0.8, 0.88), OrderPolicy::Combined),
            Verdict::Less
        );
    }

    #[test]
    fn degenerate_intervals_order_like_scalars() {
        for policy in [
            OrderPolicy::Optimistic,
            OrderPolicy::Pessimistic,
            OrderPolicy::Combined,
        ] {
            assert_eq!(
                compare_max(&Interval::point(0.7), &Interval::point(0.3), policy),
                Verdict::Greater
            );
            assert_eq!(
                compare_max(&Interval::point(0.3), &Interval::point(0.7), policy),
                Verdict::Less
            );
            assert_eq!(
                compare_max(&Interval::point(0.5), &Interval::point(0.5), policy),
                Verdict::Incomparable
            );
        }
    }
}
