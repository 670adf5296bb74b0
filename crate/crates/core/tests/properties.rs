//! Randomized invariants for the interval kernel and the allocation layer.

use oic_reliability::interval::{compare_max, Interval, OrderPolicy, SubMode, Verdict};
use oic_reliability::rap::{
    check_cost, decode_genome, encode_genome, evaluate, format_allocation, parse_allocation,
    repair, RapInstance,
};
use proptest::prelude::*;

const POLICIES: [OrderPolicy; 3] = [
    OrderPolicy::Optimistic,
    OrderPolicy::Pessimistic,
    OrderPolicy::Combined,
];

fn interval_in(lo: f64, hi: f64) -> impl Strategy<Value = Interval> {
    (lo..hi, lo..hi).prop_map(|(a, b)| Interval::normalized(a, b))
}

// An interval together with one that encloses it.
fn nested_pair() -> impl Strategy<Value = (Interval, Interval)> {
    (interval_in(-5.0, 5.0), 0.0..1.0f64, 0.0..1.0f64).prop_map(|(inner, grow_lo, grow_hi)| {
        let outer = Interval::new(inner.lo() - grow_lo, inner.hi() + grow_hi);
        (inner, outer)
    })
}

proptest! {
    #[test]
    fn normalization_orders_endpoints(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let iv = Interval::normalized(a, b);
        prop_assert!(iv.lo() <= iv.hi());
    }

    #[test]
    fn arithmetic_is_inclusion_monotone(
        (x, x_outer) in nested_pair(),
        (y, y_outer) in nested_pair(),
    ) {
        prop_assert!(x_outer.add(&y_outer).encloses(&x.add(&y)));
        prop_assert!(x_outer
            .sub(&y_outer, SubMode::Enclosing)
            .encloses(&x.sub(&y, SubMode::Enclosing)));
        prop_assert!(x_outer.mul(&y_outer).encloses(&x.mul(&y)));
    }

    #[test]
    fn division_contains_pointwise_quotients(
        (x, x_outer) in nested_pair(),
        t in 0.0..1.0f64,
        y in interval_in(0.5, 4.0),
    ) {
        let q = x_outer.div(&y).unwrap();
        prop_assert!(q.encloses(&x.div(&y).unwrap()));
        // A representative point of x over a representative point of y.
        let px = x.lo() + t * (x.hi() - x.lo());
        let py = y.lo() + t * (y.hi() - y.lo());
        prop_assert!(q.contains(px / py + 0.0));
    }

    #[test]
    fn power_contains_pointwise_values(
        iv in interval_in(-3.0, 3.0),
        t in 0.0..1.0f64,
        n in 0u32..6,
    ) {
        let v = iv.lo() + t * (iv.hi() - iv.lo());
        let p = iv.powi(n);
        // Slack for the rounding gap between powi and repeated products.
        let slack = 1e-9 * (1.0 + p.hi().abs());
        prop_assert!(p.lo() - slack <= v.powi(n as i32) && v.powi(n as i32) <= p.hi() + slack);
    }

    #[test]
    fn strict_verdicts_are_antisymmetric(
        x in interval_in(0.0, 1.0),
        y in interval_in(0.0, 1.0),
    ) {
        for policy in POLICIES {
            let ab = compare_max(&x, &y, policy);
            let ba = compare_max(&y, &x, policy);
            match ab {
                Verdict::Greater => prop_assert_eq!(ba, Verdict::Less),
                Verdict::Less => prop_assert_eq!(ba, Verdict::Greater),
                Verdict::Incomparable => prop_assert_eq!(ba, Verdict::Incomparable),
            }
        }
    }

    #[test]
    fn degenerate_intervals_order_like_scalars(a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let x = Interval::point(a);
        let y = Interval::point(b);
        for policy in POLICIES {
            let expected = if a > b {
                Verdict::Greater
            } else if a < b {
                Verdict::Less
            } else {
                Verdict::Incomparable
            };
            prop_assert_eq!(compare_max(&x, &y, policy), expected);
        }
    }
}

// ---------------------------------------------------------------------------
// Allocation layer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct InstanceAndBits {
    inst: RapInstance,
    bits: Vec<u8>,
}

fn small_instance() -> impl Strategy<Value = InstanceAndBits> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(m, n)| {
            let readiness = proptest::collection::vec(0.5..1.0f64, m);
            let wakeup = proptest::collection::vec(
                proptest::collection::vec(0.0..1.0f64, n),
                m,
            );
            let cost = proptest::collection::vec(
                proptest::collection::vec(0u64..20, n),
                m,
            );
            let budget = 1u64..60;
            let r = (0.3..0.8f64, 0.0..0.2f64);
            let bits = proptest::collection::vec(0u8..=1, 2 * m * n);
            (Just((m, n)), readiness, wakeup, cost, budget, r, bits)
        })
        .prop_map(|((m, n), readiness, wakeup, cost, budget, (r_lo, r_w), bits)| {
            let inst = RapInstance {
                m,
                n,
                readiness,
                wakeup,
                cost,
                budget,
                r_intervals: vec![Interval::new(r_lo, r_lo + r_w)],
                function_names: Vec::new(),
                unsupported: None,
            };
            InstanceAndBits { inst, bits }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn genome_roundtrip_is_exact(case in small_instance()) {
        let alloc = decode_genome(&case.bits, case.inst.m, case.inst.n).unwrap();
        prop_assert_eq!(encode_genome(&alloc), case.bits);
    }

    #[test]
    fn repair_is_idempotent_and_feasible(case in small_instance()) {
        let raw = decode_genome(&case.bits, case.inst.m, case.inst.n).unwrap();
        let once = repair(&case.inst, raw).unwrap();
        let breakdown = check_cost(&case.inst, &once);
        prop_assert!(breakdown.within_budget);
        prop_assert!(once.copy_counts().iter().all(|&u| u >= 1));
        for i in 0..case.inst.m {
            for j in 0..case.inst.n {
                prop_assert!(once.startup[i][j] <= once.availability[i][j]);
            }
        }
        let twice = repair(&case.inst, once.clone()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn evaluated_fitness_is_a_probability_interval(case in small_instance()) {
        let raw = decode_genome(&case.bits, case.inst.m, case.inst.n).unwrap();
        let alloc = repair(&case.inst, raw).unwrap();
        let r = case.inst.r_intervals[0];
        let fit = evaluate(&case.inst, &alloc, r).unwrap();
        prop_assert!(fit.value.lo() >= 0.0);
        prop_assert!(fit.value.hi() <= 1.0);
        prop_assert!(fit.value.lo() <= fit.value.hi());
        prop_assert!(fit.feasible);
    }

    #[test]
    fn dump_roundtrips_through_text(case in small_instance()) {
        let raw = decode_genome(&case.bits, case.inst.m, case.inst.n).unwrap();
        let alloc = repair(&case.inst, raw).unwrap();
        let text = format_allocation(&alloc);
        let back = parse_allocation(&text, &case.inst).unwrap();
        prop_assert_eq!(back, alloc);
    }
}
