//! Cross-module invariants, mostly property-based: verdict hierarchy,
//! affine invariance, round trips between renderers and parsers, and
//! closed forms checked against independent folds.

use std::sync::Arc;

use proptest::prelude::*;

use scalekit::measures::{evaluate_all, MeasureConfig, MeasureValues};
use scalekit::numeric::{default_eps, rat, Value};
use scalekit::orderings::{
    counterexample_order, order_from_measure, parse_ordering, sbto, WeakOrder,
};
use scalekit::scalecheck::{check_interval, check_ordinal, IntervalVerdict};
use scalekit::search::{census, OrderSpace, SearchSpec};
use scalekit::universe::{enumerate_universe, Mode, Universe, UniverseSpec};

fn universe(n: usize, mode: Mode) -> Arc<Universe> {
    Arc::new(enumerate_universe(UniverseSpec::binary(n, mode)).unwrap())
}

/// Any vector over 0..m, compressed to a dense level vector.
fn dense_levels(m: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..m, m).prop_map(|raw| {
        let mut seen: Vec<usize> = raw.clone();
        seen.sort_unstable();
        seen.dedup();
        raw.iter()
            .map(|v| seen.binary_search(v).unwrap())
            .collect()
    })
}

fn rank2_configs() -> Vec<MeasureConfig> {
    vec![
        MeasureConfig::precision(),
        MeasureConfig::recall(),
        MeasureConfig::f1(),
        MeasureConfig::average_precision(),
        MeasureConfig::dcg(),
        MeasureConfig::err(),
        MeasureConfig::rbp(rat(1, 2)),
        MeasureConfig::rbp(rat(1, 3)),
        MeasureConfig::rbp(rat(3, 4)),
    ]
}

proptest! {
    /// render -> parse is the identity on weak orders.
    #[test]
    fn render_parse_round_trip(levels in dense_levels(4)) {
        let u = universe(2, Mode::RankBased);
        let order = WeakOrder::from_level_vector(Arc::clone(&u), &levels).unwrap();
        let parsed = parse_ordering(&order.render(), &u).unwrap();
        let reparsed = parsed.as_weak().expect("a rendered weak order parses as weak");
        prop_assert_eq!(reparsed.level_vector(), order.level_vector());
    }

    /// The verdict hierarchy is coherent: interval and
    /// ordinal-not-interval verdicts coincide with an ordinal check,
    /// not-ordinal with its refutation.
    #[test]
    fn interval_verdict_refines_ordinal(levels in dense_levels(4), pick in 0usize..9) {
        let u = universe(2, Mode::RankBased);
        let order = WeakOrder::from_level_vector(Arc::clone(&u), &levels).unwrap();
        let values = evaluate_all(&rank2_configs()[pick], &u).unwrap();
        let eps = default_eps();
        let interval = check_interval(&values, &order, &eps).unwrap();
        let ordinal = check_ordinal(&values, &order, &eps).unwrap();
        match interval.verdict {
            IntervalVerdict::Interval | IntervalVerdict::OrdinalNotInterval => {
                prop_assert!(ordinal.is_ordinal());
                prop_assert!(interval.witnesses.is_empty() == interval.is_interval());
            }
            IntervalVerdict::NotOrdinal => {
                prop_assert!(!ordinal.is_ordinal());
                prop_assert!(!interval.ordinal.witnesses.is_empty());
            }
        }
        if interval.is_interval() && order.class_count() >= 2 {
            prop_assert!(interval.spacing.is_some());
        }
    }

    /// Ordinal and interval verdicts are invariant under positive affine
    /// transformation of an exact-valued measure.
    #[test]
    fn verdicts_invariant_under_positive_affine(
        levels in dense_levels(4),
        pick in 0usize..8,
        c_num in 1i64..12,
        c_den in 1i64..12,
        d_num in -12i64..12,
        d_den in 1i64..12,
    ) {
        let exact: Vec<MeasureConfig> = rank2_configs()
            .into_iter()
            .filter(|cfg| cfg.label() != "dcg")
            .collect();
        let u = universe(2, Mode::RankBased);
        let order = WeakOrder::from_level_vector(Arc::clone(&u), &levels).unwrap();
        let values = evaluate_all(&exact[pick], &u).unwrap();
        let c = rat(c_num, c_den);
        let d = rat(d_num, d_den);
        let mapped: Vec<Value> = values
            .values()
            .iter()
            .map(|v| Value::Exact(c.clone() * v.ratio() + d.clone()))
            .collect();
        let mapped = MeasureValues::from_values(Arc::clone(&u), "mapped", mapped);
        let eps = rat(0, 1);
        let before = check_interval(&values, &order, &eps).unwrap();
        let after = check_interval(&mapped, &order, &eps).unwrap();
        prop_assert_eq!(before.verdict, after.verdict);
        if let (Some(s), Some(t)) = (&before.spacing, &after.spacing) {
            prop_assert_eq!(&(c.clone() * s.ratio()), t.ratio());
        }
    }

    /// Every measure is ordinal on the order it induces, and that order
    /// never yields a not-ordinal interval verdict.
    #[test]
    fn induced_order_is_ordinal_for_its_measure(pick in 0usize..9, n in 1usize..=3) {
        let u = universe(n, Mode::RankBased);
        let values = evaluate_all(&rank2_configs()[pick], &u).unwrap();
        let eps = default_eps();
        let order = order_from_measure(&values, &eps);
        prop_assert!(check_ordinal(&values, &order, &eps).unwrap().is_ordinal());
        prop_assert_ne!(
            check_interval(&values, &order, &eps).unwrap().verdict,
            IntervalVerdict::NotOrdinal
        );
    }

    /// Rank-biased precision agrees with the independent fold
    /// (1-p) * sum of g_i * p^(i-1).
    #[test]
    fn rbp_matches_closed_form(n in 1usize..=6, p_pick in 0usize..4, idx_seed in 0usize..1024) {
        let ps = [rat(1, 2), rat(1, 4), rat(1, 3), rat(3, 4)];
        let p = ps[p_pick].clone();
        let u = universe(n, Mode::RankBased);
        let idx = idx_seed % u.len();
        let values = evaluate_all(&MeasureConfig::rbp(p.clone()), &u).unwrap();
        let mut expected = rat(0, 1);
        let mut weight = rat(1, 1) - p.clone();
        for grade in u.element(idx).grades() {
            expected += rat(i64::from(grade.value()), 1) * weight.clone();
            weight *= p.clone();
        }
        prop_assert_eq!(values.value(idx).ratio(), &expected);
    }
}

/// The three census buckets are disjoint and partition the examined
/// orders, whose count matches the size of the order space.
#[test]
fn census_buckets_partition_examined() {
    let u = universe(2, Mode::RankBased);
    let configs = vec![
        MeasureConfig::precision(),
        MeasureConfig::average_precision(),
        MeasureConfig::rbp(rat(1, 2)),
        MeasureConfig::dcg(),
    ];
    for (space, expected) in [(OrderSpace::Weak, 75u64), (OrderSpace::StrictTotal, 24u64)] {
        let result = census(
            &SearchSpec::new(Arc::clone(&u), configs.clone()).with_order_space(space),
        )
        .unwrap();
        assert_eq!(result.examined, expected);
        for mc in &result.per_measure {
            assert_eq!(
                mc.interval + mc.ordinal_not_interval + mc.not_ordinal,
                result.examined,
                "{}",
                mc.measure
            );
        }
    }
}

/// The scale type is a property of the pair (measure, ordering), not of
/// the measure alone: the same measure is interval against one ordering
/// and not even ordinal against another.
#[test]
fn scale_type_depends_on_the_ordering() {
    let eps = rat(0, 1);
    let u = universe(2, Mode::SetBased);
    let values = evaluate_all(&MeasureConfig::precision(), &u).unwrap();
    let tidy = sbto(&u).unwrap();
    assert!(check_interval(&values, &tidy, &eps).unwrap().is_interval());

    let hostile = counterexample_order();
    let values = evaluate_all(&MeasureConfig::precision(), hostile.universe()).unwrap();
    assert_eq!(
        check_interval(&values, &hostile, &eps).unwrap().verdict,
        IntervalVerdict::NotOrdinal
    );
}
