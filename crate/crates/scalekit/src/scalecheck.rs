//! Scale-type decisions: is a measure an ordinal or an interval scale
//! with respect to a given ordering?
//!
//! Ordinal means the full biconditional `x ⪯ y iff f(x) ≤ f(y)` holds on
//! every pair. Interval, on a finite weak order, means the mapping is
//! equispaced: tie classes map to values in arithmetic progression with
//! positive step. Partial orders can only be checked for the weak
//! representation (`x ⪯ y ⇒ f(x) ≤ f(y)`, strict to strict), because the
//! biconditional cannot hold once genuinely incomparable pairs exist.
//!
//! The module also verifies the difference-structure axioms for the
//! step-count relation of a weak order, with a generic brute-force
//! checker available for injected (possibly inconsistent) relations.

use std::sync::Arc;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::measures::MeasureValues;
use crate::numeric::{Rational, Value};
use crate::orderings::{AnyOrder, OrderKind, PartialOrder, WeakOrder};

/// Bound on reported witnesses per check.
pub const DEFAULT_MAX_WITNESSES: usize = 5;

/// Universe-size cap for difference-structure checks.
pub const DEFAULT_DIFF_CAP: usize = 64;

/// Borrowed view of an ordering of either flavor.
#[derive(Debug, Clone, Copy)]
pub enum OrderRef<'a> {
    Weak(&'a WeakOrder),
    Partial(&'a PartialOrder),
}

impl<'a> From<&'a WeakOrder> for OrderRef<'a> {
    fn from(order: &'a WeakOrder) -> OrderRef<'a> {
        OrderRef::Weak(order)
    }
}

impl<'a> From<&'a PartialOrder> for OrderRef<'a> {
    fn from(order: &'a PartialOrder) -> OrderRef<'a> {
        OrderRef::Partial(order)
    }
}

impl<'a> From<&'a AnyOrder> for OrderRef<'a> {
    fn from(order: &'a AnyOrder) -> OrderRef<'a> {
        match order {
            AnyOrder::Weak(w) => OrderRef::Weak(w),
            AnyOrder::Partial(p) => OrderRef::Partial(p),
        }
    }
}

impl OrderRef<'_> {
    fn universe(&self) -> &Arc<crate::universe::Universe> {
        match self {
            OrderRef::Weak(w) => w.universe(),
            OrderRef::Partial(p) => p.universe(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdinalVerdict {
    Ordinal,
    NotOrdinal,
    /// Partial orders only: the weak representation holds but
    /// incomparable pairs make the biconditional unattainable.
    WeaklyRepresents,
}

impl OrdinalVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            OrdinalVerdict::Ordinal => "ordinal",
            OrdinalVerdict::NotOrdinal => "not-ordinal",
            OrdinalVerdict::WeaklyRepresents => "weakly-represents",
        }
    }
}

/// How the ordering relates the two elements of a violating pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRelation {
    LeftBelow,
    RightBelow,
    Tied,
}

impl PairRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            PairRelation::LeftBelow => "left-below",
            PairRelation::RightBelow => "right-below",
            PairRelation::Tied => "tied",
        }
    }
}

/// A pair on which the biconditional (or weak representation) fails:
/// the ordering relates `left`/`right` as `relation`, yet the values
/// disagree with that relation.
#[derive(Debug, Clone, PartialEq)]
pub struct PairWitness {
    pub left: usize,
    pub right: usize,
    pub left_value: Value,
    pub right_value: Value,
    pub relation: PairRelation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrdinalReport {
    pub verdict: OrdinalVerdict,
    pub order_kind: OrderKind,
    pub witnesses: Vec<PairWitness>,
}

impl OrdinalReport {
    pub fn is_ordinal(&self) -> bool {
        self.verdict == OrdinalVerdict::Ordinal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalVerdict {
    Interval,
    OrdinalNotInterval,
    NotOrdinal,
}

impl IntervalVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            IntervalVerdict::Interval => "interval",
            IntervalVerdict::OrdinalNotInterval => "ordinal-not-interval",
            IntervalVerdict::NotOrdinal => "not-ordinal",
        }
    }
}

/// Two consecutive-class pairs whose value gaps differ, refuting
/// equispacing. Indices are element representatives (first element of
/// each class).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadWitness {
    pub first_pair: (usize, usize),
    pub second_pair: (usize, usize),
    pub first_gap: Value,
    pub second_gap: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalReport {
    pub verdict: IntervalVerdict,
    /// Common gap between consecutive classes; `None` unless interval
    /// with at least two classes.
    pub spacing: Option<Value>,
    /// `(a, b)` with `f = a·(class index) + b`; set on interval verdicts.
    pub affine: Option<(Rational, Rational)>,
    pub witnesses: Vec<QuadWitness>,
    /// The underlying ordinal check, including its witnesses.
    pub ordinal: OrdinalReport,
}

impl IntervalReport {
    pub fn is_interval(&self) -> bool {
        self.verdict == IntervalVerdict::Interval
    }
}

/// Dense value ranks: elements with equal values share a rank, ranks
/// ascend with values and start at 0. For approximate values, ties are
/// chained: consecutive sorted values within eps join the same rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueRanks {
    rank: Vec<usize>,
    distinct: usize,
}

impl ValueRanks {
    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    pub fn distinct(&self) -> usize {
        self.distinct
    }
}

/// Compute dense value ranks, the integer skeleton used by the census
/// fast path and the exact ordinal check.
pub fn value_ranks(values: &MeasureValues, eps: &Rational) -> ValueRanks {
    let mut by_value: Vec<usize> = (0..values.len()).collect();
    by_value.sort_by(|&a, &b| {
        values
            .value(a)
            .ratio()
            .cmp(values.value(b).ratio())
            .then(a.cmp(&b))
    });
    let mut rank = vec![0usize; values.len()];
    let mut current = 0usize;
    for (pos, &idx) in by_value.iter().enumerate() {
        if pos > 0 {
            let prev = values.value(by_value[pos - 1]);
            if !values.value(idx).eq_eps(prev, eps) {
                current += 1;
            }
        }
        rank[idx] = current;
    }
    ValueRanks {
        rank,
        distinct: current + 1,
    }
}

/// Decide whether `values` is an ordinal scale for `order`: the full
/// biconditional on weak orders, the weak representation on partial
/// orders. Witnesses are collected in lowest-index-pair-first order, at
/// most [`DEFAULT_MAX_WITNESSES`] of them.
pub fn check_ordinal<'a>(
    values: &MeasureValues,
    order: impl Into<OrderRef<'a>>,
    eps: &Rational,
) -> Result<OrdinalReport> {
    check_ordinal_with(values, order, eps, DEFAULT_MAX_WITNESSES)
}

pub fn check_ordinal_with<'a>(
    values: &MeasureValues,
    order: impl Into<OrderRef<'a>>,
    eps: &Rational,
    max_witnesses: usize,
) -> Result<OrdinalReport> {
    let order = order.into();
    if values.universe() != order.universe() {
        return Err(Error::UniverseMismatch);
    }
    match order {
        OrderRef::Weak(weak) => Ok(check_ordinal_weak(values, weak, eps, max_witnesses)),
        OrderRef::Partial(partial) => Ok(check_ordinal_partial(values, partial, eps, max_witnesses)),
    }
}

fn pair_witness(
    values: &MeasureValues,
    i: usize,
    j: usize,
    relation: PairRelation,
) -> PairWitness {
    PairWitness {
        left: i,
        right: j,
        left_value: values.value(i).clone(),
        right_value: values.value(j).clone(),
        relation,
    }
}

fn check_ordinal_weak(
    values: &MeasureValues,
    order: &WeakOrder,
    eps: &Rational,
    max_witnesses: usize,
) -> OrdinalReport {
    let mut witnesses = Vec::new();
    if values.has_approx() {
        // Direct pairwise scan with eps comparisons.
        let m = values.len();
        'outer: for i in 0..m {
            for j in i + 1..m {
                let cmp = values.value(i).cmp_eps(values.value(j), eps);
                let relation = if order.tied(i, j) {
                    if cmp != std::cmp::Ordering::Equal {
                        Some(PairRelation::Tied)
                    } else {
                        None
                    }
                } else if order.lt(i, j) {
                    (cmp != std::cmp::Ordering::Less).then_some(PairRelation::LeftBelow)
                } else {
                    (cmp != std::cmp::Ordering::Greater).then_some(PairRelation::RightBelow)
                };
                if let Some(relation) = relation {
                    witnesses.push(pair_witness(values, i, j, relation));
                    if witnesses.len() >= max_witnesses {
                        break 'outer;
                    }
                }
            }
        }
    } else {
        // Exact values: the biconditional holds iff the order's level
        // vector equals the dense value-rank vector, because both are
        // dense and induce the respective weak orders.
        let ranks = value_ranks(values, eps);
        if ranks.rank() != order.level_vector() {
            let rank = ranks.rank();
            let m = values.len();
            'outer: for i in 0..m {
                for j in i + 1..m {
                    let relation = if order.tied(i, j) {
                        (rank[i] != rank[j]).then_some(PairRelation::Tied)
                    } else if order.lt(i, j) {
                        (rank[i] >= rank[j]).then_some(PairRelation::LeftBelow)
                    } else {
                        (rank[j] >= rank[i]).then_some(PairRelation::RightBelow)
                    };
                    if let Some(relation) = relation {
                        witnesses.push(pair_witness(values, i, j, relation));
                        if witnesses.len() >= max_witnesses {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let verdict = if witnesses.is_empty() {
        OrdinalVerdict::Ordinal
    } else {
        OrdinalVerdict::NotOrdinal
    };
    OrdinalReport {
        verdict,
        order_kind: order.kind(),
        witnesses,
    }
}

fn check_ordinal_partial(
    values: &MeasureValues,
    order: &PartialOrder,
    eps: &Rational,
    max_witnesses: usize,
) -> OrdinalReport {
    let m = values.len();
    let mut witnesses = Vec::new();
    let mut incomparable = false;
    'outer: for i in 0..m {
        for j in i + 1..m {
            let cmp = values.value(i).cmp_eps(values.value(j), eps);
            let relation = if order.tied(i, j) {
                if cmp != std::cmp::Ordering::Equal {
                    Some(PairRelation::Tied)
                } else {
                    None
                }
            } else if order.lt(i, j) {
                (cmp != std::cmp::Ordering::Less).then_some(PairRelation::LeftBelow)
            } else if order.lt(j, i) {
                (cmp != std::cmp::Ordering::Greater).then_some(PairRelation::RightBelow)
            } else {
                incomparable = true;
                None
            };
            if let Some(relation) = relation {
                witnesses.push(pair_witness(values, i, j, relation));
                if witnesses.len() >= max_witnesses {
                    break 'outer;
                }
            }
        }
    }
    let verdict = if !witnesses.is_empty() {
        OrdinalVerdict::NotOrdinal
    } else if incomparable {
        OrdinalVerdict::WeaklyRepresents
    } else {
        OrdinalVerdict::Ordinal
    };
    OrdinalReport {
        verdict,
        order_kind: OrderKind::Partial,
        witnesses,
    }
}

/// The canonical equispaced representation of a weak order: each element
/// maps to its 0-based class index.
pub fn canonical_interval_scale(order: &WeakOrder) -> MeasureValues {
    let values = order
        .level_vector()
        .iter()
        .map(|&c| Value::Exact(Rational::from_integer(c.into())))
        .collect();
    MeasureValues::from_values(Arc::clone(order.universe()), "canonical-scale", values)
}

/// Solve `f = a·g + b` if such rationals exist, verifying every element;
/// `a` may take any sign. Comparisons are exact unless either side holds
/// approximate values, in which case they are eps-tolerant.
pub fn affine_relate(
    f: &MeasureValues,
    g: &MeasureValues,
    eps: &Rational,
) -> Result<Option<(Rational, Rational)>> {
    if f.universe() != g.universe() {
        return Err(Error::UniverseMismatch);
    }
    let m = f.len();
    if m == 0 {
        return Ok(Some((Rational::one(), Rational::zero())));
    }
    let approx = f.has_approx() || g.has_approx();
    let close = |x: &Rational, y: &Rational| {
        if approx {
            num::traits::Signed::abs(&(x - y)) <= *eps
        } else {
            x == y
        }
    };
    let g0 = g.value(0).ratio();
    let f0 = f.value(0).ratio();
    let (a, b) = match (1..m).find(|&i| g.value(i).ratio() != g0) {
        None => {
            // Constant g: representable iff f is constant too.
            (Rational::one(), f0 - g0)
        }
        Some(i1) => {
            let a = (f.value(i1).ratio() - f0) / (g.value(i1).ratio() - g0);
            let b = f0 - &a * g0;
            (a, b)
        }
    };
    for i in 0..m {
        let predicted = &a * g.value(i).ratio() + &b;
        if !close(f.value(i).ratio(), &predicted) {
            return Ok(None);
        }
    }
    Ok(Some((a, b)))
}

/// Decide interval status directly: ordinal first, then equispacing of
/// consecutive class values. This route never calls [`affine_relate`];
/// their agreement is a tested invariant, not a code dependency.
pub fn check_interval(
    values: &MeasureValues,
    order: &WeakOrder,
    eps: &Rational,
) -> Result<IntervalReport> {
    check_interval_with(values, order, eps, DEFAULT_MAX_WITNESSES)
}

pub fn check_interval_with(
    values: &MeasureValues,
    order: &WeakOrder,
    eps: &Rational,
    max_witnesses: usize,
) -> Result<IntervalReport> {
    let ordinal = check_ordinal_with(values, order, eps, max_witnesses)?;
    if !ordinal.is_ordinal() {
        return Ok(IntervalReport {
            verdict: IntervalVerdict::NotOrdinal,
            spacing: None,
            affine: None,
            witnesses: Vec::new(),
            ordinal,
        });
    }
    let reps: Vec<usize> = order.classes().iter().map(|class| class[0]).collect();
    if reps.len() == 1 {
        // A single class is vacuously equispaced; f = 1·0 + f(rep).
        let b = values.value(reps[0]).ratio().clone();
        return Ok(IntervalReport {
            verdict: IntervalVerdict::Interval,
            spacing: None,
            affine: Some((Rational::one(), b)),
            witnesses: Vec::new(),
            ordinal,
        });
    }
    let gaps: Vec<Value> = reps
        .windows(2)
        .map(|w| values.value(w[1]).sub(values.value(w[0])))
        .collect();
    let mut witnesses = Vec::new();
    for (i, gap) in gaps.iter().enumerate().skip(1) {
        if !gap.eq_eps(&gaps[0], eps) {
            witnesses.push(QuadWitness {
                first_pair: (reps[0], reps[1]),
                second_pair: (reps[i], reps[i + 1]),
                first_gap: gaps[0].clone(),
                second_gap: gap.clone(),
            });
            if witnesses.len() >= max_witnesses {
                break;
            }
        }
    }
    if witnesses.is_empty() {
        let b = values.value(reps[0]).ratio().clone();
        Ok(IntervalReport {
            verdict: IntervalVerdict::Interval,
            spacing: Some(gaps[0].clone()),
            affine: Some((gaps[0].ratio().clone(), b)),
            witnesses,
            ordinal,
        })
    } else {
        Ok(IntervalReport {
            verdict: IntervalVerdict::OrdinalNotInterval,
            spacing: None,
            affine: None,
            witnesses,
            ordinal,
        })
    }
}

/// Trivial one-to-one (nominal-scale) check: distinct elements receive
/// distinct values.
pub fn is_one_to_one(values: &MeasureValues, eps: &Rational) -> bool {
    let ranks = value_ranks(values, eps);
    ranks.distinct() == values.len()
}

/// A failed difference-structure axiom with a concrete witness: a list
/// of (class index, class index) pairs in the step-count relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub witness: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffStructureReport {
    pub verdict: bool,
    pub failed_axiom: Option<AxiomFailure>,
}

impl DiffStructureReport {
    fn pass() -> DiffStructureReport {
        DiffStructureReport {
            verdict: true,
            failed_axiom: None,
        }
    }

    fn fail(axiom: &'static str, witness: Vec<(usize, usize)>) -> DiffStructureReport {
        DiffStructureReport {
            verdict: false,
            failed_axiom: Some(AxiomFailure { axiom, witness }),
        }
    }
}

/// Verify the difference-structure axioms for the step-count relation of
/// `order`: pairs compare by class-index difference, (x,y) ⪯* (z,w) iff
/// idx(y)−idx(x) ≤ idx(w)−idx(z). Checks completeness, transitivity,
/// sign reversal, weak monotonicity and equal spacing of unit steps by
/// exhausting difference values; solvability and the Archimedean axiom
/// are finitely vacuous here.
pub fn check_difference_structure(order: &WeakOrder) -> Result<DiffStructureReport> {
    check_difference_structure_capped(order, DEFAULT_DIFF_CAP)
}

pub fn check_difference_structure_capped(
    order: &WeakOrder,
    cap: usize,
) -> Result<DiffStructureReport> {
    let elements = order.universe().len();
    if elements > cap {
        return Err(Error::QuadrupleCap { elements, cap });
    }
    let k = order.class_count() as isize;
    let d_max = k - 1;
    // A pair with difference d is realized by classes (x, x+d) where
    // x = max(0, -d); every d in [-d_max, d_max] is realizable.
    let pair_for = |d: isize| -> (usize, usize) {
        let x = 0.max(-d);
        (x as usize, (x + d) as usize)
    };

    // Completeness: any two differences are comparable.
    for d1 in -d_max..=d_max {
        for d2 in -d_max..=d_max {
            if !(d1 <= d2 || d2 <= d1) {
                return Ok(DiffStructureReport::fail(
                    "completeness",
                    vec![pair_for(d1), pair_for(d2)],
                ));
            }
        }
    }
    // Transitivity of ⪯* over differences.
    for d1 in -d_max..=d_max {
        for d2 in -d_max..=d_max {
            for d3 in -d_max..=d_max {
                if d1 <= d2 && d2 <= d3 && !(d1 <= d3) {
                    return Ok(DiffStructureReport::fail(
                        "transitivity",
                        vec![pair_for(d1), pair_for(d2), pair_for(d3)],
                    ));
                }
            }
        }
    }
    // Sign reversal: (x,y) ⪯* (z,w) implies (w,z) ⪯* (y,x).
    for d1 in -d_max..=d_max {
        for d2 in -d_max..=d_max {
            if d1 <= d2 && !(-d2 <= -d1) {
                return Ok(DiffStructureReport::fail(
                    "sign-reversal",
                    vec![pair_for(d1), pair_for(d2)],
                ));
            }
        }
    }
    // Weak monotonicity over realizable two-step chains: if the first
    // steps compare and the second steps compare, the composites must.
    // A chain (d1, d2) is realizable iff some start class x admits both
    // x+d1 and x+d1+d2.
    let chain_ok = |d1: isize, d2: isize| -> bool {
        let lo = 0.max(-d1).max(-d1 - d2);
        let hi = d_max.min(d_max - d1).min(d_max - d1 - d2);
        lo <= hi
    };
    let chain_pairs = |d1: isize, d2: isize| -> ((usize, usize), (usize, usize)) {
        let x = 0.max(-d1).max(-d1 - d2);
        (
            (x as usize, (x + d1) as usize),
            ((x + d1) as usize, (x + d1 + d2) as usize),
        )
    };
    for d1 in -d_max..=d_max {
        for e1 in d1..=d_max {
            for d2 in -d_max..=d_max {
                if !chain_ok(d1, d2) {
                    continue;
                }
                for e2 in d2..=d_max {
                    if !chain_ok(e1, e2) {
                        continue;
                    }
                    if d1 + d2 > e1 + e2 {
                        let (p1, p2) = chain_pairs(d1, d2);
                        let (q1, q2) = chain_pairs(e1, e2);
                        return Ok(DiffStructureReport::fail(
                            "weak-monotonicity",
                            vec![p1, q1, p2, q2],
                        ));
                    }
                }
            }
        }
    }
    // Equal spacing: all unit steps are ⪯*-equivalent.
    for i in 0..k - 1 {
        for j in 0..k - 1 {
            let di = (i + 1) - i;
            let dj = (j + 1) - j;
            if !(di <= dj && dj <= di) {
                return Ok(DiffStructureReport::fail(
                    "equal-spacing",
                    vec![
                        (i as usize, (i + 1) as usize),
                        (j as usize, (j + 1) as usize),
                    ],
                ));
            }
        }
    }
    Ok(DiffStructureReport::pass())
}

/// Brute-force difference-structure axioms for an arbitrary relation on
/// class-index pairs over `k` classes, used as a negative control and to
/// cross-validate the specialized checker. Intended for small `k`: the
/// monotonicity scan is O(k⁶).
pub fn check_difference_axioms<F>(k: usize, le: F) -> DiffStructureReport
where
    F: Fn((usize, usize), (usize, usize)) -> bool,
{
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .collect();
    // Completeness.
    for &p in &pairs {
        for &q in &pairs {
            if !le(p, q) && !le(q, p) {
                return DiffStructureReport::fail("completeness", vec![p, q]);
            }
        }
    }
    // Transitivity, via the score characterization: with completeness in
    // hand, ⪯* is transitive iff le(p,q) ⇔ score(p) ≤ score(q) where
    // score counts predecessors. On mismatch a concrete violating triple
    // is extracted.
    let score: Vec<usize> = pairs
        .iter()
        .map(|&p| pairs.iter().filter(|&&r| le(r, p)).count())
        .collect();
    for (pi, &p) in pairs.iter().enumerate() {
        for (qi, &q) in pairs.iter().enumerate() {
            if le(p, q) && score[pi] > score[qi] {
                let r = *pairs
                    .iter()
                    .find(|&&r| le(r, p) && !le(r, q))
                    .expect("a larger predecessor set contains an extra member");
                return DiffStructureReport::fail("transitivity", vec![r, p, q]);
            }
            if !le(p, q) && score[pi] <= score[qi] {
                let r = *pairs
                    .iter()
                    .find(|&&r| le(r, q) && !le(r, p))
                    .expect("a no-smaller predecessor set missing p has an extra member");
                return DiffStructureReport::fail("transitivity", vec![r, q, p]);
            }
        }
    }
    // Sign reversal.
    for &(x, y) in &pairs {
        for &(z, w) in &pairs {
            if le((x, y), (z, w)) && !le((w, z), (y, x)) {
                return DiffStructureReport::fail("sign-reversal", vec![(x, y), (z, w)]);
            }
        }
    }
    // Weak monotonicity.
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                for xp in 0..k {
                    for yp in 0..k {
                        for zp in 0..k {
                            if le((x, y), (xp, yp))
                                && le((y, z), (yp, zp))
                                && !le((x, z), (xp, zp))
                            {
                                return DiffStructureReport::fail(
                                    "weak-monotonicity",
                                    vec![(x, y), (xp, yp), (y, z), (yp, zp)],
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    // Equal spacing of unit steps.
    for i in 0..k.saturating_sub(1) {
        for j in 0..k - 1 {
            if !le((i, i + 1), (j, j + 1)) || !le((j, j + 1), (i, i + 1)) {
                return DiffStructureReport::fail(
                    "equal-spacing",
                    vec![(i, i + 1), (j, j + 1)],
                );
            }
        }
    }
    DiffStructureReport::pass()
}
