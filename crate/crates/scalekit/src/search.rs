//! Order-space search: enumerate or sample orderings over a small
//! universe and tally which scale type each measure attains on each
//! ordering.
//!
//! A census classifies every examined ordering into one of three
//! disjoint buckets per measure — interval, ordinal-not-interval,
//! not-ordinal — so the bucket counts always sum to the number of
//! orderings examined. Classification uses an integer fast path: a
//! measure is ordinal on a weak order exactly when the order's level
//! vector equals the measure's dense value-rank vector (both are dense,
//! so representing the same weak order means being equal), and among
//! ordinal orders the interval ones are those whose distinct sorted
//! values are equispaced — a property of the value set alone. Agreement
//! with the pairwise definitions is pinned by tests.

use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measures::{evaluate_all, MeasureConfig, MeasureValues};
use crate::numeric::Rational;
use crate::orderings::{order_from_measure, WeakOrder};
use crate::scalecheck::{check_interval, value_ranks, IntervalReport, IntervalVerdict};
use crate::universe::Universe;

/// Cap on exhaustively enumerated orderings.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// n! as a u128; caps keep n small enough that this cannot overflow.
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Fubini (ordered Bell) numbers: the count of weak orders on n
/// elements, via F(n) = Σ_{k≥1} C(n,k) F(n−k).
pub fn fubini(n: usize) -> u128 {
    let mut f = vec![1u128; n + 1];
    for i in 1..=n {
        let mut total = 0u128;
        let mut binom = 1u128; // C(i, k)
        for k in 1..=i {
            binom = binom * (i - k + 1) as u128 / k as u128;
            total += binom * f[i - k];
        }
        f[i] = total;
    }
    f[n]
}

/// All strict total orders (singleton-class weak orders) on the
/// universe, lexicographic by the permutation that lists element indices
/// from lowest class to highest.
pub fn enumerate_strict_orders(
    universe: &Arc<Universe>,
    cap: u64,
) -> Result<impl Iterator<Item = WeakOrder> + '_> {
    let m = universe.len();
    let count = factorial(m);
    if count > cap as u128 {
        return Err(Error::OrderCap {
            requested: count,
            cap,
        });
    }
    let universe = Arc::clone(universe);
    Ok((0..m).permutations(m).map(move |perm| {
        let classes = perm.into_iter().map(|idx| vec![idx]).collect();
        WeakOrder::new(Arc::clone(&universe), classes)
            .expect("a permutation partitions the universe")
    }))
}

/// All weak orders on the universe: every dense level vector (each
/// level in 0..=max occurs at least once), lexicographic by vector.
pub fn enumerate_weak_orders(
    universe: &Arc<Universe>,
    cap: u64,
) -> Result<WeakOrderIter> {
    let m = universe.len();
    let count = fubini(m);
    if count > cap as u128 {
        return Err(Error::OrderCap {
            requested: count,
            cap,
        });
    }
    Ok(WeakOrderIter::new(Arc::clone(universe)))
}

/// Depth-first generator of dense level vectors in lexicographic order.
pub struct WeakOrderIter {
    universe: Arc<Universe>,
    m: usize,
    /// levels[..depth] is the current prefix; the entry at `depth` is
    /// the next candidate value to try there.
    levels: Vec<usize>,
    depth: usize,
    /// Occurrences of each level within the prefix.
    counts: Vec<usize>,
    /// How many levels in 0..=max(prefix) are currently unused.
    missing: usize,
    done: bool,
}

impl WeakOrderIter {
    fn new(universe: Arc<Universe>) -> WeakOrderIter {
        let m = universe.len();
        WeakOrderIter {
            universe,
            m,
            levels: vec![0; m],
            depth: 0,
            counts: vec![0; m],
            missing: 0,
            done: m == 0,
        }
    }

    /// Push `levels[depth]` into the prefix bookkeeping.
    fn place(&mut self) {
        let v = self.levels[self.depth];
        let max_before = self.max_used();
        if self.counts[v] == 0 {
            // Newly used level: it was either missing (v <= old max) or
            // extends the range, making every skipped level missing.
            if max_before.is_some_and(|mb| v <= mb) {
                self.missing -= 1;
            } else {
                let start = max_before.map_or(0, |mb| mb + 1);
                self.missing += v - start;
            }
        }
        self.counts[v] += 1;
        self.depth += 1;
    }

    /// Undo the most recent `place`, returning the value removed.
    fn unplace(&mut self) -> usize {
        self.depth -= 1;
        let v = self.levels[self.depth];
        self.counts[v] -= 1;
        if self.counts[v] == 0 {
            let max_after = self.max_used();
            if max_after.is_some_and(|ma| v < ma) {
                self.missing += 1;
            } else {
                let start = max_after.map_or(0, |ma| ma + 1);
                self.missing -= v - start;
            }
        }
        v
    }

    fn max_used(&self) -> Option<usize> {
        self.counts.iter().rposition(|&c| c > 0)
    }

    /// Would placing value `v` keep a dense completion possible?
    fn viable(&self, v: usize) -> bool {
        if v >= self.m {
            return false;
        }
        let remaining = self.m - self.depth - 1;
        let max_before = self.max_used();
        let missing_after = if self.counts[v] > 0 {
            self.missing
        } else if max_before.is_some_and(|mb| v <= mb) {
            self.missing - 1
        } else {
            let start = max_before.map_or(0, |mb| mb + 1);
            self.missing + (v - start)
        };
        missing_after <= remaining
    }
}

impl Iterator for WeakOrderIter {
    type Item = WeakOrder;

    fn next(&mut self) -> Option<WeakOrder> {
        if self.done {
            return None;
        }
        loop {
            if self.depth == self.m {
                // Emit the complete vector, then backtrack to the next
                // candidate at the deepest incrementable position.
                let order = WeakOrder::from_level_vector(Arc::clone(&self.universe), &self.levels)
                    .expect("dense level vectors are valid weak orders");
                loop {
                    if self.depth == 0 {
                        self.done = true;
                        return Some(order);
                    }
                    let v = self.unplace();
                    self.levels[self.depth] = v + 1;
                    if self.levels[self.depth] < self.m {
                        break;
                    }
                }
                return Some(order);
            }
            let v = self.levels[self.depth];
            if v >= self.m {
                // Exhausted candidates here; backtrack.
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                let prev = self.unplace();
                self.levels[self.depth + 1] = 0;
                self.levels[self.depth] = prev + 1;
                continue;
            }
            if self.viable(v) {
                self.place();
                if self.depth < self.m {
                    self.levels[self.depth] = 0;
                }
            } else {
                self.levels[self.depth] = v + 1;
            }
        }
    }
}

/// Which order space a census walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderSpace {
    StrictTotal,
    Weak,
}

impl OrderSpace {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderSpace::StrictTotal => "strict-total",
            OrderSpace::Weak => "weak",
        }
    }
}

/// Exhaustive enumeration or seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Sampled { .. } => "sampled",
        }
    }
}

/// A census request.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub universe: Arc<Universe>,
    pub measures: Vec<MeasureConfig>,
    pub order_space: OrderSpace,
    pub mode: SearchMode,
    pub max_witnesses: usize,
    pub eps: Rational,
    pub order_cap: u64,
}

impl SearchSpec {
    pub fn new(universe: Arc<Universe>, measures: Vec<MeasureConfig>) -> SearchSpec {
        SearchSpec {
            universe,
            measures,
            order_space: OrderSpace::Weak,
            mode: SearchMode::Exhaustive,
            max_witnesses: 5,
            eps: crate::numeric::default_eps(),
            order_cap: DEFAULT_ORDER_CAP,
        }
    }

    pub fn with_order_space(mut self, order_space: OrderSpace) -> SearchSpec {
        self.order_space = order_space;
        self
    }

    pub fn with_mode(mut self, mode: SearchMode) -> SearchSpec {
        self.mode = mode;
        self
    }
}

/// Example orderings for one verdict bucket, rendered in the ordering
/// file format, first-in-enumeration-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusWitness {
    pub verdict: IntervalVerdict,
    pub orderings: Vec<String>,
}

/// Per-measure bucket counts; the three buckets partition the examined
/// orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureCensus {
    pub measure: String,
    pub examined: u64,
    pub interval: u64,
    pub ordinal_not_interval: u64,
    pub not_ordinal: u64,
    pub witnesses: Vec<CensusWitness>,
}

impl MeasureCensus {
    /// Orderings the measure represents at all: interval ones included.
    pub fn ordinal_total(&self) -> u64 {
        self.interval + self.ordinal_not_interval
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub order_space: OrderSpace,
    pub mode: SearchMode,
    pub examined: u64,
    pub per_measure: Vec<MeasureCensus>,
}

/// Precomputed per-measure classification data: dense value ranks and
/// whether the distinct sorted values are equispaced.
struct MeasureProfile {
    label: String,
    rank: Vec<usize>,
    equispaced: bool,
}

impl MeasureProfile {
    fn build(config: &MeasureConfig, universe: &Arc<Universe>, eps: &Rational) -> Result<MeasureProfile> {
        let values = evaluate_all(config, universe)?;
        let ranks = value_ranks(&values, eps);
        // Sorted distinct values, one per rank.
        let mut representative = vec![None; ranks.distinct()];
        for (idx, &r) in ranks.rank().iter().enumerate() {
            representative[r].get_or_insert(values.value(idx));
        }
        let distinct: Vec<_> = representative.into_iter().map(Option::unwrap).collect();
        let equispaced = if distinct.len() < 2 {
            true
        } else {
            let first = distinct[1].sub(distinct[0]);
            distinct
                .windows(2)
                .all(|w| w[1].sub(w[0]).eq_eps(&first, eps))
        };
        Ok(MeasureProfile {
            label: config.label(),
            rank: ranks.rank().to_vec(),
            equispaced,
        })
    }

    fn classify(&self, levels: &[usize]) -> IntervalVerdict {
        if self.rank == levels {
            if self.equispaced {
                IntervalVerdict::Interval
            } else {
                IntervalVerdict::OrdinalNotInterval
            }
        } else {
            IntervalVerdict::NotOrdinal
        }
    }
}

struct Tally {
    interval: u64,
    ordinal_not_interval: u64,
    not_ordinal: u64,
    witness_interval: Vec<String>,
    witness_ordinal: Vec<String>,
    witness_not_ordinal: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            interval: 0,
            ordinal_not_interval: 0,
            not_ordinal: 0,
            witness_interval: Vec::new(),
            witness_ordinal: Vec::new(),
            witness_not_ordinal: Vec::new(),
        }
    }

    fn record(&mut self, verdict: IntervalVerdict, order: &WeakOrder, max_witnesses: usize) {
        let (count, witnesses) = match verdict {
            IntervalVerdict::Interval => (&mut self.interval, &mut self.witness_interval),
            IntervalVerdict::OrdinalNotInterval => {
                (&mut self.ordinal_not_interval, &mut self.witness_ordinal)
            }
            IntervalVerdict::NotOrdinal => (&mut self.not_ordinal, &mut self.witness_not_ordinal),
        };
        *count += 1;
        if witnesses.len() < max_witnesses {
            witnesses.push(order.render());
        }
    }

    fn finish(self, label: String, examined: u64) -> MeasureCensus {
        MeasureCensus {
            measure: label,
            examined,
            interval: self.interval,
            ordinal_not_interval: self.ordinal_not_interval,
            not_ordinal: self.not_ordinal,
            witnesses: vec![
                CensusWitness {
                    verdict: IntervalVerdict::Interval,
                    orderings: self.witness_interval,
                },
                CensusWitness {
                    verdict: IntervalVerdict::OrdinalNotInterval,
                    orderings: self.witness_ordinal,
                },
                CensusWitness {
                    verdict: IntervalVerdict::NotOrdinal,
                    orderings: self.witness_not_ordinal,
                },
            ],
        }
    }
}

/// Walk the order space and classify every ordering for every measure.
pub fn census(spec: &SearchSpec) -> Result<Census> {
    let profiles: Vec<MeasureProfile> = spec
        .measures
        .iter()
        .map(|config| MeasureProfile::build(config, &spec.universe, &spec.eps))
        .collect::<Result<_>>()?;
    let mut tallies: Vec<Tally> = profiles.iter().map(|_| Tally::new()).collect();
    let mut examined = 0u64;

    let mut visit = |order: &WeakOrder| {
        examined += 1;
        for (profile, tally) in profiles.iter().zip(&mut tallies) {
            let verdict = profile.classify(order.level_vector());
            tally.record(verdict, order, spec.max_witnesses);
        }
    };

    match spec.mode {
        SearchMode::Exhaustive => match spec.order_space {
            OrderSpace::StrictTotal => {
                for order in enumerate_strict_orders(&spec.universe, spec.order_cap)? {
                    visit(&order);
                }
            }
            OrderSpace::Weak => {
                for order in enumerate_weak_orders(&spec.universe, spec.order_cap)? {
                    visit(&order);
                }
            }
        },
        SearchMode::Sampled { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = spec.universe.len();
            for _ in 0..count {
                let order = match spec.order_space {
                    OrderSpace::StrictTotal => {
                        let mut perm: Vec<usize> = (0..m).collect();
                        perm.shuffle(&mut rng);
                        let mut levels = vec![0usize; m];
                        for (class, &idx) in perm.iter().enumerate() {
                            levels[idx] = class;
                        }
                        WeakOrder::from_level_vector(Arc::clone(&spec.universe), &levels)
                            .expect("a permutation is a dense level vector")
                    }
                    OrderSpace::Weak => sample_weak_order(&spec.universe, &mut rng),
                };
                visit(&order);
            }
        }
    }

    let per_measure = profiles
        .into_iter()
        .zip(tallies)
        .map(|(profile, tally)| tally.finish(profile.label, examined))
        .collect();
    Ok(Census {
        order_space: spec.order_space,
        mode: spec.mode,
        examined,
        per_measure,
    })
}

/// Draw a weak order by assigning each element an independent uniform
/// level in 0..m and compressing. This hits every weak order with
/// positive probability but is not uniform over weak orders.
pub fn sample_weak_order(universe: &Arc<Universe>, rng: &mut impl Rng) -> WeakOrder {
    let m = universe.len();
    let levels: Vec<usize> = (0..m).map(|_| rng.random_range(0..m)).collect();
    WeakOrder::from_level_vector(Arc::clone(universe), &levels)
        .expect("levels compress to a weak order")
}

/// Interval status of a measure on its own induced order — the best
/// case over all orderings: a measure is interval on some weak order
/// iff its distinct sorted values are equispaced, i.e. iff it is
/// interval here.
pub fn interval_on_induced_order(values: &MeasureValues, eps: &Rational) -> Result<IntervalReport> {
    let induced = order_from_measure(values, eps);
    check_interval(values, &induced, eps)
}
