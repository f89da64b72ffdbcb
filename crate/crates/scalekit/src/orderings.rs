//! Orderings on a universe: strict total orders, weak orders (ties) and
//! partial orders, plus the named constructions used throughout.
//!
//! A [`WeakOrder`] is an ordered partition of the universe into tie
//! classes; earlier classes sit strictly below later ones, elements
//! within a class are tied. A strict total order is the special case
//! where every class is a singleton. A [`PartialOrder`] stores a
//! reflexive-transitive relation in which ties arise only from declared
//! equalities; cycles through non-tied elements are rejected.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::measures::MeasureValues;
use crate::numeric::Rational;
use crate::universe::{Mode, Universe};

/// Structural classification of an ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    StrictTotal,
    Weak,
    Partial,
}

impl OrderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderKind::StrictTotal => "strict-total",
            OrderKind::Weak => "weak",
            OrderKind::Partial => "partial",
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ordered partition of the universe into tie classes, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakOrder {
    universe: Arc<Universe>,
    /// Tie classes in ascending order; element indices sorted within each.
    classes: Vec<Vec<usize>>,
    /// Element index -> class index.
    class_of: Vec<usize>,
}

impl WeakOrder {
    /// Build from explicit classes, which must partition the universe.
    pub fn new(universe: Arc<Universe>, classes: Vec<Vec<usize>>) -> Result<WeakOrder> {
        let m = universe.len();
        let mut class_of = vec![usize::MAX; m];
        let mut classes = classes;
        for (c, class) in classes.iter_mut().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidSpec(format!("tie class {c} is empty")));
            }
            class.sort_unstable();
            for &idx in class.iter() {
                if idx >= m {
                    return Err(Error::InvalidSpec(format!(
                        "element index {idx} is outside the universe"
                    )));
                }
                if class_of[idx] != usize::MAX {
                    return Err(Error::InvalidSpec(format!(
                        "element {} appears in more than one class",
                        universe.element(idx).text()
                    )));
                }
                class_of[idx] = c;
            }
        }
        if let Some(missing) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidSpec(format!(
                "element {} is missing from the ordering",
                universe.element(missing).text()
            )));
        }
        Ok(WeakOrder {
            universe,
            classes,
            class_of,
        })
    }

    /// Build from a per-element level assignment; equal levels tie, lower
    /// levels come first. Levels need not be dense — they are compressed.
    pub fn from_level_vector(universe: Arc<Universe>, levels: &[usize]) -> Result<WeakOrder> {
        if levels.len() != universe.len() {
            return Err(Error::InvalidSpec(format!(
                "got {} levels for {} elements",
                levels.len(),
                universe.len()
            )));
        }
        let distinct: BTreeSet<usize> = levels.iter().copied().collect();
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); distinct.len()];
        for (idx, level) in levels.iter().enumerate() {
            let dense = distinct.range(..*level).count();
            classes[dense].push(idx);
        }
        WeakOrder::new(universe, classes)
    }

    /// Build from element texts, one slice per ascending tie class.
    pub fn from_class_texts(universe: &Arc<Universe>, classes: &[&[&str]]) -> Result<WeakOrder> {
        let resolved = classes
            .iter()
            .map(|class| class.iter().map(|t| universe.lookup_text(t)).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        WeakOrder::new(Arc::clone(universe), resolved)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, idx: usize) -> usize {
        self.class_of[idx]
    }

    /// Element index -> class index, as a slice.
    pub fn level_vector(&self) -> &[usize] {
        &self.class_of
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.class_of[i] <= self.class_of[j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.class_of[i] < self.class_of[j]
    }

    pub fn tied(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    pub fn is_strict_total(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn kind(&self) -> OrderKind {
        if self.is_strict_total() {
            OrderKind::StrictTotal
        } else {
            OrderKind::Weak
        }
    }

    /// Ordering file format: one line per tie class, ascending, elements
    /// comma-separated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for class in &self.classes {
            let texts: Vec<String> = class
                .iter()
                .map(|&idx| self.universe.element(idx).text())
                .collect();
            out.push_str(&texts.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for WeakOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|class| {
                let texts: Vec<String> = class
                    .iter()
                    .map(|&idx| self.universe.element(idx).text())
                    .collect();
                if texts.len() == 1 {
                    texts.into_iter().next().unwrap()
                } else {
                    format!("{{{}}}", texts.join(","))
                }
            })
            .collect();
        f.write_str(&classes.join(" < "))
    }
}

/// A reflexive-transitive relation with ties only where declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOrder {
    universe: Arc<Universe>,
    /// Row-major m×m matrix; `le[i*m + j]` means element i ⪯ element j.
    le: Vec<bool>,
    /// Tie-equivalence class id per element.
    tie_class: Vec<usize>,
}

impl PartialOrder {
    /// Build from strict constraints `below` (a ≺ b) and declared `ties`
    /// (a ~ b), then close transitively. A cycle through non-tied
    /// elements is an error.
    pub fn from_constraints(
        universe: Arc<Universe>,
        below: &[(usize, usize)],
        ties: &[(usize, usize)],
    ) -> Result<PartialOrder> {
        let m = universe.len();
        let check = |idx: usize| -> Result<()> {
            if idx >= m {
                return Err(Error::InvalidSpec(format!(
                    "element index {idx} is outside the universe"
                )));
            }
            Ok(())
        };

        // Union-find over declared ties.
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for &(a, b) in ties {
            check(a)?;
            check(b)?;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let tie_class: Vec<usize> = (0..m).map(|i| find(&mut parent, i)).collect();

        let mut le = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                if tie_class[i] == tie_class[j] {
                    le[i * m + j] = true;
                }
            }
        }
        for &(a, b) in below {
            check(a)?;
            check(b)?;
            le[a * m + b] = true;
        }
        // Transitive closure (Floyd–Warshall style).
        for k in 0..m {
            for i in 0..m {
                if !le[i * m + k] {
                    continue;
                }
                for j in 0..m {
                    if le[k * m + j] {
                        le[i * m + j] = true;
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                if le[i * m + j] && le[j * m + i] && tie_class[i] != tie_class[j] {
                    return Err(Error::InvalidSpec(format!(
                        "cycle through non-tied elements {} and {}",
                        universe.element(i).text(),
                        universe.element(j).text()
                    )));
                }
            }
        }
        Ok(PartialOrder {
            universe,
            le,
            tie_class,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i * self.universe.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && !self.le(j, i)
    }

    pub fn tied(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && self.le(j, i)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    pub fn is_total(&self) -> bool {
        let m = self.universe.len();
        (0..m).all(|i| (0..m).all(|j| self.comparable(i, j)))
    }

    pub fn kind(&self) -> OrderKind {
        OrderKind::Partial
    }

    /// Ordering file format: `partial` header, declared ties, then the
    /// transitive reduction of the strict relation between tie classes.
    pub fn render(&self) -> String {
        let m = self.universe.len();
        let mut out = String::from("partial\n");
        // One representative per tie class: the smallest element index.
        let mut rep_of: Vec<usize> = (0..m).collect();
        for i in 0..m {
            for j in 0..i {
                if self.tie_class[i] == self.tie_class[j] {
                    rep_of[i] = rep_of[j];
                    break;
                }
            }
        }
        for (i, &rep) in rep_of.iter().enumerate() {
            if rep != i {
                out.push_str(&format!(
                    "{} = {}\n",
                    self.universe.element(rep).text(),
                    self.universe.element(i).text()
                ));
            }
        }
        let reps: Vec<usize> = (0..m).filter(|&i| rep_of[i] == i).collect();
        for &a in &reps {
            for &b in &reps {
                if !self.lt(a, b) {
                    continue;
                }
                let covered = reps
                    .iter()
                    .any(|&c| c != a && c != b && self.lt(a, c) && self.lt(c, b));
                if !covered {
                    out.push_str(&format!(
                        "{} < {}\n",
                        self.universe.element(a).text(),
                        self.universe.element(b).text()
                    ));
                }
            }
        }
        out
    }
}

/// An ordering of either flavor, as produced by [`parse_ordering`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyOrder {
    Weak(WeakOrder),
    Partial(PartialOrder),
}

impl AnyOrder {
    pub fn universe(&self) -> &Arc<Universe> {
        match self {
            AnyOrder::Weak(w) => w.universe(),
            AnyOrder::Partial(p) => p.universe(),
        }
    }

    pub fn kind(&self) -> OrderKind {
        match self {
            AnyOrder::Weak(w) => w.kind(),
            AnyOrder::Partial(p) => p.kind(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            AnyOrder::Weak(w) => w.render(),
            AnyOrder::Partial(p) => p.render(),
        }
    }

    pub fn as_weak(&self) -> Option<&WeakOrder> {
        match self {
            AnyOrder::Weak(w) => Some(w),
            AnyOrder::Partial(_) => None,
        }
    }
}

/// Group elements by measure value, ascending: the order induced by the
/// measure, on which it is ordinal by construction. Approximate values
/// tie when consecutive sorted values differ by at most `eps`.
pub fn order_from_measure(values: &MeasureValues, eps: &Rational) -> WeakOrder {
    let universe = Arc::clone(values.universe());
    let mut by_value: Vec<usize> = (0..values.len()).collect();
    by_value.sort_by(|&a, &b| {
        values
            .value(a)
            .ratio()
            .cmp(values.value(b).ratio())
            .then(a.cmp(&b))
    });
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for idx in by_value {
        let starts_new = match classes.last() {
            None => true,
            Some(class) => {
                let prev = values.value(*class.last().unwrap());
                !values.value(idx).eq_eps(prev, eps)
            }
        };
        if starts_new {
            classes.push(vec![idx]);
        }
        if !starts_new {
            classes.last_mut().unwrap().push(idx);
        }
    }
    WeakOrder::new(universe, classes).expect("grouping a total value list yields a partition")
}

/// The set-based total order: classes ascending by relevant count. This
/// is the order on which Precision, Recall and F-measure come out
/// equispaced; reports label it a reconstruction.
pub fn sbto(universe: &Arc<Universe>) -> Result<WeakOrder> {
    if universe.spec().mode != Mode::SetBased || !universe.spec().is_binary() {
        return Err(Error::InvalidSpec(
            "sbto needs a set-based binary universe".into(),
        ));
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut last_count = usize::MAX;
    for (idx, e) in universe.elements().iter().enumerate() {
        if e.relevant_count() != last_count {
            classes.push(Vec::new());
            last_count = e.relevant_count();
        }
        classes.last_mut().unwrap().push(idx);
    }
    WeakOrder::new(Arc::clone(universe), classes)
}

/// The rank-based total order: grade vectors ascending by the binary
/// fraction Σ g_i 2^{-i}, i.e. most-significant-rank-first lexicographic
/// order. Reports label it a reconstruction.
pub fn rbto(universe: &Arc<Universe>) -> Result<WeakOrder> {
    if universe.spec().mode != Mode::RankBased || !universe.spec().is_binary() {
        return Err(Error::InvalidSpec(
            "rbto needs a rank-based binary universe".into(),
        ));
    }
    // Enumeration order is lexicographic with rank 1 most significant,
    // which is exactly the binary-fraction order.
    let classes = (0..universe.len()).map(|idx| vec![idx]).collect();
    WeakOrder::new(Arc::clone(universe), classes)
}

/// The three-class counterexample ordering {0,1} ⪯ {0,0} ⪯ {1,1} on the
/// N=2 set-based binary universe, under which Precision fails to be
/// ordinal.
pub fn counterexample_order() -> WeakOrder {
    let universe = Arc::new(
        crate::universe::enumerate_universe(crate::universe::UniverseSpec::binary(
            2,
            Mode::SetBased,
        ))
        .expect("the three-element universe is well below any cap"),
    );
    WeakOrder::from_class_texts(&universe, &[&["10"], &["00"], &["11"]])
        .expect("the counterexample classes partition the universe")
}

/// Parse the ordering file format. A `partial` header selects the
/// constraint format (`A < B` / `A = B` lines); otherwise each line is
/// one ascending tie class of comma-separated element texts.
pub fn parse_ordering(text: &str, universe: &Arc<Universe>) -> Result<AnyOrder> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(no, line)| (no + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Error::ParseOrdering("the ordering file is empty".into()));
    }
    if lines[0].1 == "partial" {
        return parse_partial(&lines[1..], universe).map(AnyOrder::Partial);
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; universe.len()];
    for &(no, line) in &lines {
        let mut class = Vec::new();
        for token in line.split(',') {
            let token = token.trim();
            let idx = universe
                .lookup_text(token)
                .map_err(|e| Error::ParseOrdering(format!("line {no}: {e}")))?;
            if seen[idx] {
                return Err(Error::ParseOrdering(format!(
                    "line {no}: element {token} appears twice"
                )));
            }
            seen[idx] = true;
            class.push(idx);
        }
        classes.push(class);
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(Error::ParseOrdering(format!(
            "element {} is missing; tie classes must partition the universe",
            universe.element(missing).text()
        )));
    }
    WeakOrder::new(Arc::clone(universe), classes).map(AnyOrder::Weak)
}

fn parse_partial(lines: &[(usize, &str)], universe: &Arc<Universe>) -> Result<PartialOrder> {
    let mut below = Vec::new();
    let mut ties = Vec::new();
    for &(no, line) in lines {
        let (separator, is_tie) = if line.contains('<') {
            ('<', false)
        } else if line.contains('=') {
            ('=', true)
        } else {
            return Err(Error::ParseOrdering(format!(
                "line {no}: expected `A < B` or `A = B`, got `{line}`"
            )));
        };
        let parts: Vec<&str> = line.split(separator).map(str::trim).collect();
        if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
            return Err(Error::ParseOrdering(format!(
                "line {no}: expected exactly one `{separator}` between two elements"
            )));
        }
        let a = universe
            .lookup_text(parts[0])
            .map_err(|e| Error::ParseOrdering(format!("line {no}: {e}")))?;
        let b = universe
            .lookup_text(parts[1])
            .map_err(|e| Error::ParseOrdering(format!("line {no}: {e}")))?;
        if is_tie {
            ties.push((a, b));
        } else {
            below.push((a, b));
        }
    }
    PartialOrder::from_constraints(Arc::clone(universe), &below, &ties)
        .map_err(|e| Error::ParseOrdering(e.to_string()))
}

/// Re-audit an ordering's structural invariants; an empty list means the
/// ordering is well-formed.
pub fn validate(order: &AnyOrder) -> Vec<String> {
    let mut diagnostics = Vec::new();
    match order {
        AnyOrder::Weak(w) => {
            let m = w.universe().len();
            let mut seen = vec![0usize; m];
            for (c, class) in w.classes().iter().enumerate() {
                if class.is_empty() {
                    diagnostics.push(format!("tie class {c} is empty"));
                }
                for &idx in class {
                    if idx >= m {
                        diagnostics.push(format!("class {c} references element index {idx}"));
                    } else {
                        seen[idx] += 1;
                    }
                }
            }
            for (idx, &count) in seen.iter().enumerate() {
                if count != 1 {
                    diagnostics.push(format!(
                        "element {} appears {count} times across classes",
                        w.universe().element(idx).text()
                    ));
                }
            }
        }
        AnyOrder::Partial(p) => {
            let m = p.universe().len();
            for i in 0..m {
                if !p.le(i, i) {
                    diagnostics.push(format!(
                        "relation is not reflexive at {}",
                        p.universe().element(i).text()
                    ));
                }
            }
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        if p.le(i, j) && p.le(j, k) && !p.le(i, k) {
                            diagnostics.push(format!(
                                "relation is not transitive at ({}, {}, {})",
                                p.universe().element(i).text(),
                                p.universe().element(j).text(),
                                p.universe().element(k).text()
                            ));
                        }
                    }
                }
            }
        }
    }
    diagnostics
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{evaluate_all, MeasureConfig, MeasureValues};
    use crate::numeric::{default_eps, rat, Value};
    use crate::universe::{enumerate_universe, UniverseSpec};

    fn set_universe(n: usize) -> Arc<Universe> {
        Arc::new(enumerate_universe(UniverseSpec::binary(n, Mode::SetBased)).unwrap())
    }

    fn rank_universe(n: usize) -> Arc<Universe> {
        Arc::new(enumerate_universe(UniverseSpec::binary(n, Mode::RankBased)).unwrap())
    }

    fn class_texts(order: &WeakOrder) -> Vec<Vec<String>> {
        order
            .classes()
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&idx| order.universe().element(idx).text())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn induced_order_of_precision_sorts_by_value() {
        let u = set_universe(2);
        let values = evaluate_all(&MeasureConfig::precision(), &u).unwrap();
        let order = order_from_measure(&values, &default_eps());
        assert_eq!(
            class_texts(&order),
            vec![vec!["00"], vec!["10"], vec!["11"]]
        );
        assert!(order.is_strict_total());
    }

    #[test]
    fn induced_order_of_a_constant_measure_is_one_class() {
        let u = rank_universe(2);
        let values = MeasureValues::from_values(
            Arc::clone(&u),
            "constant",
            vec![Value::Exact(rat(1, 3)); 4],
        );
        let order = order_from_measure(&values, &default_eps());
        assert_eq!(order.class_count(), 1);
        assert_eq!(order.kind(), OrderKind::Weak);
    }

    #[test]
    fn induced_order_of_rbp_half_is_the_binary_fraction_order() {
        let u = rank_universe(2);
        let values = evaluate_all(&MeasureConfig::rbp(rat(1, 2)), &u).unwrap();
        let order = order_from_measure(&values, &default_eps());
        assert_eq!(
            class_texts(&order),
            vec![vec!["00"], vec!["01"], vec!["10"], vec!["11"]]
        );
    }

    #[test]
    fn sbto_ascends_by_relevant_count() {
        let order = sbto(&set_universe(2)).unwrap();
        assert_eq!(
            class_texts(&order),
            vec![vec!["00"], vec!["10"], vec!["11"]]
        );
        assert_eq!(sbto(&set_universe(1)).unwrap().class_count(), 2);
        assert_eq!(sbto(&set_universe(3)).unwrap().class_count(), 4);
        assert!(sbto(&rank_universe(2)).is_err());
    }

    #[test]
    fn rbto_matches_a_binary_fraction_oracle() {
        let order = rbto(&rank_universe(2)).unwrap();
        assert_eq!(
            class_texts(&order),
            vec![vec!["00"], vec!["01"], vec!["10"], vec!["11"]]
        );
        // Oracle: sort elements by Σ g_i 2^{-i} computed explicitly.
        for n in 1..=8usize {
            let u = rank_universe(n);
            let order = rbto(&u).unwrap();
            let mut by_fraction: Vec<usize> = (0..u.len()).collect();
            by_fraction.sort_by_key(|&idx| {
                u.element(idx)
                    .grades()
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (g.value() as u64) << (n - 1 - i))
                    .sum::<u64>()
            });
            let from_order: Vec<usize> =
                order.classes().iter().map(|class| class[0]).collect();
            assert_eq!(from_order, by_fraction);
            assert!(order.is_strict_total());
        }
        assert!(rbto(&set_universe(2)).is_err());
    }

    #[test]
    fn counterexample_order_places_the_mixed_class_first() {
        let order = counterexample_order();
        assert_eq!(
            class_texts(&order),
            vec![vec!["10"], vec!["00"], vec!["11"]]
        );
        assert_eq!(order.class_count(), 3);
        assert_eq!(order.kind(), OrderKind::StrictTotal);
    }

    #[test]
    fn rbto_equals_the_rbp_half_induced_order_up_to_n_10() {
        for n in 1..=10usize {
            let u = rank_universe(n);
            let from_measure = order_from_measure(
                &evaluate_all(&MeasureConfig::rbp(rat(1, 2)), &u).unwrap(),
                &default_eps(),
            );
            assert_eq!(rbto(&u).unwrap(), from_measure, "N = {n}");
        }
    }

    #[test]
    fn rbp_below_half_induces_the_same_strict_order() {
        for p in [rat(1, 4), rat(1, 3), rat(2, 5)] {
            for n in 1..=10usize {
                let u = rank_universe(n);
                let from_measure = order_from_measure(
                    &evaluate_all(&MeasureConfig::rbp(p.clone()), &u).unwrap(),
                    &default_eps(),
                );
                assert_eq!(rbto(&u).unwrap(), from_measure);
            }
        }
    }

    #[test]
    fn level_vectors_compress_to_dense_classes() {
        let u = set_universe(2);
        let order = WeakOrder::from_level_vector(Arc::clone(&u), &[5, 2, 9]).unwrap();
        assert_eq!(
            class_texts(&order),
            vec![vec!["10"], vec!["00"], vec!["11"]]
        );
        let tied = WeakOrder::from_level_vector(Arc::clone(&u), &[1, 0, 1]).unwrap();
        assert_eq!(tied.class_count(), 2);
        assert!(tied.tied(0, 2));
        assert!(WeakOrder::from_level_vector(u, &[0, 1]).is_err());
    }

    #[test]
    fn weak_order_rejects_non_partitions() {
        let u = set_universe(2);
        assert!(WeakOrder::new(Arc::clone(&u), vec![vec![0], vec![1]]).is_err());
        assert!(WeakOrder::new(Arc::clone(&u), vec![vec![0, 1], vec![1], vec![2]]).is_err());
        assert!(WeakOrder::new(Arc::clone(&u), vec![vec![0], vec![], vec![1, 2]]).is_err());
        assert!(WeakOrder::new(u, vec![vec![0], vec![1], vec![2], vec![3]]).is_err());
    }

    #[test]
    fn parse_accepts_the_counterexample_file_verbatim() {
        // The mixed class may be written 01 or 10; both canonicalize.
        let u = set_universe(2);
        let parsed = parse_ordering("01\n00\n11\n", &u).unwrap();
        match parsed {
            AnyOrder::Weak(w) => assert_eq!(w, counterexample_order()),
            AnyOrder::Partial(_) => panic!("expected a weak order"),
        }
    }

    #[test]
    fn parse_reports_precise_weak_order_errors() {
        let u = set_universe(2);
        for (text, needle) in [
            ("01\n00\n12\n", "line 3"),
            ("01\n00\n01\n", "appears twice"),
            ("01\n00\n", "missing"),
            ("", "empty"),
        ] {
            let err = parse_ordering(text, &u).unwrap_err();
            let message = err.to_string();
            assert!(message.contains(needle), "{message:?} lacks {needle:?}");
        }
    }

    #[test]
    fn parse_partial_closes_transitively_and_rejects_cycles() {
        let u = rank_universe(2);
        let parsed = parse_ordering("partial\n00 < 01\n01 < 11\n", &u).unwrap();
        let p = match parsed {
            AnyOrder::Partial(p) => p,
            AnyOrder::Weak(_) => panic!("expected a partial order"),
        };
        let idx = |t: &str| u.lookup_text(t).unwrap();
        assert!(p.lt(idx("00"), idx("11")), "transitive closure");
        assert!(!p.comparable(idx("00"), idx("10")));
        assert!(!p.is_total());
        assert_eq!(p.kind(), OrderKind::Partial);

        let tied = parse_ordering("partial\n00 = 01\n00 < 11\n", &u).unwrap();
        match tied {
            AnyOrder::Partial(p) => {
                assert!(p.tied(idx("00"), idx("01")));
                assert!(p.lt(idx("01"), idx("11")), "ties share strict relations");
            }
            AnyOrder::Weak(_) => panic!("expected a partial order"),
        }

        let err = parse_ordering("partial\n00 < 01\n01 < 00\n", &u).unwrap_err();
        assert!(err.to_string().contains("cycle"));
    }

    #[test]
    fn render_then_parse_is_the_identity() {
        let u = set_universe(3);
        let weak = WeakOrder::from_level_vector(Arc::clone(&u), &[1, 0, 0, 2]).unwrap();
        let rendered = weak.render();
        match parse_ordering(&rendered, &u).unwrap() {
            AnyOrder::Weak(back) => {
                assert_eq!(back, weak);
                assert_eq!(back.render(), rendered);
            }
            AnyOrder::Partial(_) => panic!("expected a weak order"),
        }

        let ur = rank_universe(2);
        let partial = PartialOrder::from_constraints(
            Arc::clone(&ur),
            &[(0, 1), (1, 3), (0, 2)],
            &[(2, 3)],
        )
        .unwrap();
        let rendered = partial.render();
        match parse_ordering(&rendered, &ur).unwrap() {
            AnyOrder::Partial(back) => {
                assert_eq!(back, partial);
                assert_eq!(back.render(), rendered);
            }
            AnyOrder::Weak(_) => panic!("expected a partial order"),
        }
    }

    #[test]
    fn validate_is_quiet_on_well_formed_orderings() {
        let u = set_universe(2);
        let weak = AnyOrder::Weak(sbto(&u).unwrap());
        assert!(validate(&weak).is_empty());
        let partial = AnyOrder::Partial(
            PartialOrder::from_constraints(Arc::clone(&u), &[(0, 1)], &[]).unwrap(),
        );
        assert!(validate(&partial).is_empty());
    }
}
