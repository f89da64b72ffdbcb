//! Elements (assessed document lists) and the finite universes they form.
//!
//! An element is a length-N vector of relevance grades. Rank-based
//! elements keep their order; set-based elements are canonicalized
//! multisets (grades sorted descending), so multiset equality is plain
//! structural equality. A universe is the full enumeration of all
//! distinct elements for one spec, in a fixed deterministic order.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on universe cardinality (2^20 elements).
pub const DEFAULT_UNIVERSE_CAP: u64 = 1 << 20;

/// A single relevance grade in `[0, g_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(pub u8);

impl Grade {
    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_relevant(self) -> bool {
        self.0 > 0
    }
}

/// Whether list position carries meaning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    RankBased,
    SetBased,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::RankBased => "rank",
            Mode::SetBased => "set",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" | "rank-based" => Ok(Mode::RankBased),
            "set" | "set-based" => Ok(Mode::SetBased),
            other => Err(Error::InvalidSpec(format!("unknown mode {other:?}"))),
        }
    }
}

/// One assessed document list.
///
/// Set-based elements are stored in canonical form (grades sorted
/// descending); construction canonicalizes, so two elements with the same
/// grade multiset are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    grades: Vec<Grade>,
    mode: Mode,
}

impl Element {
    pub fn new(grades: Vec<u8>, mode: Mode) -> Element {
        let mut grades: Vec<Grade> = grades.into_iter().map(Grade).collect();
        if mode == Mode::SetBased {
            grades.sort_unstable_by(|a, b| b.cmp(a));
        }
        Element { grades, mode }
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    /// Number of relevant documents (grade > 0).
    pub fn relevant_count(&self) -> usize {
        self.grades.iter().filter(|g| g.is_relevant()).count()
    }

    /// Text encoding: one digit per grade, rank 1 leftmost; set-based
    /// elements render in canonical descending form, e.g. `10`.
    pub fn text(&self) -> String {
        self.grades
            .iter()
            .map(|g| char::from(b'0' + g.0))
            .collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

/// Canonical form of an element: identity for rank-based, grades sorted
/// descending for set-based. Idempotent.
pub fn canonicalize(element: &Element) -> Element {
    Element::new(element.grades.iter().map(|g| g.0).collect(), element.mode)
}

/// Parameters that determine a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UniverseSpec {
    /// List length N.
    pub n: usize,
    /// Maximum grade; binary relevance is `g_max = 1`.
    pub g_max: u8,
    pub mode: Mode,
    /// Recall base RB, the denominator of Recall. Defaults to N, the
    /// largest relevant count any universe element can have.
    pub recall_base: usize,
}

impl UniverseSpec {
    pub fn new(n: usize, g_max: u8, mode: Mode) -> UniverseSpec {
        UniverseSpec {
            n,
            g_max,
            mode,
            recall_base: n,
        }
    }

    pub fn binary(n: usize, mode: Mode) -> UniverseSpec {
        UniverseSpec::new(n, 1, mode)
    }

    pub fn with_recall_base(mut self, recall_base: usize) -> UniverseSpec {
        self.recall_base = recall_base;
        self
    }

    pub fn is_binary(&self) -> bool {
        self.g_max == 1
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("N must be at least 1".into()));
        }
        if self.g_max == 0 {
            return Err(Error::InvalidSpec("g_max must be at least 1".into()));
        }
        if self.g_max > 9 {
            return Err(Error::InvalidSpec(
                "g_max above 9 breaks the one-digit element encoding".into(),
            ));
        }
        if self.recall_base == 0 {
            return Err(Error::InvalidSpec("recall base must be positive".into()));
        }
        if self.recall_base < self.n {
            return Err(Error::InvalidSpec(format!(
                "recall base {} is below the maximum relevant count {}",
                self.recall_base, self.n
            )));
        }
        Ok(())
    }

    /// Closed-form universe cardinality.
    pub fn size(&self) -> Result<u128> {
        self.validate()?;
        let g = self.g_max as u128 + 1;
        match self.mode {
            Mode::RankBased => {
                let mut size: u128 = 1;
                for _ in 0..self.n {
                    size = size
                        .checked_mul(g)
                        .ok_or_else(|| Error::InvalidSpec("universe size overflow".into()))?;
                }
                Ok(size)
            }
            // Multisets of size N over g_max+1 grades: C(N + g_max, g_max).
            Mode::SetBased => {
                let mut size: u128 = 1;
                for i in 1..=(self.g_max as u128) {
                    size = size
                        .checked_mul(self.n as u128 + i)
                        .ok_or_else(|| Error::InvalidSpec("universe size overflow".into()))?
                        / i;
                }
                Ok(size)
            }
        }
    }

    /// Parse an element in the text encoding against this spec.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        if text.chars().count() != self.n {
            return Err(Error::ParseOrdering(format!(
                "element {text:?} has length {}, expected {}",
                text.chars().count(),
                self.n
            )));
        }
        let mut grades = Vec::with_capacity(self.n);
        for c in text.chars() {
            let digit = c
                .to_digit(10)
                .ok_or_else(|| Error::ParseOrdering(format!("bad grade {c:?} in {text:?}")))?;
            if digit > self.g_max as u32 {
                return Err(Error::ParseOrdering(format!(
                    "grade {digit} in {text:?} exceeds g_max {}",
                    self.g_max
                )));
            }
            grades.push(digit as u8);
        }
        Ok(Element::new(grades, self.mode))
    }
}

/// The full finite set of elements for one spec, in canonical enumeration
/// order: rank-based lexicographic by grade string (position 1 leftmost),
/// set-based lexicographic by canonical descending form (for binary
/// grades that is ascending relevant count).
#[derive(Debug, Clone)]
pub struct Universe {
    spec: UniverseSpec,
    elements: Vec<Element>,
    index: HashMap<Vec<Grade>, usize>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Universe {}

impl Universe {
    pub fn spec(&self) -> &UniverseSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Element {
        &self.elements[idx]
    }

    pub fn index_of(&self, element: &Element) -> Option<usize> {
        self.index.get(element.grades()).copied()
    }

    /// Resolve an element's text encoding to its enumeration index.
    /// Set-based text is canonicalized first, so `01` and `10` resolve to
    /// the same element.
    pub fn lookup_text(&self, text: &str) -> Result<usize> {
        let element = self.spec.parse_element(text)?;
        self.index_of(&element)
            .ok_or_else(|| Error::ParseOrdering(format!("element {text:?} not in universe")))
    }
}

/// Enumerate the universe for `spec` under the default size cap.
pub fn enumerate_universe(spec: UniverseSpec) -> Result<Universe> {
    enumerate_universe_capped(spec, DEFAULT_UNIVERSE_CAP)
}

/// Enumerate the universe for `spec`, rejecting universes larger than `cap`.
pub fn enumerate_universe_capped(spec: UniverseSpec, cap: u64) -> Result<Universe> {
    let size = spec.size()?;
    if size > cap as u128 {
        return Err(Error::UniverseCap {
            requested: size,
            cap,
        });
    }
    let mut elements = Vec::with_capacity(size as usize);
    let mut current = vec![0u8; spec.n];
    match spec.mode {
        Mode::RankBased => {
            // Odometer with the leftmost position most significant.
            for _ in 0..size {
                elements.push(Element::new(current.clone(), spec.mode));
                for pos in (0..spec.n).rev() {
                    if current[pos] < spec.g_max {
                        current[pos] += 1;
                        break;
                    }
                    current[pos] = 0;
                }
            }
        }
        Mode::SetBased => {
            // Non-increasing grade vectors in lexicographic order.
            fn descend(current: &mut Vec<u8>, n: usize, max: u8, out: &mut Vec<Element>) {
                if current.len() == n {
                    out.push(Element::new(current.clone(), Mode::SetBased));
                    return;
                }
                for g in 0..=max {
                    current.push(g);
                    descend(current, n, g, out);
                    current.pop();
                }
            }
            current.clear();
            descend(&mut current, spec.n, spec.g_max, &mut elements);
        }
    }
    debug_assert_eq!(elements.len() as u128, size);
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.grades().to_vec(), i))
        .collect();
    Ok(Universe {
        spec,
        elements,
        index,
    })
}
