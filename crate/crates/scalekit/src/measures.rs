//! IR evaluation measures as mappings from elements to values.
//!
//! Formulas (N = list length, RB = recall base, j = relevant count):
//!
//! * Precision      `j / N`
//! * Recall         `j / RB`
//! * F-measure      `(1+b^2)PR / (b^2 P + R)`, with `0/0` defined as 0
//! * AP             `(1/RB) * sum over relevant ranks i of P@i`
//! * DCG            `sum_i gain(g_i) / log_b(i+1)`
//! * ERR            `sum_i (1/i) R_i prod_{j<i} (1-R_j)`, `R_i = (2^g_i - 1)/2^g_max`
//! * RBP            `(1-p) * sum_i p^(i-1) g_i/g_max`
//!
//! All but DCG are exact rationals. DCG values are rational approximants
//! of the true (irrational) value with error below 2^-140 and are tagged
//! [`Value::Approx`] so every comparison goes through an epsilon.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, log2_fixed, Rational, Value, LOG_PRECISION_BITS};
use crate::universe::{Element, Mode, Universe, UniverseSpec};

/// The measures this crate knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    Precision,
    Recall,
    FMeasure,
    AveragePrecision,
    Dcg,
    Err,
    Rbp,
}

impl MeasureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::Precision => "precision",
            MeasureKind::Recall => "recall",
            MeasureKind::FMeasure => "f",
            MeasureKind::AveragePrecision => "ap",
            MeasureKind::Dcg => "dcg",
            MeasureKind::Err => "err",
            MeasureKind::Rbp => "rbp",
        }
    }
}

/// DCG gain function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gain {
    Linear,
    Exponential,
}

impl Gain {
    pub fn as_str(self) -> &'static str {
        match self {
            Gain::Linear => "linear",
            Gain::Exponential => "exponential",
        }
    }
}

/// A measure plus its parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureConfig {
    pub kind: MeasureKind,
    /// RBP persistence, in (0, 1).
    pub p: Option<Rational>,
    /// F-measure beta, positive. Defaults to 1.
    pub beta: Rational,
    /// DCG discount base, at least 2. Defaults to 2.
    pub discount_base: u32,
    /// DCG gain function. Defaults to linear.
    pub gain: Gain,
}

impl MeasureConfig {
    fn bare(kind: MeasureKind) -> MeasureConfig {
        MeasureConfig {
            kind,
            p: None,
            beta: Rational::one(),
            discount_base: 2,
            gain: Gain::Linear,
        }
    }

    pub fn precision() -> MeasureConfig {
        Self::bare(MeasureKind::Precision)
    }

    pub fn recall() -> MeasureConfig {
        Self::bare(MeasureKind::Recall)
    }

    pub fn f_measure(beta: Rational) -> MeasureConfig {
        MeasureConfig {
            beta,
            ..Self::bare(MeasureKind::FMeasure)
        }
    }

    pub fn f1() -> MeasureConfig {
        Self::f_measure(Rational::one())
    }

    pub fn average_precision() -> MeasureConfig {
        Self::bare(MeasureKind::AveragePrecision)
    }

    pub fn dcg() -> MeasureConfig {
        Self::bare(MeasureKind::Dcg)
    }

    pub fn dcg_with(discount_base: u32, gain: Gain) -> MeasureConfig {
        MeasureConfig {
            discount_base,
            gain,
            ..Self::bare(MeasureKind::Dcg)
        }
    }

    pub fn err() -> MeasureConfig {
        Self::bare(MeasureKind::Err)
    }

    pub fn rbp(p: Rational) -> MeasureConfig {
        MeasureConfig {
            p: Some(p),
            ..Self::bare(MeasureKind::Rbp)
        }
    }

    /// Check parameters and compatibility with a universe spec. Set-based
    /// universes admit only Precision, Recall and F-measure; those three
    /// and AP require binary grades.
    pub fn validate(&self, spec: &UniverseSpec) -> Result<()> {
        spec.validate()?;
        match self.kind {
            MeasureKind::Rbp => {
                let p = self
                    .p
                    .as_ref()
                    .ok_or_else(|| Error::InvalidConfig("rbp needs a persistence p".into()))?;
                if *p <= Rational::zero() || *p >= Rational::one() {
                    return Err(Error::InvalidConfig(format!(
                        "rbp persistence must lie in (0,1), got {}",
                        format_rational(p)
                    )));
                }
            }
            MeasureKind::FMeasure => {
                if self.beta <= Rational::zero() {
                    return Err(Error::InvalidConfig("beta must be positive".into()));
                }
            }
            MeasureKind::Dcg if self.discount_base < 2 => {
                return Err(Error::InvalidConfig(
                    "dcg discount base must be at least 2".into(),
                ));
            }
            _ => {}
        }
        let set_ok = matches!(
            self.kind,
            MeasureKind::Precision | MeasureKind::Recall | MeasureKind::FMeasure
        );
        if spec.mode == Mode::SetBased && !set_ok {
            return Err(Error::UnsupportedMeasure(format!(
                "{} is rank-based only",
                self.kind.as_str()
            )));
        }
        let needs_binary = matches!(
            self.kind,
            MeasureKind::Precision
                | MeasureKind::Recall
                | MeasureKind::FMeasure
                | MeasureKind::AveragePrecision
        );
        if needs_binary && !spec.is_binary() {
            return Err(Error::UnsupportedMeasure(format!(
                "{} needs binary grades",
                self.kind.as_str()
            )));
        }
        Ok(())
    }

    /// Stable human/JSON label, e.g. `rbp(p=1/2)`.
    pub fn label(&self) -> String {
        match self.kind {
            MeasureKind::Rbp => format!(
                "rbp(p={})",
                self.p.as_ref().map(format_rational).unwrap_or_default()
            ),
            MeasureKind::FMeasure => format!("f(beta={})", format_rational(&self.beta)),
            MeasureKind::Dcg => format!(
                "dcg(b={},{})",
                self.discount_base,
                self.gain.as_str()
            ),
            kind => kind.as_str().to_string(),
        }
    }
}

impl fmt::Display for MeasureConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn ratio(numer: usize, denom: usize) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

fn ensure_binary(element: &Element, kind: MeasureKind) -> Result<()> {
    if element.grades().iter().any(|g| g.value() > 1) {
        return Err(Error::UnsupportedMeasure(format!(
            "{} needs binary grades",
            kind.as_str()
        )));
    }
    Ok(())
}

fn ensure_length(element: &Element, spec: &UniverseSpec) -> Result<()> {
    if element.len() != spec.n {
        return Err(Error::InvalidSpec(format!(
            "element length {} does not match N = {}",
            element.len(),
            spec.n
        )));
    }
    Ok(())
}

/// Precision: relevant count over N.
pub fn precision(element: &Element, spec: &UniverseSpec) -> Result<Rational> {
    ensure_length(element, spec)?;
    ensure_binary(element, MeasureKind::Precision)?;
    Ok(ratio(element.relevant_count(), spec.n))
}

/// Recall: relevant count over the recall base.
pub fn recall(element: &Element, spec: &UniverseSpec) -> Result<Rational> {
    ensure_length(element, spec)?;
    ensure_binary(element, MeasureKind::Recall)?;
    if spec.recall_base == 0 {
        return Err(Error::InvalidSpec("recall base must be positive".into()));
    }
    if element.relevant_count() > spec.recall_base {
        return Err(Error::InvalidSpec(format!(
            "recall base {} is below the relevant count {}",
            spec.recall_base,
            element.relevant_count()
        )));
    }
    Ok(ratio(element.relevant_count(), spec.recall_base))
}

/// F-measure with parameter beta; the 0/0 case is defined as 0.
pub fn f_measure(element: &Element, spec: &UniverseSpec, beta: &Rational) -> Result<Rational> {
    let p = precision(element, spec)?;
    let r = recall(element, spec)?;
    if p.is_zero() && r.is_zero() {
        return Ok(Rational::zero());
    }
    let beta_sq = beta * beta;
    Ok((&beta_sq + Rational::one()) * &p * &r / (beta_sq * &p + &r))
}

/// Average precision: mean of P@i over relevant ranks, divided by the
/// recall base.
pub fn average_precision(element: &Element, spec: &UniverseSpec) -> Result<Rational> {
    ensure_length(element, spec)?;
    ensure_binary(element, MeasureKind::AveragePrecision)?;
    if element.mode() == Mode::SetBased {
        return Err(Error::UnsupportedMeasure("ap is rank-based only".into()));
    }
    let mut hits = 0usize;
    let mut sum = Rational::zero();
    for (i, g) in element.grades().iter().enumerate() {
        if g.is_relevant() {
            hits += 1;
            sum += ratio(hits, i + 1);
        }
    }
    Ok(sum / ratio(spec.recall_base, 1))
}

/// DCG as a rational approximant; see the module docs for the precision
/// contract.
pub fn dcg(element: &Element, spec: &UniverseSpec, discount_base: u32, gain: Gain) -> Result<Rational> {
    ensure_length(element, spec)?;
    if element.mode() == Mode::SetBased {
        return Err(Error::UnsupportedMeasure("dcg is rank-based only".into()));
    }
    let discounts = discount_table(spec.n, discount_base);
    Ok(dcg_with_table(element, &discounts, gain))
}

/// log_b(i+1) for i = 1..=n, as high-precision rational approximants.
fn discount_table(n: usize, base: u32) -> Vec<Rational> {
    let log_base = log2_fixed(base as u64, LOG_PRECISION_BITS);
    (1..=n)
        .map(|i| log2_fixed(i as u64 + 1, LOG_PRECISION_BITS) / &log_base)
        .collect()
}

fn dcg_with_table(element: &Element, discounts: &[Rational], gain: Gain) -> Rational {
    let mut sum = Rational::zero();
    for (i, g) in element.grades().iter().enumerate() {
        if g.value() == 0 {
            continue;
        }
        let gain_value = match gain {
            Gain::Linear => BigInt::from(g.value()),
            Gain::Exponential => (BigInt::one() << g.value()) - 1,
        };
        sum += Rational::from(gain_value) / &discounts[i];
    }
    sum
}

/// Expected reciprocal rank with grade relevance `(2^g - 1) / 2^g_max`.
pub fn err(element: &Element, spec: &UniverseSpec) -> Result<Rational> {
    ensure_length(element, spec)?;
    if element.mode() == Mode::SetBased {
        return Err(Error::UnsupportedMeasure("err is rank-based only".into()));
    }
    let denom = BigInt::one() << spec.g_max;
    let mut continue_prob = Rational::one();
    let mut sum = Rational::zero();
    for (i, g) in element.grades().iter().enumerate() {
        let stop = Rational::new((BigInt::one() << g.value()) - 1, denom.clone());
        sum += ratio(1, i + 1) * &stop * &continue_prob;
        continue_prob *= Rational::one() - stop;
    }
    Ok(sum)
}

/// Rank-biased precision with persistence p, grades normalized by g_max.
pub fn rbp(element: &Element, spec: &UniverseSpec, p: &Rational) -> Result<Rational> {
    ensure_length(element, spec)?;
    if element.mode() == Mode::SetBased {
        return Err(Error::UnsupportedMeasure("rbp is rank-based only".into()));
    }
    if *p <= Rational::zero() || *p >= Rational::one() {
        return Err(Error::InvalidConfig(format!(
            "rbp persistence must lie in (0,1), got {}",
            format_rational(p)
        )));
    }
    let g_max = ratio(spec.g_max as usize, 1);
    let mut weight = Rational::one(); // p^(i-1)
    let mut sum = Rational::zero();
    for g in element.grades() {
        if g.value() > 0 {
            sum += &weight * ratio(g.value() as usize, 1) / &g_max;
        }
        weight *= p;
    }
    Ok((Rational::one() - p) * sum)
}

/// A measure evaluated over a whole universe: the mapping f.
#[derive(Debug, Clone)]
pub struct MeasureValues {
    universe: Arc<Universe>,
    label: String,
    config: Option<MeasureConfig>,
    values: Vec<Value>,
}

impl MeasureValues {
    /// Wrap precomputed values; they must be indexed by universe
    /// enumeration order.
    pub fn from_values(universe: Arc<Universe>, label: impl Into<String>, values: Vec<Value>) -> MeasureValues {
        assert_eq!(universe.len(), values.len(), "one value per element");
        MeasureValues {
            universe,
            label: label.into(),
            config: None,
            values,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn config(&self) -> Option<&MeasureConfig> {
        self.config.as_ref()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> &Value {
        &self.values[idx]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn has_approx(&self) -> bool {
        self.values.iter().any(Value::is_approx)
    }
}

/// Evaluate one measure over every element of a universe.
pub fn evaluate_all(config: &MeasureConfig, universe: &Arc<Universe>) -> Result<MeasureValues> {
    let spec = universe.spec();
    config.validate(spec)?;
    let values = match config.kind {
        MeasureKind::Precision => universe
            .elements()
            .iter()
            .map(|e| precision(e, spec).map(Value::Exact))
            .collect::<Result<Vec<_>>>()?,
        MeasureKind::Recall => universe
            .elements()
            .iter()
            .map(|e| recall(e, spec).map(Value::Exact))
            .collect::<Result<Vec<_>>>()?,
        MeasureKind::FMeasure => universe
            .elements()
            .iter()
            .map(|e| f_measure(e, spec, &config.beta).map(Value::Exact))
            .collect::<Result<Vec<_>>>()?,
        MeasureKind::AveragePrecision => universe
            .elements()
            .iter()
            .map(|e| average_precision(e, spec).map(Value::Exact))
            .collect::<Result<Vec<_>>>()?,
        MeasureKind::Err => universe
            .elements()
            .iter()
            .map(|e| err(e, spec).map(Value::Exact))
            .collect::<Result<Vec<_>>>()?,
        MeasureKind::Rbp => {
            let p = config.p.as_ref().expect("validated");
            universe
                .elements()
                .iter()
                .map(|e| rbp(e, spec, p).map(Value::Exact))
                .collect::<Result<Vec<_>>>()?
        }
        MeasureKind::Dcg => {
            let discounts = discount_table(spec.n, config.discount_base);
            universe
                .elements()
                .iter()
                .map(|e| Value::Approx(dcg_with_table(e, &discounts, config.gain)))
                .collect()
        }
    };
    Ok(MeasureValues {
        universe: Arc::clone(universe),
        label: config.label(),
        config: Some(config.clone()),
        values,
    })
}

/// Measure table as CSV: element, exact value as `num/den`, float value.
pub fn measure_table_csv(values: &MeasureValues) -> String {
    let mut out = String::from("element,value_exact,value_float\n");
    for (element, value) in values.universe.elements().iter().zip(&values.values) {
        out.push_str(&format!(
            "{},{},{}\n",
            element.text(),
            format_rational(value.ratio()),
            value.to_f64()
        ));
    }
    out
}
