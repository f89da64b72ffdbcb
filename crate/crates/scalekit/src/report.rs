//! Stable renderings of analysis results: JSON with fixed field order,
//! CSV, and human-oriented text.
//!
//! Every rendering is a pure function of its input, so identical inputs
//! produce byte-identical output — the property the CLI's determinism
//! guarantee rests on. Exact rationals render as `num/den` (integers
//! without the denominator); approximate values render as the shortest
//! round-trip decimal of their nearest f64.

use serde::Serialize;

use crate::measures::MeasureValues;
use crate::numeric::{format_rational, Value};
use crate::scalecheck::{
    DiffStructureReport, IntervalReport, IntervalVerdict, OrdinalReport, PairWitness, QuadWitness,
};
use crate::search::{Census, SearchMode};
use crate::universe::Universe;

/// Render a value for reports: `num/den` when exact, decimal otherwise.
pub fn format_value(value: &Value) -> String {
    if value.is_approx() {
        format!("{}", value.to_f64())
    } else {
        format_rational(value.ratio())
    }
}

/// Serialize any report struct as pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports contain no non-serializable values");
    out.push('\n');
    out
}

/// Quote a CSV field only when it needs it.
fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AffineJson {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairJson {
    pub elements: [String; 2],
    pub values: [String; 2],
    pub relation: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadJson {
    pub elements: [String; 4],
    pub gaps: [String; 2],
}

/// A violation witness: a pair refuting the ordinal biconditional or a
/// quadruple of consecutive-class representatives with unequal gaps.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum WitnessJson {
    Pair(PairJson),
    Quad(QuadJson),
}

/// One scale check, rendered. Field order is part of the output format.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReportJson {
    pub measure: String,
    pub ordering: String,
    pub kind: String,
    pub verdict: String,
    pub spacing: Option<String>,
    pub affine: Option<AffineJson>,
    pub witnesses: Vec<WitnessJson>,
}

fn pair_witnesses(universe: &Universe, pairs: &[PairWitness]) -> Vec<WitnessJson> {
    pairs
        .iter()
        .map(|w| {
            WitnessJson::Pair(PairJson {
                elements: [
                    universe.element(w.left).text(),
                    universe.element(w.right).text(),
                ],
                values: [format_value(&w.left_value), format_value(&w.right_value)],
                relation: w.relation.as_str().to_string(),
            })
        })
        .collect()
}

fn quad_witnesses(universe: &Universe, quads: &[QuadWitness]) -> Vec<WitnessJson> {
    quads
        .iter()
        .map(|w| {
            WitnessJson::Quad(QuadJson {
                elements: [
                    universe.element(w.first_pair.0).text(),
                    universe.element(w.first_pair.1).text(),
                    universe.element(w.second_pair.0).text(),
                    universe.element(w.second_pair.1).text(),
                ],
                gaps: [format_value(&w.first_gap), format_value(&w.second_gap)],
            })
        })
        .collect()
}

impl CheckReportJson {
    pub fn from_interval(
        measure: &str,
        ordering: &str,
        report: &IntervalReport,
        universe: &Universe,
    ) -> CheckReportJson {
        debug_assert!(
            report.verdict != IntervalVerdict::Interval || report.ordinal.is_ordinal(),
            "an interval verdict presupposes an ordinal one"
        );
        let witnesses = match report.verdict {
            IntervalVerdict::NotOrdinal => pair_witnesses(universe, &report.ordinal.witnesses),
            _ => quad_witnesses(universe, &report.witnesses),
        };
        CheckReportJson {
            measure: measure.to_string(),
            ordering: ordering.to_string(),
            kind: report.ordinal.order_kind.as_str().to_string(),
            verdict: report.verdict.as_str().to_string(),
            spacing: report.spacing.as_ref().map(format_value),
            affine: report.affine.as_ref().map(|(a, b)| AffineJson {
                a: format_rational(a),
                b: format_rational(b),
            }),
            witnesses,
        }
    }

    pub fn from_ordinal(
        measure: &str,
        ordering: &str,
        report: &OrdinalReport,
        universe: &Universe,
    ) -> CheckReportJson {
        CheckReportJson {
            measure: measure.to_string(),
            ordering: ordering.to_string(),
            kind: report.order_kind.as_str().to_string(),
            verdict: report.verdict.as_str().to_string(),
            spacing: None,
            affine: None,
            witnesses: pair_witnesses(universe, &report.witnesses),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("measure: {}\n", self.measure));
        out.push_str(&format!("ordering: {}\n", self.ordering));
        out.push_str(&format!("kind: {}\n", self.kind));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(spacing) = &self.spacing {
            out.push_str(&format!("spacing: {spacing}\n"));
        }
        if let Some(affine) = &self.affine {
            out.push_str(&format!("affine: a={}, b={}\n", affine.a, affine.b));
        }
        if !self.witnesses.is_empty() {
            out.push_str("witnesses:\n");
            for witness in &self.witnesses {
                match witness {
                    WitnessJson::Pair(p) => out.push_str(&format!(
                        "  pair ({}, {}): values {}, {}; ordering says {}\n",
                        p.elements[0], p.elements[1], p.values[0], p.values[1], p.relation
                    )),
                    WitnessJson::Quad(q) => out.push_str(&format!(
                        "  quad ({}, {} | {}, {}): gaps {}, {}\n",
                        q.elements[0], q.elements[1], q.elements[2], q.elements[3], q.gaps[0], q.gaps[1]
                    )),
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("measure,ordering,kind,verdict,spacing,affine_a,affine_b\n");
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(&self.measure),
            csv_field(&self.ordering),
            self.kind,
            self.verdict,
            self.spacing.as_deref().map(csv_field).unwrap_or_default(),
            self.affine.as_ref().map(|af| csv_field(&af.a)).unwrap_or_default(),
            self.affine.as_ref().map(|af| csv_field(&af.b)).unwrap_or_default(),
        ));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusWitnessJson {
    pub verdict: String,
    /// Orderings in the ordering file format (one class per line).
    pub orderings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusMeasureJson {
    pub measure: String,
    pub order_space: String,
    pub examined: u64,
    /// Orderings the measure is ordinal but not interval on; the three
    /// counts are disjoint and sum to `examined`.
    pub ordinal_count: u64,
    pub interval_count: u64,
    pub not_ordinal_count: u64,
    pub witnesses: Vec<CensusWitnessJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusJson {
    pub order_space: String,
    pub mode: String,
    pub seed: Option<u64>,
    pub sample_count: Option<u64>,
    pub examined: u64,
    pub measures: Vec<CensusMeasureJson>,
}

impl CensusJson {
    pub fn from_census(census: &Census) -> CensusJson {
        let (seed, sample_count) = match census.mode {
            SearchMode::Exhaustive => (None, None),
            SearchMode::Sampled { seed, count } => (Some(seed), Some(count)),
        };
        let measures = census
            .per_measure
            .iter()
            .map(|mc| CensusMeasureJson {
                measure: mc.measure.clone(),
                order_space: census.order_space.as_str().to_string(),
                examined: mc.examined,
                ordinal_count: mc.ordinal_not_interval,
                interval_count: mc.interval,
                not_ordinal_count: mc.not_ordinal,
                witnesses: mc
                    .witnesses
                    .iter()
                    .map(|w| CensusWitnessJson {
                        verdict: w.verdict.as_str().to_string(),
                        orderings: w.orderings.clone(),
                    })
                    .collect(),
            })
            .collect();
        CensusJson {
            order_space: census.order_space.as_str().to_string(),
            mode: census.mode.as_str().to_string(),
            seed,
            sample_count,
            examined: census.examined,
            measures,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("order space: {}\n", self.order_space));
        out.push_str(&format!("mode: {}\n", self.mode));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        out.push_str(&format!("examined: {}\n", self.examined));
        for mc in &self.measures {
            out.push_str(&format!(
                "{}: interval {}, ordinal-not-interval {}, not-ordinal {}\n",
                mc.measure, mc.interval_count, mc.ordinal_count, mc.not_ordinal_count
            ));
            for w in &mc.witnesses {
                for ordering in &w.orderings {
                    out.push_str(&format!("  {} example: {}\n", w.verdict, inline_ordering(ordering)));
                }
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "measure,order_space,examined,ordinal_count,interval_count,not_ordinal_count\n",
        );
        for mc in &self.measures {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&mc.measure),
                mc.order_space,
                mc.examined,
                mc.ordinal_count,
                mc.interval_count,
                mc.not_ordinal_count
            ));
        }
        out
    }
}

/// Collapse an ordering-file rendering onto one line: classes joined by
/// " < ", multi-element classes wrapped in braces.
pub fn inline_ordering(rendered: &str) -> String {
    rendered
        .lines()
        .map(|class| {
            if class.contains(',') {
                format!("{{{class}}}")
            } else {
                class.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" < ")
}

#[derive(Debug, Clone, Serialize)]
pub struct FailedAxiomJson {
    pub axiom: String,
    /// Class-index pairs, in the order the axiom statement names them.
    pub witness: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiffStructJson {
    pub ordering: String,
    pub classes: usize,
    pub verdict: bool,
    pub failed_axiom: Option<FailedAxiomJson>,
}

impl DiffStructJson {
    pub fn from_report(
        ordering: &str,
        classes: usize,
        report: &DiffStructureReport,
    ) -> DiffStructJson {
        DiffStructJson {
            ordering: ordering.to_string(),
            classes,
            verdict: report.verdict,
            failed_axiom: report.failed_axiom.as_ref().map(|f| FailedAxiomJson {
                axiom: f.axiom.to_string(),
                witness: f.witness.iter().map(|&(a, b)| [a, b]).collect(),
            }),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ordering: {}\n", self.ordering));
        out.push_str(&format!("classes: {}\n", self.classes));
        out.push_str(&format!(
            "difference structure: {}\n",
            if self.verdict { "satisfied" } else { "violated" }
        ));
        if let Some(failed) = &self.failed_axiom {
            let pairs = failed
                .witness
                .iter()
                .map(|p| format!("({},{})", p[0], p[1]))
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&format!("failed axiom: {} at {}\n", failed.axiom, pairs));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("ordering,classes,verdict,failed_axiom\n");
        out.push_str(&format!(
            "{},{},{},{}\n",
            csv_field(&self.ordering),
            self.classes,
            self.verdict,
            self.failed_axiom
                .as_ref()
                .map(|f| f.axiom.clone())
                .unwrap_or_default()
        ));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UniverseJson {
    pub mode: String,
    pub n: usize,
    pub g_max: u8,
    pub recall_base: usize,
    pub size: usize,
    pub elements: Vec<String>,
}

impl UniverseJson {
    pub fn from_universe(universe: &Universe) -> UniverseJson {
        let spec = universe.spec();
        UniverseJson {
            mode: spec.mode.as_str().to_string(),
            n: spec.n,
            g_max: spec.g_max,
            recall_base: spec.recall_base,
            size: universe.len(),
            elements: universe.elements().iter().map(|e| e.text()).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for element in &self.elements {
            out.push_str(element);
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,element\n");
        for (idx, element) in self.elements.iter().enumerate() {
            out.push_str(&format!("{idx},{element}\n"));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureRowJson {
    pub element: String,
    pub value: String,
    pub value_float: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureTableJson {
    pub measure: String,
    pub mode: String,
    pub n: usize,
    pub values: Vec<MeasureRowJson>,
}

impl MeasureTableJson {
    pub fn from_values(values: &MeasureValues) -> MeasureTableJson {
        let universe = values.universe();
        MeasureTableJson {
            measure: values.label().to_string(),
            mode: universe.spec().mode.as_str().to_string(),
            n: universe.spec().n,
            values: universe
                .elements()
                .iter()
                .zip(values.values())
                .map(|(element, value)| MeasureRowJson {
                    element: element.text(),
                    value: format_value(value),
                    value_float: value.to_f64(),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.values {
            out.push_str(&format!("{}: {}\n", row.element, row.value));
        }
        out
    }
}
