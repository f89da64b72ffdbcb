//! Scale-type analysis for IR evaluation measures.
//!
//! The crate decides, for a measure evaluated over a finite universe of
//! assessed document lists and an explicit ordering on that universe,
//! whether the measure is an ordinal or an interval scale in the
//! representational sense, and it can search order spaces for the
//! orderings under which a measure attains each scale type.

pub mod cli;
pub mod error;
pub mod measures;
pub mod numeric;
pub mod orderings;
pub mod report;
pub mod scalecheck;
pub mod search;
pub mod universe;

pub use error::{Error, Result};
