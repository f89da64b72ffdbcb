//! Exact values and the few numeric helpers the measures need.
//!
//! Every measure except DCG is computed in exact rational arithmetic, so
//! scale verdicts never hinge on floating-point ties. DCG involves
//! logarithms; its values are stored as rational approximants whose
//! absolute error is below 2^-140 (see [`log2_fixed`]), far beyond double
//! precision, and are always compared with an explicit epsilon.

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rational = num::BigRational;

/// Shorthand for small rational constants.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A measure value: exact, or a high-precision approximant (DCG only).
///
/// Exact values compare exactly regardless of epsilon; if either side is
/// an approximant the comparison collapses differences of at most `eps`
/// into equality.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(Rational),
}

impl Value {
    pub fn ratio(&self) -> &Rational {
        match self {
            Value::Exact(r) | Value::Approx(r) => r,
        }
    }

    pub fn is_approx(&self) -> bool {
        matches!(self, Value::Approx(_))
    }

    /// Compare two values, treating |a-b| <= eps as equal when either
    /// side is an approximant.
    pub fn cmp_eps(&self, other: &Value, eps: &Rational) -> Ordering {
        if self.is_approx() || other.is_approx() {
            let diff = self.ratio() - other.ratio();
            if diff.abs() <= *eps {
                Ordering::Equal
            } else if diff.is_negative() {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else {
            self.ratio().cmp(other.ratio())
        }
    }

    pub fn eq_eps(&self, other: &Value, eps: &Rational) -> bool {
        self.cmp_eps(other, eps) == Ordering::Equal
    }

    /// Difference, marked approximate if either operand is.
    pub fn sub(&self, other: &Value) -> Value {
        let d = self.ratio() - other.ratio();
        if self.is_approx() || other.is_approx() {
            Value::Approx(d)
        } else {
            Value::Exact(d)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.ratio().to_f64().unwrap_or(f64::NAN)
    }
}

/// Render a rational as `num/den`, dropping the denominator when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse a rational literal: `num/den`, an integer, or a plain decimal
/// such as `0.25`. Exactness is preserved through the parse.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let original = s;
    let err = |reason: &str| Error::ParseRational {
        literal: original.to_string(),
        reason: reason.to_string(),
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let denom: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if denom.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let int_part = if int_part.is_empty() || int_part == "-" {
            format!("{int_part}0")
        } else {
            int_part.to_string()
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad decimal"));
        }
        let negative = int_part.starts_with('-');
        let whole: BigInt = int_part.parse().map_err(|_| err("bad decimal"))?;
        let frac: BigInt = frac_part.parse().map_err(|_| err("bad decimal"))?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let magnitude = whole.abs() * &scale + frac;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(signed, scale));
    }
    let whole: BigInt = s.parse().map_err(|_| err("not a number"))?;
    Ok(Rational::from(whole))
}

/// Base-2 logarithm of a positive integer as an exact rational with
/// absolute error at most 2^-frac_bits.
///
/// Classic shift-and-square in integer fixed point: the mantissa is kept
/// with 64 guard bits beyond the requested precision, so truncation noise
/// stays far below the returned quantization step.
pub fn log2_fixed(n: u64, frac_bits: u32) -> Rational {
    assert!(n >= 1, "log2 needs a positive argument");
    let int_part = 63 - n.leading_zeros() as u64;
    let work_bits = frac_bits + 64;
    // y = n / 2^int_part in [1, 2), scaled by 2^work_bits.
    let mut y: BigInt = BigInt::from(n) << (work_bits as u64 - int_part);
    let ceiling: BigInt = BigInt::from(1) << (work_bits + 1);
    let mut frac = BigInt::zero();
    for _ in 0..frac_bits {
        y = (&y * &y) >> work_bits;
        frac <<= 1;
        if y >= ceiling {
            y >>= 1;
            frac += 1;
        }
    }
    let numer = (BigInt::from(int_part) << frac_bits) + frac;
    Rational::new(numer, BigInt::from(1) << frac_bits)
}

/// Fraction bits used for DCG's logarithm approximants.
pub const LOG_PRECISION_BITS: u32 = 160;

/// Default comparison epsilon for approximate values: 10^-9.
pub fn default_eps() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(1_000_000_000u64))
}
