//! Arithmetic contract shared by every engine.
//!
//! Three realizations are provided: plain `f64`, [`Counted`] (an `f64` that
//! tallies each arithmetic operation into the active [`CountingContext`]) and
//! the exact [`Rational`].

mod counting;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use counting::{try_with_counting, with_counting, Counted, CountedFailure, CountingContext, OpCounts};
pub use rational::Rational;

/// Arithmetic failure inside a scalar operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Text that could not be read as a scalar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{token}` as a number: {reason}")]
pub struct ParseScalarError {
    pub token: String,
    pub reason: &'static str,
}

impl ParseScalarError {
    pub(crate) fn new(token: &str, reason: &'static str) -> Self {
        ParseScalarError { token: token.to_string(), reason }
    }
}

/// A field element the engines can compute with.
///
/// Division is only reachable through [`Scalar::checked_div`], so a zero
/// divisor always surfaces as an error instead of an infinity or NaN.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and only a literal zero is a breakdown.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    fn parse(text: &str) -> Result<Self, ParseScalarError>;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError>;

    fn is_zero(&self) -> bool;

    /// Absolute value as a float. Free of charge under counting.
    fn magnitude(&self) -> f64;

    fn to_f64(&self) -> f64;

    fn is_finite(&self) -> bool {
        true
    }

    /// Breakdown test for a computed divisor.
    ///
    /// `scale` is the largest magnitude among the operands that produced
    /// `self`. Exact realizations ignore it; float realizations treat
    /// `|self| <= EPSILON * scale` as zero.
    fn negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.is_zero() || !self.is_finite() || self.magnitude() <= f64::EPSILON * scale
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        parse_float(text)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if *rhs == 0.0 {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

/// Accepts plain float syntax as well as `p/q`.
pub(crate) fn parse_float(text: &str) -> Result<f64, ParseScalarError> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let num: f64 = p.trim().parse().map_err(|_| ParseScalarError::new(p.trim(), "bad numerator"))?;
        let den: f64 = q.trim().parse().map_err(|_| ParseScalarError::new(q.trim(), "bad denominator"))?;
        if den == 0.0 {
            return Err(ParseScalarError::new(t, "zero denominator"));
        }
        return Ok(num / den);
    }
    let v: f64 = t.parse().map_err(|_| ParseScalarError::new(t, "not a number"))?;
    if !v.is_finite() {
        return Err(ParseScalarError::new(t, "not finite"));
    }
    Ok(v)
}

/// Largest magnitude among `values`; the breakdown scale of their combination.
pub(crate) fn scale_of<S: Scalar>(values: &[&S]) -> f64 {
    values.iter().map(|v| v.magnitude()).fold(0.0, f64::max)
}
