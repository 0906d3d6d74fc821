use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use super::{parse_float, ParseScalarError, Scalar, ScalarError};

/// Tallies of arithmetic operations. Subtractions count as additions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct OpCounts {
    pub additions: u64,
    pub multiplications: u64,
    pub divisions: u64,
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.additions + self.multiplications + self.divisions
    }
}

impl Add for OpCounts {
    type Output = OpCounts;
    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            additions: self.additions + rhs.additions,
            multiplications: self.multiplications + rhs.multiplications,
            divisions: self.divisions + rhs.divisions,
        }
    }
}

thread_local! {
    static ACTIVE: Cell<Option<OpCounts>> = const { Cell::new(None) };
}

fn tally(f: impl FnOnce(&mut OpCounts)) {
    ACTIVE.with(|cell| {
        if let Some(mut counts) = cell.get() {
            f(&mut counts);
            cell.set(Some(counts));
        }
    });
}

/// Scope owning an [`OpCounts`] accumulator for the current thread.
///
/// While a context is open every [`Counted`] operation executed on this
/// thread is recorded in it. Contexts nest: on close, the inner tallies are
/// folded into the enclosing context.
pub struct CountingContext {
    outer: Option<OpCounts>,
    closed: bool,
}

impl CountingContext {
    pub fn open() -> Self {
        let outer = ACTIVE.with(|cell| cell.replace(Some(OpCounts::default())));
        CountingContext { outer, closed: false }
    }

    pub fn counts(&self) -> OpCounts {
        ACTIVE.with(|cell| cell.get()).unwrap_or_default()
    }

    pub fn close(mut self) -> OpCounts {
        self.finish()
    }

    fn finish(&mut self) -> OpCounts {
        self.closed = true;
        let inner = ACTIVE.with(|cell| cell.replace(self.outer)).unwrap_or_default();
        if let Some(outer) = self.outer {
            ACTIVE.with(|cell| cell.set(Some(outer + inner)));
        }
        inner
    }
}

impl Drop for CountingContext {
    fn drop(&mut self) {
        if !self.closed {
            self.finish();
        }
    }
}

/// Runs `computation` inside a fresh counting context.
pub fn with_counting<T>(computation: impl FnOnce() -> T) -> (T, OpCounts) {
    let ctx = CountingContext::open();
    let result = computation();
    (result, ctx.close())
}

/// A computation that failed under counting, with the tallies accumulated
/// up to the failure.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{source} (after {} operations)", counts.total())]
pub struct CountedFailure<E: std::error::Error + 'static> {
    pub source: E,
    pub counts: OpCounts,
}

pub fn try_with_counting<T, E: std::error::Error + 'static>(
    computation: impl FnOnce() -> Result<T, E>,
) -> Result<(T, OpCounts), CountedFailure<E>> {
    let (result, counts) = with_counting(computation);
    match result {
        Ok(value) => Ok((value, counts)),
        Err(source) => Err(CountedFailure { source, counts }),
    }
}

/// Double-precision value whose arithmetic is tallied.
///
/// Negation, comparison and magnitude queries are free.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Counted(pub f64);

impl Counted {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Debug for Counted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl fmt::Display for Counted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<f64> for Counted {
    fn from(value: f64) -> Self {
        Counted(value)
    }
}

impl Add for Counted {
    type Output = Counted;
    fn add(self, rhs: Counted) -> Counted {
        tally(|c| c.additions += 1);
        Counted(self.0 + rhs.0)
    }
}

impl Sub for Counted {
    type Output = Counted;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Counted) -> Counted {
        tally(|c| c.additions += 1);
        Counted(self.0 - rhs.0)
    }
}

impl Mul for Counted {
    type Output = Counted;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Counted) -> Counted {
        tally(|c| c.multiplications += 1);
        Counted(self.0 * rhs.0)
    }
}

impl Neg for Counted {
    type Output = Counted;
    fn neg(self) -> Counted {
        Counted(-self.0)
    }
}

impl Scalar for Counted {
    const EXACT: bool = false;

    fn zero() -> Self {
        Counted(0.0)
    }

    fn one() -> Self {
        Counted(1.0)
    }

    fn from_i64(value: i64) -> Self {
        Counted(value as f64)
    }

    fn parse(text: &str) -> Result<Self, ParseScalarError> {
        parse_float(text).map(Counted)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.0 == 0.0 {
            return Err(ScalarError::DivisionByZero);
        }
        tally(|c| c.divisions += 1);
        Ok(Counted(self.0 / rhs.0))
    }

    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.0.abs()
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}
