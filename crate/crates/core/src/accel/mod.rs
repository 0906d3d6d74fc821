//! Recursive engines for the higher-order G-transformation.
//!
//! Every engine consumes a [`SequencePair`] (or, for the ε-algorithm, a plain
//! sequence) and produces an [`ExtrapolationTable`] whose entry `(j, n)`
//! approximates `A_n^(j)`, the value defined by the linear system
//!
//! ```text
//! A_l = A_n^(j) + sum_{k=1..n} alpha_k u_{k+l-1},   l = j, ..., j+n
//! ```
//!
//! All tables are filled column by column and kept in full.

mod epsilon;
mod fsqd;
mod grid;
mod qd;
mod rs;
mod shanks;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

pub use epsilon::run_epsilon;
pub use fsqd::{run_fs_qd, FsQdRun, FsQdState};
pub use grid::{Entry, EntryStatus, Grid};
pub use qd::{build_qd_table, QdTable};
pub use rs::{run_rs, RsTable};
pub use shanks::shanks_prepare;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AccelError {
    #[error("{what}: expected length {expected}, found {found}")]
    Length { what: &'static str, expected: usize, found: usize },
    #[error("{0} is empty")]
    Empty(&'static str),
    #[error("u_{index} is zero; the engine divides by it during initialization")]
    ZeroInput { index: usize },
    #[error("difference A_{} - A_{index} is zero", index + 1)]
    ZeroDifference { index: usize },
}

/// Engine that produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    FsQd,
    Rs,
    Eps,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::FsQd => "fsqd",
            Method::Rs => "rs",
            Method::Eps => "eps",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inputs `A_0..A_L` and `u_0..u_{2L}`.
///
/// `u` may be shorter than `2L + 1`; entries whose recursion needs a missing
/// `u_i` come out as [`Entry::NotComputed`].
#[derive(Debug, Clone, PartialEq)]
pub struct SequencePair<S> {
    a: Vec<S>,
    u: Vec<S>,
}

impl<S: Scalar> SequencePair<S> {
    /// Requires `a` non-empty and `u.len() <= 2 * (a.len() - 1) + 1`.
    pub fn new(a: Vec<S>, u: Vec<S>) -> Result<Self, AccelError> {
        if a.is_empty() {
            return Err(AccelError::Empty("A"));
        }
        let full = 2 * (a.len() - 1) + 1;
        if u.len() > full {
            return Err(AccelError::Length { what: "u", expected: full, found: u.len() });
        }
        Ok(SequencePair { a, u })
    }

    /// Like [`SequencePair::new`] but insists on the full `2L + 1` values of `u`.
    pub fn complete(a: Vec<S>, u: Vec<S>) -> Result<Self, AccelError> {
        let seq = SequencePair::new(a, u)?;
        if !seq.is_complete() {
            return Err(AccelError::Length { what: "u", expected: 2 * seq.levels() + 1, found: seq.u.len() });
        }
        Ok(seq)
    }

    /// `L`, the largest `j + n` the A-table covers.
    pub fn levels(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[S] {
        &self.a
    }

    pub fn u(&self) -> &[S] {
        &self.u
    }

    pub fn is_complete(&self) -> bool {
        self.u.len() == 2 * self.levels() + 1
    }

    /// Checks the `u_i` used as initial divisors.
    pub(crate) fn require_nonzero_u(&self) -> Result<(), AccelError> {
        match self.u.iter().position(Scalar::is_zero) {
            Some(index) => Err(AccelError::ZeroInput { index }),
            None => Ok(()),
        }
    }

    /// Returns the same problem with every `u_i` multiplied by `factor`.
    pub fn scale_u(&self, factor: &S) -> Self {
        SequencePair { a: self.a.clone(), u: self.u.iter().map(|x| x.clone() * factor.clone()).collect() }
    }
}

/// Triangular table of `A_n^(j)` approximations.
///
/// For the FS/qd and rs engines column `n` holds `j = 0..=L-n`; for the
/// ε-algorithm column `n` holds `ε_{2n}^(j)` for `j = 0..=2L'-2n` where
/// `2L' + 1` is the input length. Column 0 is always the input sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolationTable<S> {
    method: Method,
    grid: Grid<S>,
}

impl<S: Scalar> ExtrapolationTable<S> {
    pub(crate) fn new(method: Method, grid: Grid<S>) -> Self {
        ExtrapolationTable { method, grid }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn get(&self, j: usize, n: usize) -> Option<&Entry<S>> {
        self.grid.get(j, n)
    }

    pub fn value(&self, j: usize, n: usize) -> Option<&S> {
        self.get(j, n).and_then(Entry::value)
    }

    /// Number of columns minus one.
    pub fn max_order(&self) -> usize {
        self.grid.columns() - 1
    }

    pub fn column(&self, n: usize) -> &[Entry<S>] {
        self.grid.column(n)
    }

    pub fn grid(&self) -> &Grid<S> {
        &self.grid
    }

    /// Iterates `(j, n, entry)` column by column.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Entry<S>)> {
        self.grid.iter()
    }

    /// The diagonal entries `(0, n)`.
    pub fn diagonal(&self) -> Vec<&Entry<S>> {
        (0..self.grid.columns()).filter_map(|n| self.get(0, n)).collect()
    }

    /// The highest valid diagonal entry `(0, n)`, returned with its order.
    pub fn best(&self) -> Option<(usize, &S)> {
        (0..self.grid.columns()).rev().find_map(|n| self.value(0, n).map(|v| (n, v)))
    }

    pub fn count_status(&self, status: EntryStatus) -> usize {
        self.iter().filter(|(_, _, e)| e.status() == status).count()
    }
}
