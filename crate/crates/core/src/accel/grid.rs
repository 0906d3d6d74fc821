use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Valid,
    Breakdown,
    NotComputed,
}

impl EntryStatus {
    pub fn name(self) -> &'static str {
        match self {
            EntryStatus::Valid => "valid",
            EntryStatus::Breakdown => "breakdown",
            EntryStatus::NotComputed => "not_computed",
        }
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Entry<S> {
    Valid(S),
    /// A divisor on this entry's recursion path vanished.
    Breakdown,
    /// A required input was never supplied.
    NotComputed,
}

impl<S> Entry<S> {
    pub fn status(&self) -> EntryStatus {
        match self {
            Entry::Valid(_) => EntryStatus::Valid,
            Entry::Breakdown => EntryStatus::Breakdown,
            Entry::NotComputed => EntryStatus::NotComputed,
        }
    }

    pub fn value(&self) -> Option<&S> {
        match self {
            Entry::Valid(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, Entry::Valid(_))
    }
}

/// Collects the values of a recursion's inputs.
///
/// An absent index counts as not computed; any breakdown input wins over
/// not-computed ones.
pub(crate) fn gather<S, const K: usize>(inputs: [Option<&Entry<S>>; K]) -> Result<[&S; K], Entry<S>> {
    let mut status = EntryStatus::Valid;
    for input in &inputs {
        match input.map(Entry::status) {
            Some(EntryStatus::Breakdown) => return Err(Entry::Breakdown),
            Some(EntryStatus::Valid) => {}
            None | Some(EntryStatus::NotComputed) => status = EntryStatus::NotComputed,
        }
    }
    if status == EntryStatus::NotComputed {
        return Err(Entry::NotComputed);
    }
    Ok(inputs.map(|e| e.and_then(Entry::value).expect("checked valid")))
}

/// Divides, flagging a breakdown when the divisor is negligible at `scale`
/// or the quotient is not finite.
pub(crate) fn divide<S: Scalar>(numer: &S, denom: &S, scale: f64) -> Entry<S> {
    if denom.negligible(scale) {
        return Entry::Breakdown;
    }
    match numer.checked_div(denom) {
        Ok(v) if v.is_finite() => Entry::Valid(v),
        _ => Entry::Breakdown,
    }
}

/// Ragged column-major storage: column `n` starts at `first` and holds
/// indices `j = 0..len(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<S> {
    first: usize,
    cols: Vec<Vec<Entry<S>>>,
}

impl<S> Grid<S> {
    pub(crate) fn new(first: usize) -> Self {
        Grid { first, cols: Vec::new() }
    }

    pub(crate) fn push_column(&mut self, column: Vec<Entry<S>>) {
        self.cols.push(column);
    }

    /// Index of the first stored column.
    pub fn first_column(&self) -> usize {
        self.first
    }

    /// Number of stored columns.
    pub fn columns(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, j: usize, n: usize) -> Option<&Entry<S>> {
        let idx = n.checked_sub(self.first)?;
        self.cols.get(idx)?.get(j)
    }

    pub fn value(&self, j: usize, n: usize) -> Option<&S> {
        self.get(j, n).and_then(Entry::value)
    }

    /// Entries of column `n`; empty when the column is not stored.
    pub fn column(&self, n: usize) -> &[Entry<S>] {
        n.checked_sub(self.first).and_then(|i| self.cols.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Entry<S>)> {
        let first = self.first;
        self.cols
            .iter()
            .enumerate()
            .flat_map(move |(c, col)| col.iter().enumerate().map(move |(j, e)| (j, c + first, e)))
    }
}
