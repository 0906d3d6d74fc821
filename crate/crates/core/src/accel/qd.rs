use crate::scalar::{scale_of, Scalar};

use super::grid::{divide, gather, Entry, Grid};
use super::AccelError;

/// Quotient-difference table of a sequence `u_0..u_{2L}`.
///
/// Column `n` of `q` (n >= 1) holds `j <= 2(L-n)+1`; column `n` of `e`
/// (n >= 0) holds `j <= 2(L-n)`. These are exactly the indices whose Hankel
/// determinant definitions stay within `u_{2L}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QdTable<S> {
    levels: usize,
    q: Grid<S>,
    e: Grid<S>,
    e_scale: Vec<Vec<f64>>,
}

/// Builds the qd-table of `u` (length `2L + 1`, all nonzero) column by column.
pub fn build_qd_table<S: Scalar>(u: &[S], levels: usize) -> Result<QdTable<S>, AccelError> {
    if u.len() != 2 * levels + 1 {
        return Err(AccelError::Length { what: "u", expected: 2 * levels + 1, found: u.len() });
    }
    if let Some(index) = u.iter().position(Scalar::is_zero) {
        return Err(AccelError::ZeroInput { index });
    }
    Ok(QdTable::compute(u, levels))
}

impl<S: Scalar> QdTable<S> {
    /// `u` may be short; entries reaching past its end are not computed.
    /// Callers guarantee the supplied `u_i` are nonzero.
    pub(crate) fn compute(u: &[S], levels: usize) -> Self {
        let l = levels;
        let mut q = Grid::new(1);
        let mut e = Grid::new(0);
        let mut e_scale = vec![vec![0.0; 2 * l + 1]];

        e.push_column(vec![Entry::Valid(S::zero()); 2 * l + 1]);
        if l == 0 {
            return QdTable { levels, q, e, e_scale };
        }

        let first: Vec<Entry<S>> = (0..2 * l)
            .map(|j| match (u.get(j + 1), u.get(j)) {
                (Some(next), Some(cur)) => divide(next, cur, cur.magnitude()),
                _ => Entry::NotComputed,
            })
            .collect();
        q.push_column(first);

        for n in 1..=l {
            let mut e_col = Vec::with_capacity(2 * (l - n) + 1);
            let mut scales = Vec::with_capacity(2 * (l - n) + 1);
            for j in 0..=2 * (l - n) {
                match gather([q.get(j + 1, n), q.get(j, n), e.get(j + 1, n - 1)]) {
                    Ok([q_next, q_cur, e_prev]) => {
                        scales.push(scale_of(&[q_next, q_cur, e_prev]));
                        e_col.push(Entry::Valid(q_next.clone() - q_cur.clone() + e_prev.clone()));
                    }
                    Err(bad) => {
                        scales.push(0.0);
                        e_col.push(bad);
                    }
                }
            }
            e.push_column(e_col);
            e_scale.push(scales);

            if n == l {
                break;
            }
            let mut q_col = Vec::with_capacity(2 * (l - n));
            for j in 0..2 * (l - n) {
                let entry = match gather([e.get(j + 1, n), e.get(j, n), q.get(j + 1, n)]) {
                    Ok([e_next, e_cur, q_next]) => match divide(e_next, e_cur, e_scale[n][j]) {
                        Entry::Valid(ratio) => Entry::Valid(ratio * q_next.clone()),
                        bad => bad,
                    },
                    Err(bad) => bad,
                };
                q_col.push(entry);
            }
            q.push_column(q_col);
        }
        QdTable { levels, q, e, e_scale }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `q_n^(j)`, or `None` outside the stored range.
    pub fn q(&self, j: usize, n: usize) -> Option<&Entry<S>> {
        self.q.get(j, n)
    }

    /// `e_n^(j)`, or `None` outside the stored range.
    pub fn e(&self, j: usize, n: usize) -> Option<&Entry<S>> {
        self.e.get(j, n)
    }

    pub fn q_grid(&self) -> &Grid<S> {
        &self.q
    }

    pub fn e_grid(&self) -> &Grid<S> {
        &self.e
    }

    pub(crate) fn e_scale(&self, j: usize, n: usize) -> f64 {
        self.e_scale.get(n).and_then(|c| c.get(j)).copied().unwrap_or(0.0)
    }
}
