use crate::scalar::{scale_of, Scalar};

use super::grid::{divide, gather, Entry, Grid};
use super::qd::QdTable;
use super::{AccelError, ExtrapolationTable, Method, SequencePair};

/// The `M_n^(j) = psi_n^(j)(a)` and `N_n^(j) = psi_n^(j)(I)` quantities,
/// stored for `0 <= j + n <= L`.
#[derive(Debug, Clone, PartialEq)]
pub struct FsQdState<S> {
    pub m: Grid<S>,
    pub n: Grid<S>,
}

/// Everything an FS/qd run computes.
#[derive(Debug, Clone, PartialEq)]
pub struct FsQdRun<S> {
    pub qd: QdTable<S>,
    pub state: FsQdState<S>,
    pub table: ExtrapolationTable<S>,
}

/// FS/qd-algorithm.
///
/// The qd-table of `u` supplies the FS divisors (`D_n^(j) = e_n^(j)`), then
///
/// ```text
/// M_n^(j) = (M_{n-1}^(j+1) - M_{n-1}^(j)) / e_n^(j)      M_0^(j) = A_j / u_j
/// N_n^(j) = (N_{n-1}^(j+1) - N_{n-1}^(j)) / e_n^(j)      N_0^(j) = 1 / u_j
/// A_n^(j) = M_n^(j) / N_n^(j)
/// ```
///
/// The last quotient is evaluated as the ratio of the two differences, where
/// `e_n^(j)` cancels. This gives the same value with the same operation
/// count, and stays defined when `e_n^(j)` vanishes because the input is
/// exactly reproduced at order `n` (then only `M_n^(j)`, `N_n^(j)` and
/// higher columns break down).
///
/// With `diagonal_only`, the final division is done for `j = 0` only and the
/// other entries beyond column 0 are left [`Entry::NotComputed`].
pub fn run_fs_qd<S: Scalar>(seq: &SequencePair<S>, diagonal_only: bool) -> Result<FsQdRun<S>, AccelError> {
    seq.require_nonzero_u()?;
    let l = seq.levels();
    let qd = QdTable::compute(seq.u(), l);

    let mut m = Grid::new(0);
    let mut nn = Grid::new(0);
    let mut table = Grid::new(0);

    let (m0, n0): (Vec<_>, Vec<_>) = seq
        .a()
        .iter()
        .enumerate()
        .map(|(j, a)| match seq.u().get(j) {
            Some(u) => (divide(a, u, u.magnitude()), divide(&S::one(), u, u.magnitude())),
            None => (Entry::NotComputed, Entry::NotComputed),
        })
        .unzip();
    m.push_column(m0);
    nn.push_column(n0);
    table.push_column(seq.a().iter().cloned().map(Entry::Valid).collect());

    for n in 1..=l {
        let len = l - n + 1;
        let mut m_col = Vec::with_capacity(len);
        let mut n_col = Vec::with_capacity(len);
        let mut t_col = Vec::with_capacity(len);
        for j in 0..len {
            match gather([m.get(j + 1, n - 1), m.get(j, n - 1), nn.get(j + 1, n - 1), nn.get(j, n - 1)]) {
                Ok([m_next, m_cur, n_next, n_cur]) => {
                    let dm = m_next.clone() - m_cur.clone();
                    let dn = n_next.clone() - n_cur.clone();
                    if diagonal_only && j > 0 {
                        t_col.push(Entry::NotComputed);
                    } else {
                        t_col.push(divide(&dm, &dn, scale_of(&[n_next, n_cur])));
                    }
                    match gather([qd.e(j, n)]) {
                        Ok([e]) => {
                            let scale = qd.e_scale(j, n);
                            m_col.push(divide(&dm, e, scale));
                            n_col.push(divide(&dn, e, scale));
                        }
                        Err(bad) => {
                            m_col.push(bad.clone());
                            n_col.push(bad);
                        }
                    }
                }
                Err(bad) => {
                    m_col.push(bad.clone());
                    n_col.push(bad.clone());
                    t_col.push(bad);
                }
            }
        }
        m.push_column(m_col);
        nn.push_column(n_col);
        table.push_column(t_col);
    }

    Ok(FsQdRun { qd, state: FsQdState { m, n: nn }, table: ExtrapolationTable::new(Method::FsQd, table) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accel::EntryStatus;
    use crate::scalar::Rational;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rs(items: &[&str]) -> Vec<Rational> {
        items.iter().map(|s| r(s)).collect()
    }

    /// Partial sums of (1/2)^k + (1/3)^k and their forward differences.
    fn two_geometric() -> SequencePair<Rational> {
        SequencePair::new(rs(&["2", "17/6", "115/36"]), rs(&["5/6", "13/36", "35/216", "97/1296", "275/7776"]))
            .unwrap()
    }

    #[test]
    fn two_geometric_values() {
        let run = run_fs_qd(&two_geometric(), false).unwrap();
        assert_eq!(run.table.value(0, 1), Some(&r("59/17")));
        assert_eq!(run.table.value(0, 2), Some(&r("7/2")));
        // H_3^(0) vanishes for a rank-two Hankel sequence.
        assert_eq!(run.qd.e(0, 2).unwrap().value(), Some(&Rational::zero()));
        assert_eq!(run.state.m.get(0, 2).unwrap().status(), EntryStatus::Breakdown);
    }

    #[test]
    fn column_zero_is_input() {
        let seq = two_geometric();
        let run = run_fs_qd(&seq, false).unwrap();
        for (j, a) in seq.a().iter().enumerate() {
            assert_eq!(run.table.value(j, 0), Some(a));
            assert_eq!(run.state.m.value(j, 0), Some(&a.checked_div(&seq.u()[j]).unwrap()));
            assert_eq!(run.state.n.value(j, 0), Some(&Rational::one().checked_div(&seq.u()[j]).unwrap()));
        }
    }

    #[test]
    fn geometric_u_is_exact_then_breaks_down() {
        let seq = SequencePair::new(rs(&["1", "3/2", "7/4"]), rs(&["1/2", "1/4", "1/8", "1/16", "1/32"])).unwrap();
        let run = run_fs_qd(&seq, false).unwrap();
        assert_eq!(run.qd.e(0, 1).unwrap().value(), Some(&Rational::zero()));
        assert_eq!(run.table.value(0, 1), Some(&r("2")));
        assert_eq!(run.table.value(1, 1), Some(&r("2")));
        assert_eq!(run.state.m.get(0, 1).unwrap().status(), EntryStatus::Breakdown);
        assert_eq!(run.table.get(0, 2).unwrap().status(), EntryStatus::Breakdown);
    }

    #[test]
    fn diagonal_only_leaves_off_diagonal_uncomputed() {
        let full = run_fs_qd(&two_geometric(), false).unwrap();
        let diag = run_fs_qd(&two_geometric(), true).unwrap();
        assert_eq!(diag.table.value(0, 1), full.table.value(0, 1));
        assert_eq!(diag.table.value(0, 2), full.table.value(0, 2));
        assert_eq!(diag.table.get(1, 1).unwrap().status(), EntryStatus::NotComputed);
        assert_eq!(diag.table.value(1, 0), Some(&r("17/6")));
    }

    #[test]
    fn zero_u_is_rejected() {
        let seq = SequencePair::new(rs(&["1", "2"]), rs(&["1", "0", "1"])).unwrap();
        assert_eq!(run_fs_qd(&seq, false).unwrap_err(), AccelError::ZeroInput { index: 1 });
    }

    #[test]
    fn missing_last_u_keeps_a_table_complete() {
        let mut seq = two_geometric();
        seq = SequencePair::new(seq.a().to_vec(), seq.u()[..4].to_vec()).unwrap();
        let run = run_fs_qd(&seq, false).unwrap();
        assert_eq!(run.qd.e(0, 2).unwrap().status(), EntryStatus::NotComputed);
        assert_eq!(run.table.value(0, 2), Some(&r("7/2")));
    }
}
