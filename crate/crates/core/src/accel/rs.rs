use crate::scalar::{scale_of, Scalar};

use super::grid::{divide, gather, Entry, Grid};
use super::{AccelError, ExtrapolationTable, Method, SequencePair};

/// Auxiliary quantities of the rs-algorithm, `r_n^(j) = H_n^(j)/K_n^(j)` and
/// `s_n^(j) = K_{n+1}^(j)/H_n^(j)`.
///
/// `r` column `n >= 1` holds `j <= 2(L-n)+2`; `s` column `n >= 0` holds
/// `j <= 2(L-n)+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RsTable<S> {
    levels: usize,
    r: Grid<S>,
    s: Grid<S>,
}

impl<S> RsTable<S> {
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn r(&self, j: usize, n: usize) -> Option<&Entry<S>> {
        self.r.get(j, n)
    }

    pub fn s(&self, j: usize, n: usize) -> Option<&Entry<S>> {
        self.s.get(j, n)
    }

    pub fn r_grid(&self) -> &Grid<S> {
        &self.r
    }

    pub fn s_grid(&self) -> &Grid<S> {
        &self.s
    }
}

/// `factor * (numer/denom - 1)`, the shape of both rs updates. Returns the
/// product and the magnitude it would have without the cancellation in
/// `numer/denom - 1`, which is the breakdown scale when it later divides.
fn update<S: Scalar>(factor: &S, numer: &S, denom: &S, denom_scale: f64) -> (Entry<S>, f64) {
    match divide(numer, denom, denom_scale) {
        Entry::Valid(ratio) => {
            let scale = factor.magnitude() * ratio.magnitude().max(1.0);
            (Entry::Valid(factor.clone() * (ratio - S::one())), scale)
        }
        bad => (bad, 0.0),
    }
}

/// rs-algorithm of Pye and Atchison.
///
/// ```text
/// s_0^(j) = 1,  r_1^(j) = u_j
/// s_n^(j)   = s_{n-1}^(j+1) (r_n^(j+1)/r_n^(j) - 1)
/// r_{n+1}^(j) = r_n^(j+1) (s_n^(j+1)/s_n^(j) - 1)
/// A_n^(j) = (r_n^(j) A_{n-1}^(j+1) - r_n^(j+1) A_{n-1}^(j)) / (r_n^(j) - r_n^(j+1))
/// ```
pub fn run_rs<S: Scalar>(seq: &SequencePair<S>) -> Result<(RsTable<S>, ExtrapolationTable<S>), AccelError> {
    seq.require_nonzero_u()?;
    let l = seq.levels();
    let u = seq.u();

    let mut r = Grid::new(1);
    let mut s = Grid::new(0);
    let mut r_scale: Vec<Vec<f64>> = Vec::new();
    let mut s_scale: Vec<Vec<f64>> = Vec::new();

    s.push_column(vec![Entry::Valid(S::one()); 2 * l + 2]);
    s_scale.push(vec![1.0; 2 * l + 2]);
    if l > 0 {
        r.push_column((0..=2 * l).map(|j| u.get(j).cloned().map_or(Entry::NotComputed, Entry::Valid)).collect());
        r_scale.push((0..=2 * l).map(|j| u.get(j).map_or(0.0, Scalar::magnitude)).collect());
    }

    for n in 1..=l {
        let mut s_col = Vec::new();
        let mut s_sc = Vec::new();
        for j in 0..=2 * (l - n) + 1 {
            let (entry, scale) = match gather([s.get(j + 1, n - 1), r.get(j + 1, n), r.get(j, n)]) {
                Ok([s_next, r_next, r_cur]) => update(s_next, r_next, r_cur, r_scale[n - 1][j]),
                Err(bad) => (bad, 0.0),
            };
            s_col.push(entry);
            s_sc.push(scale);
        }
        s.push_column(s_col);
        s_scale.push(s_sc);

        if n == l {
            break;
        }
        let mut r_col = Vec::new();
        let mut r_sc = Vec::new();
        for j in 0..=2 * (l - n) {
            let (entry, scale) = match gather([r.get(j + 1, n), s.get(j + 1, n), s.get(j, n)]) {
                Ok([r_next, s_next, s_cur]) => update(r_next, s_next, s_cur, s_scale[n][j]),
                Err(bad) => (bad, 0.0),
            };
            r_col.push(entry);
            r_sc.push(scale);
        }
        r.push_column(r_col);
        r_scale.push(r_sc);
    }

    let mut table = Grid::new(0);
    table.push_column(seq.a().iter().cloned().map(Entry::Valid).collect());
    for n in 1..=l {
        let col = (0..=l - n)
            .map(|j| match gather([r.get(j, n), r.get(j + 1, n), table.get(j + 1, n - 1), table.get(j, n - 1)]) {
                Ok([r_cur, r_next, t_next, t_cur]) => {
                    let numer = r_cur.clone() * t_next.clone() - r_next.clone() * t_cur.clone();
                    let denom = r_cur.clone() - r_next.clone();
                    divide(&numer, &denom, scale_of(&[r_cur, r_next]))
                }
                Err(bad) => bad,
            })
            .collect();
        table.push_column(col);
    }

    Ok((RsTable { levels: l, r, s }, ExtrapolationTable::new(Method::Rs, table)))
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

    #[test]
    fn first_column_by_hand() {
        let seq = SequencePair::new(rs(&["2", "17/6"]), rs(&["5/6", "13/36", "35/216"])).unwrap();
        let (_, table) = run_rs(&seq).unwrap();
        assert_eq!(table.value(0, 1), Some(&r("59/17")));
    }

    #[test]
    fn initial_columns() {
        let u = rs(&["5/6", "13/36", "35/216", "97/1296", "275/7776"]);
        let seq = SequencePair::new(rs(&["2", "17/6", "115/36"]), u.clone()).unwrap();
        let (t, table) = run_rs(&seq).unwrap();
        for j in 0..=5 {
            assert_eq!(t.s(j, 0).unwrap().value(), Some(&Rational::one()));
        }
        for (j, uj) in u.iter().enumerate() {
            assert_eq!(t.r(j, 1).unwrap().value(), Some(uj));
        }
        assert_eq!(table.value(0, 2), Some(&r("7/2")));
        assert_eq!(table.value(2, 0), Some(&r("115/36")));
    }

    #[test]
    fn geometric_u_does_not_break_at_first_order() {
        let seq = SequencePair::new(rs(&["1", "3/2", "7/4"]), rs(&["1/2", "1/4", "1/8", "1/16", "1/32"])).unwrap();
        let (t, table) = run_rs(&seq).unwrap();
        assert_eq!(table.value(0, 1), Some(&r("2")));
        assert_eq!(t.r(0, 2).unwrap().value(), Some(&Rational::zero()));
        assert_eq!(table.get(0, 2).unwrap().status(), EntryStatus::Breakdown);
    }

    #[test]
    fn index_ranges() {
        let l = 3;
        let u: Vec<f64> = (0..7).map(|i| 1.0 / (i as f64 + 1.5)).collect();
        let seq = SequencePair::new(vec![0.0; l + 1], u).unwrap();
        let (t, _) = run_rs(&seq).unwrap();
        for n in 1..=l {
            assert_eq!(t.r_grid().column(n).len(), 2 * (l - n) + 3, "r column {n}");
        }
        for n in 0..=l {
            assert_eq!(t.s_grid().column(n).len(), 2 * (l - n) + 2, "s column {n}");
        }
    }
}
