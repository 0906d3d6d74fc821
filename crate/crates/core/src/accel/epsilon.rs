use crate::scalar::{scale_of, Scalar};

use super::grid::{divide, gather, Entry, Grid};
use super::{AccelError, ExtrapolationTable, Method};

/// Wynn's ε-algorithm on `A_0..A_K`.
///
/// ```text
/// ε_{-1}^(j) = 0,  ε_0^(j) = A_j
/// ε_{k+1}^(j) = ε_{k-1}^(j+1) + 1 / (ε_k^(j+1) - ε_k^(j))
/// ```
///
/// Only the even columns are returned: table entry `(j, n)` is `ε_{2n}^(j)`
/// for `j + 2n <= K`, which is the Shanks value `A_n^(j)` for `u = ΔA`.
pub fn run_epsilon<S: Scalar>(a: &[S]) -> Result<ExtrapolationTable<S>, AccelError> {
    if a.is_empty() {
        return Err(AccelError::Empty("A"));
    }
    let k_max = a.len() - 1;
    // cols[k + 1] holds ε_k.
    let mut cols: Vec<Vec<Entry<S>>> = vec![vec![Entry::Valid(S::zero()); k_max + 1]];
    cols.push(a.iter().cloned().map(Entry::Valid).collect());

    for k in 0..k_max {
        let col = (0..k_max - k)
            .map(|j| match gather([cols[k].get(j + 1), cols[k + 1].get(j + 1), cols[k + 1].get(j)]) {
                Ok([prev, next, cur]) => {
                    let diff = next.clone() - cur.clone();
                    match divide(&S::one(), &diff, scale_of(&[next, cur])) {
                        Entry::Valid(inv) => Entry::Valid(prev.clone() + inv),
                        bad => bad,
                    }
                }
                Err(bad) => bad,
            })
            .collect();
        cols.push(col);
    }

    let mut grid = Grid::new(0);
    for even in cols.into_iter().skip(1).step_by(2) {
        grid.push_column(even);
    }
    Ok(ExtrapolationTable::new(Method::Eps, grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accel::EntryStatus;
    use crate::scalar::Rational;

    fn rs(items: &[&str]) -> Vec<Rational> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn hand_evaluation() {
        let t = run_epsilon(&rs(&["1", "3/2", "7/4"])).unwrap();
        assert_eq!(t.value(0, 1), Some(&Rational::integer(2)));
        assert_eq!(t.max_order(), 1);
    }

    #[test]
    fn shape_and_first_column() {
        let a = rs(&["2", "17/6", "115/36", "725/216", "4447/1296"]);
        let t = run_epsilon(&a).unwrap();
        assert_eq!(t.column(0).len(), 5);
        assert_eq!(t.column(1).len(), 3);
        assert_eq!(t.column(2).len(), 1);
        for (j, v) in a.iter().enumerate() {
            assert_eq!(t.value(j, 0), Some(v));
        }
        assert_eq!(t.value(0, 2), Some(&Rational::frac(7, 2)));
    }

    #[test]
    fn constant_sequence_breaks_down() {
        let t = run_epsilon(&[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(t.get(0, 1).unwrap().status(), EntryStatus::Breakdown);
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(run_epsilon::<f64>(&[]).unwrap_err(), AccelError::Empty("A"));
    }

    #[test]
    fn single_term() {
        let t = run_epsilon(&[3.0]).unwrap();
        assert_eq!(t.max_order(), 0);
        assert_eq!(t.value(0, 0), Some(&3.0));
    }
}
