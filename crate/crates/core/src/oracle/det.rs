use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Rational;

/// Exact determinant of a square rational matrix.
///
/// Orders up to 3 use the cofactor formula directly; larger matrices are
/// cleared of denominators row by row and reduced with Bareiss' fraction-free
/// elimination over the integers.
pub fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    match n {
        0 => Rational::integer(1),
        1 => rows[0][0].clone(),
        2 => rows[0][0].clone() * rows[1][1].clone() - rows[0][1].clone() * rows[1][0].clone(),
        3 => {
            let m = |i: usize, j: usize| rows[i][j].clone();
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => bareiss(rows),
    }
}

fn bareiss(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();

    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Rational::integer(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Rational::from(BigRational::new(sign * &m[n - 1][n - 1], scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplace(rows: &[Vec<Rational>]) -> Rational {
        let n = rows.len();
        if n == 0 {
            return Rational::integer(1);
        }
        let mut acc = Rational::integer(0);
        for c in 0..n {
            let minor: Vec<Vec<Rational>> =
                rows[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect()).collect();
            let term = rows[0][c].clone() * laplace(&minor);
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn hilbert(n: usize) -> Vec<Vec<Rational>> {
        (0..n).map(|i| (0..n).map(|j| Rational::frac(1, (i + j + 1) as i64)).collect()).collect()
    }

    #[test]
    fn matches_laplace_expansion() {
        for n in 0..=6 {
            assert_eq!(determinant(&hilbert(n)), laplace(&hilbert(n)), "order {n}");
        }
    }

    #[test]
    fn hilbert_four() {
        assert_eq!(determinant(&hilbert(4)), Rational::frac(1, 6048000));
    }

    #[test]
    fn needs_row_swap() {
        let m = vec![
            vec![Rational::integer(0), Rational::integer(1), Rational::integer(2), Rational::integer(3)],
            vec![Rational::integer(1), Rational::integer(0), Rational::integer(1), Rational::integer(0)],
            vec![Rational::integer(2), Rational::integer(1), Rational::integer(0), Rational::integer(1)],
            vec![Rational::integer(3), Rational::integer(0), Rational::integer(1), Rational::frac(1, 2)],
        ];
        assert_eq!(determinant(&m), laplace(&m));
    }

    #[test]
    fn singular_is_zero() {
        let m: Vec<Vec<Rational>> =
            (0..4).map(|i| (0..4).map(|j| Rational::integer(1 << (i + j))).collect()).collect();
        assert_eq!(determinant(&m), Rational::integer(0));
    }
}
