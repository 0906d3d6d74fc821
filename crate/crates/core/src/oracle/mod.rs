//! Exact reference values from the determinantal definitions.
//!
//! Everything here runs on [`Rational`] only and is capped at order
//! [`MAX_ORDER`]; it exists to validate the recursive engines.
//!
//! Notation: `H_n^(j)` is the `n x n` Hankel determinant `det[u_{j+r+c}]`,
//! `K_n^(j)` the same with its first row replaced by ones and the remaining
//! rows shifted down, and `g_k(l) = u_{k+l-1}` is the basis of the
//! generalized Richardson form of the problem. (The E-algorithm quantities
//! relate to these by `R_n^(j) = (-1)^(n-1) r_n^(j)`; they are not computed.)

mod det;

use num_traits::Signed;
use thiserror::Error;

use crate::accel::SequencePair;
use crate::scalar::{Rational, Scalar};

pub use det::determinant;

/// Largest order `n` (and level count `L`) the oracle accepts.
pub const MAX_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {n} exceeds the oracle cap of {MAX_ORDER}")]
    TooLarge { n: usize },
    #[error("u_{index} is required but not supplied")]
    MissingIndex { index: usize },
    #[error("{what} is singular (zero denominator determinant)")]
    Singular { what: &'static str },
}

fn check_order(n: usize) -> Result<(), OracleError> {
    if n > MAX_ORDER {
        Err(OracleError::TooLarge { n })
    } else {
        Ok(())
    }
}

fn at(u: &[Rational], index: usize) -> Result<Rational, OracleError> {
    u.get(index).cloned().ok_or(OracleError::MissingIndex { index })
}

fn ratio(numer: Rational, denom: Rational, what: &'static str) -> Result<Rational, OracleError> {
    numer.checked_div(&denom).map_err(|_| OracleError::Singular { what })
}

/// `H_n^(j)`; `H_0^(j) = 1`.
pub fn hankel_det(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    hankel_unchecked(u, j, n)
}

fn hankel_unchecked(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    let rows = (0..n).map(|r| (0..n).map(|c| at(u, j + r + c)).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(determinant(&rows))
}

/// `K_n^(j)`: a row of ones over the rows `u_{j+r-1+c}`, `r = 1..n-1`.
/// `K_0^(j) = K_1^(j) = 1`.
pub fn k_det(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    k_unchecked(u, j, n)
}

fn k_unchecked(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut rows = vec![vec![Rational::one(); n]];
    for r in 1..n {
        rows.push((0..n).map(|c| at(u, j + r - 1 + c)).collect::<Result<_, _>>()?);
    }
    Ok(determinant(&rows))
}

/// `r_n^(j) = H_n^(j) / K_n^(j)`.
pub fn r_ref(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    ratio(hankel_det(u, j, n)?, k_det(u, j, n)?, "K_n^(j)")
}

/// `s_n^(j) = K_{n+1}^(j) / H_n^(j)`.
pub fn s_ref(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    ratio(k_unchecked(u, j, n + 1)?, hankel_det(u, j, n)?, "H_n^(j)")
}

/// `q_n^(j) = H_{n-1}^(j) H_n^(j+1) / (H_n^(j) H_{n-1}^(j+1))`, `n >= 1`.
pub fn q_ref(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    assert!(n >= 1, "q is defined for n >= 1");
    let numer = hankel_det(u, j, n - 1)? * hankel_det(u, j + 1, n)?;
    let denom = hankel_det(u, j, n)? * hankel_det(u, j + 1, n - 1)?;
    ratio(numer, denom, "H_n^(j) H_{n-1}^(j+1)")
}

/// `e_n^(j) = H_{n+1}^(j) H_{n-1}^(j+1) / (H_n^(j) H_n^(j+1))`, `n >= 1`;
/// `e_0^(j) = 0`.
pub fn e_ref(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    let numer = hankel_unchecked(u, j, n + 1)? * hankel_det(u, j + 1, n - 1)?;
    let denom = hankel_det(u, j, n)? * hankel_det(u, j + 1, n)?;
    ratio(numer, denom, "H_n^(j) H_n^(j+1)")
}

/// A sequence `l -> b(l)` fed to the FS determinants.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceFunction {
    /// `I(l) = 1`.
    Ones,
    /// Stored values, e.g. `a(l) = A_l`.
    Stored(Vec<Rational>),
}

impl SequenceFunction {
    pub fn a(seq: &SequencePair<Rational>) -> Self {
        SequenceFunction::Stored(seq.a().to_vec())
    }

    pub fn at(&self, l: usize) -> Option<Rational> {
        match self {
            SequenceFunction::Ones => Some(Rational::one()),
            SequenceFunction::Stored(v) => v.get(l).cloned(),
        }
    }
}

fn g(u: &[Rational], k: usize, l: usize) -> Result<Rational, OracleError> {
    at(u, k + l - 1)
}

/// `G_n^(j) = |g_1(j) ... g_n(j)|` with `g_k(l) = u_{k+l-1}`; `G_0^(j) = 1`.
pub fn g_det(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    g_unchecked(u, j, n)
}

fn g_unchecked(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    let rows = (0..n).map(|i| (1..=n).map(|k| g(u, k, j + i)).collect()).collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(determinant(&rows))
}

/// `f_n^(j)(b) = |g_1(j) ... g_n(j) b(j)|`; `f_0^(j)(b) = b(j)`.
pub fn f_det(b: &SequenceFunction, u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = (1..=n).map(|k| g(u, k, j + i)).collect::<Result<Vec<_>, _>>()?;
        row.push(b.at(j + i).ok_or(OracleError::MissingIndex { index: j + i })?);
        rows.push(row);
    }
    Ok(determinant(&rows))
}

/// `psi_n^(j)(b) = f_n^(j)(b) / G_{n+1}^(j)`.
pub fn psi(b: &SequenceFunction, u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    ratio(f_det(b, u, j, n)?, g_unchecked(u, j, n + 1)?, "G_{n+1}^(j)")
}

/// FS divisor `D_n^(j) = G_{n+1}^(j) G_{n-1}^(j+1) / (G_n^(j) G_n^(j+1))`, `n >= 1`.
pub fn d_ref(u: &[Rational], j: usize, n: usize) -> Result<Rational, OracleError> {
    check_order(n)?;
    assert!(n >= 1, "D is defined for n >= 1");
    let numer = g_unchecked(u, j, n + 1)? * g_det(u, j + 1, n - 1)?;
    let denom = g_det(u, j, n)? * g_det(u, j + 1, n)?;
    ratio(numer, denom, "G_n^(j) G_n^(j+1)")
}

/// Solution of the `(n+1) x (n+1)` defining system for `A_n^(j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectSolveResult {
    /// `A_n^(j)`; `None` when the system is singular.
    pub value: Option<Rational>,
    /// `alpha_1..alpha_n`; empty when singular.
    pub alphas: Vec<Rational>,
}

impl DirectSolveResult {
    pub fn is_singular(&self) -> bool {
        self.value.is_none()
    }
}

/// Solves `A_l = A + sum_{k=1..n} alpha_k u_{k+l-1}`, `l = j..j+n`, by exact
/// Gaussian elimination with largest-magnitude pivots.
pub fn direct_solve(seq: &SequencePair<Rational>, j: usize, n: usize) -> Result<DirectSolveResult, OracleError> {
    check_order(seq.levels())?;
    check_order(n)?;
    let size = n + 1;
    let mut m: Vec<Vec<Rational>> = Vec::with_capacity(size);
    for i in 0..size {
        let l = j + i;
        let mut row = vec![Rational::one()];
        for k in 1..=n {
            row.push(at(seq.u(), k + l - 1)?);
        }
        row.push(seq.a().get(l).cloned().ok_or(OracleError::MissingIndex { index: l })?);
        m.push(row);
    }

    for col in 0..size {
        let pivot = (col..size)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&a, &b| m[a][col].as_big().abs().cmp(&m[b][col].as_big().abs()));
        let Some(p) = pivot else {
            return Ok(DirectSolveResult { value: None, alphas: Vec::new() });
        };
        m.swap(col, p);
        for r in 0..size {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].checked_div(&m[col][col]).expect("nonzero pivot");
            for c in col..=size {
                let v = m[r][c].clone() - factor.clone() * m[col][c].clone();
                m[r][c] = v;
            }
        }
    }
    let mut solution = (0..size).map(|r| m[r][size].checked_div(&m[r][r]).expect("nonzero pivot"));
    let value = solution.next();
    Ok(DirectSolveResult { value, alphas: solution.collect() })
}
