//! Operation counts of the engines on random float input.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::accel::{run_epsilon, run_fs_qd, run_rs, AccelError, EntryStatus, ExtrapolationTable, SequencePair};
use crate::scalar::{with_counting, Counted, OpCounts};

/// Smallest `L` accepted by the benches.
pub const MIN_LEVELS: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("L must be at least {MIN_LEVELS}, got {0}")]
    TooSmall(usize),
    #[error("unknown bench method `{0}` (expected one of: fsqd, fsqd_diag, rs, eps)")]
    UnknownMethod(String),
    #[error(transparent)]
    Accel(#[from] AccelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMethod {
    Fsqd,
    FsqdDiag,
    Rs,
    Eps,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 4] = [BenchMethod::Fsqd, BenchMethod::FsqdDiag, BenchMethod::Rs, BenchMethod::Eps];

    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::Fsqd => "fsqd",
            BenchMethod::FsqdDiag => "fsqd_diag",
            BenchMethod::Rs => "rs",
            BenchMethod::Eps => "eps",
        }
    }
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchMethod {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchMethod::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| BenchError::UnknownMethod(s.to_string()))
    }
}

/// Counts divided by `L^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalized {
    pub mul: f64,
    pub add: f64,
    pub div: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub method: BenchMethod,
    #[serde(rename = "L")]
    pub levels: usize,
    pub seed: u64,
    pub counts: OpCounts,
    pub normalized: Normalized,
    pub total: u64,
    /// False when any table entry broke down; the counts are then partial.
    pub valid: bool,
}

impl BenchReport {
    fn new(method: BenchMethod, levels: usize, seed: u64, counts: OpCounts, valid: bool) -> Self {
        let l2 = (levels * levels) as f64;
        BenchReport {
            method,
            levels,
            seed,
            counts,
            normalized: Normalized {
                mul: counts.multiplications as f64 / l2,
                add: counts.additions as f64 / l2,
                div: counts.divisions as f64 / l2,
            },
            total: counts.total(),
            valid,
        }
    }
}

/// Uniform draws from `[0.5, 1.5]`: `A_0..A_{2L}` and `u_0..u_{2L}`.
fn random_input(levels: usize, seed: u64) -> (Vec<Counted>, Vec<Counted>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |count: usize| -> Vec<Counted> { (0..count).map(|_| Counted(rng.random_range(0.5..=1.5))).collect() };
    let a = draw(2 * levels + 1);
    let u = draw(2 * levels + 1);
    (a, u)
}

/// Runs `method` on counting scalars, without the `L >= 10` floor.
pub fn count_method(method: BenchMethod, levels: usize, seed: u64) -> Result<BenchReport, BenchError> {
    let (a, u) = random_input(levels, seed);
    let (table, counts): (Result<ExtrapolationTable<Counted>, AccelError>, OpCounts) = match method {
        BenchMethod::Eps => with_counting(|| run_epsilon(&a)),
        _ => {
            let seq = SequencePair::complete(a[..=levels].to_vec(), u)?;
            match method {
                BenchMethod::Rs => with_counting(|| run_rs(&seq).map(|(_, t)| t)),
                BenchMethod::FsqdDiag => with_counting(|| run_fs_qd(&seq, true).map(|r| r.table)),
                _ => with_counting(|| run_fs_qd(&seq, false).map(|r| r.table)),
            }
        }
    };
    let valid = table?.count_status(EntryStatus::Breakdown) == 0;
    Ok(BenchReport::new(method, levels, seed, counts, valid))
}

/// Operation counts of `method` at `L` levels on seeded random input.
pub fn bench_method(method: BenchMethod, levels: usize, seed: u64) -> Result<BenchReport, BenchError> {
    if levels < MIN_LEVELS {
        return Err(BenchError::TooSmall(levels));
    }
    count_method(method, levels, seed)
}

/// `total(rs) / total(fsqd)` on identical input.
pub fn compare_ratio(levels: usize, seed: u64) -> Result<f64, BenchError> {
    let rs = bench_method(BenchMethod::Rs, levels, seed)?;
    let fsqd = bench_method(BenchMethod::Fsqd, levels, seed)?;
    Ok(rs.total as f64 / fsqd.total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(method: BenchMethod, l: u64) -> OpCounts {
        count_method(method, l as usize, 3).unwrap().counts
    }

    #[test]
    fn manual_tally_at_two_levels() {
        // qd: q_1 (4 div), e_1 (3 x 2 add), q_2 (2 x (div, mul)), e_2 (2 add).
        // FS: M_0, N_0 (6 div); n=1: 2 x (2 add, 3 div); n=2: 2 add, 3 div.
        let fsqd = OpCounts { additions: 6 + 2 + 6, multiplications: 2, divisions: 4 + 2 + 6 + 6 + 3 };
        assert_eq!(counts(BenchMethod::Fsqd, 2), fsqd);
        // Diagonal only skips the A quotient at (1, 1).
        assert_eq!(counts(BenchMethod::FsqdDiag, 2), OpCounts { divisions: fsqd.divisions - 1, ..fsqd });
        // s_1: 4 x (div, add, mul); r_2: 3 x (div, add, mul); s_2: 2 x (div, add, mul);
        // A: n=1 2 x (2 mul, 2 add, 1 div), n=2 1 x (2 mul, 2 add, 1 div).
        let rs = OpCounts { additions: 4 + 3 + 2 + 6, multiplications: 4 + 3 + 2 + 6, divisions: 4 + 3 + 2 + 3 };
        assert_eq!(counts(BenchMethod::Rs, 2), rs);
        // ε on 5 terms: 4 + 3 + 2 + 1 updates of (2 add, 1 div).
        assert_eq!(counts(BenchMethod::Eps, 2), OpCounts { additions: 20, multiplications: 0, divisions: 10 });
    }

    #[test]
    fn closed_forms_hold_without_breakdown() {
        for l in [3u64, 7, 12, 25] {
            let sq = l * l;
            let fsqd = counts(BenchMethod::Fsqd, l);
            assert_eq!(fsqd.multiplications, sq - l);
            assert_eq!(fsqd.additions, 3 * sq + l);
            assert_eq!(2 * fsqd.divisions, 5 * sq + 9 * l + 4);
            assert_eq!(counts(BenchMethod::FsqdDiag, l).divisions, 2 * sq + 5 * l + 2);
            let rs = counts(BenchMethod::Rs, l);
            assert_eq!(rs.multiplications, 3 * sq + 2 * l - 1);
            assert_eq!(rs.additions, 3 * sq + 2 * l - 1);
            assert_eq!(2 * rs.divisions, 5 * sq + 3 * l - 2);
            let eps = counts(BenchMethod::Eps, l);
            assert_eq!(eps, OpCounts { additions: 4 * sq + 2 * l, multiplications: 0, divisions: 2 * sq + l });
        }
    }

    #[test]
    fn deterministic_per_seed() {
        for m in BenchMethod::ALL {
            assert_eq!(bench_method(m, 12, 9).unwrap(), bench_method(m, 12, 9).unwrap());
        }
    }

    #[test]
    fn report_fields_are_consistent() {
        let r = bench_method(BenchMethod::Rs, 10, 1).unwrap();
        assert!(r.valid);
        assert_eq!(r.total, r.counts.total());
        assert_eq!(r.normalized.mul, r.counts.multiplications as f64 / 100.0);
    }

    #[test]
    fn small_levels_rejected() {
        assert_eq!(bench_method(BenchMethod::Eps, 5, 0), Err(BenchError::TooSmall(5)));
        assert_eq!("fsqd_diag".parse::<BenchMethod>(), Ok(BenchMethod::FsqdDiag));
        assert!("nope".parse::<BenchMethod>().is_err());
    }
}
