//! Exact equivalence suite: the recursive engines against each other and
//! against the determinantal oracle, on random rational input.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::accel::{run_epsilon, run_fs_qd, run_rs, shanks_prepare, Entry, SequencePair};
use crate::oracle::{self, OracleError, MAX_ORDER};
use crate::scalar::{Rational, Scalar};

/// Draws beyond this many rejected samples per case give up.
const MAX_REDRAWS: usize = 1000;

/// Which identity a check exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `run_fs_qd = run_rs = direct_solve` entry by entry.
    Engines,
    /// Even ε columns equal FS/qd on the differences.
    Epsilon,
    /// `q`, `e` against Hankel-determinant ratios and `D = e`.
    Qd,
    /// `r`, `s` against the `H/K` ratios.
    Rs,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Engines => "engines",
            CheckKind::Epsilon => "epsilon",
            CheckKind::Qd => "qd",
            CheckKind::Rs => "rs",
        }
    }
}

/// The first disagreement found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub kind: CheckKind,
    pub case: usize,
    pub quantity: &'static str,
    pub j: usize,
    pub n: usize,
    pub expected: String,
    pub found: String,
    pub a: Vec<String>,
    pub u: Vec<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} check, case {}: {}({}, {}) expected {}, found {}\n  A = [{}]\n  u = [{}]",
            self.kind.name(),
            self.case,
            self.quantity,
            self.j,
            self.n,
            self.expected,
            self.found,
            self.a.join(", "),
            self.u.join(", ")
        )
    }
}

impl std::error::Error for Counterexample {}

/// Summary of a passing run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CheckSummary {
    pub cases: usize,
    /// Individual entry comparisons made.
    pub comparisons: usize,
    /// Samples rejected because something broke down.
    pub redraws: usize,
}

/// `p/q` with `|p| <= 20`, `1 <= q <= 10`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::frac(rng.random_range(-20..=20), rng.random_range(1..=10))
}

fn random_nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random complete pair with nonzero `u`.
pub fn random_pair(rng: &mut impl Rng, levels: usize) -> SequencePair<Rational> {
    let a = (0..=levels).map(|_| random_rational(rng)).collect();
    let u = (0..=2 * levels).map(|_| random_nonzero(rng)).collect();
    SequencePair::complete(a, u).expect("sizes match")
}

fn show(e: Option<&Entry<Rational>>) -> String {
    match e {
        Some(Entry::Valid(v)) => v.to_string(),
        Some(other) => other.status().name().to_string(),
        None => "absent".to_string(),
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

struct Mismatch {
    quantity: &'static str,
    j: usize,
    n: usize,
    expected: String,
    found: String,
}

impl Mismatch {
    fn into_counterexample(self, kind: CheckKind, case: usize, a: &[Rational], u: &[Rational]) -> Box<Counterexample> {
        Box::new(Counterexample {
            kind,
            case,
            quantity: self.quantity,
            j: self.j,
            n: self.n,
            expected: self.expected,
            found: self.found,
            a: strings(a),
            u: strings(u),
        })
    }
}

/// Whether every entry of both engine tables and every auxiliary quantity
/// is valid, so that exact comparison is meaningful.
pub fn is_breakdown_free(seq: &SequencePair<Rational>) -> bool {
    let (Ok(fs), Ok((rs, rs_table))) = (run_fs_qd(seq, false), run_rs(seq)) else {
        return false;
    };
    let all = |mut it: Box<dyn Iterator<Item = (usize, usize, &Entry<Rational>)> + '_>| it.all(|(_, _, e)| e.is_valid());
    all(Box::new(fs.table.iter()))
        && all(Box::new(rs_table.iter()))
        && all(Box::new(fs.qd.q_grid().iter()))
        && all(Box::new(fs.qd.e_grid().iter()))
        && all(Box::new(rs.r_grid().iter()))
        && all(Box::new(rs.s_grid().iter()))
}

fn compare(
    quantity: &'static str,
    j: usize,
    n: usize,
    entry: Option<&Entry<Rational>>,
    expected: Result<Rational, OracleError>,
) -> Result<(), Mismatch> {
    let ok = matches!((entry, &expected), (Some(Entry::Valid(v)), Ok(x)) if v == x);
    if ok {
        Ok(())
    } else {
        let expected = match expected {
            Ok(x) => x.to_string(),
            Err(e) => e.to_string(),
        };
        Err(Mismatch { quantity, j, n, expected, found: show(entry) })
    }
}

/// `run_fs_qd`, `run_rs` and `direct_solve` agree on every `(j, n)`.
fn engines_agree(seq: &SequencePair<Rational>) -> Result<usize, Mismatch> {
    let fs = run_fs_qd(seq, false).expect("u is nonzero").table;
    let (_, rs) = run_rs(seq).expect("u is nonzero");
    let mut count = 0;
    for (j, n, entry) in fs.iter() {
        let other = rs.get(j, n);
        if other != Some(entry) {
            return Err(Mismatch { quantity: "rs A", j, n, expected: show(Some(entry)), found: show(other) });
        }
        let direct = oracle::direct_solve(seq, j, n).map(|d| d.value);
        let expected = match direct {
            Ok(Some(v)) => Ok(v),
            Ok(None) => Err(OracleError::Singular { what: "defining system" }),
            Err(e) => Err(e),
        };
        compare("fsqd A", j, n, Some(entry), expected)?;
        count += 1;
    }
    Ok(count)
}

/// `q`, `e`, `D` and `r`, `s` against the oracle.
fn determinants_agree(seq: &SequencePair<Rational>, kind: CheckKind) -> Result<usize, Mismatch> {
    let u = seq.u();
    let mut count = 0;
    match kind {
        CheckKind::Qd => {
            let qd = run_fs_qd(seq, false).expect("u is nonzero").qd;
            for (j, n, entry) in qd.q_grid().iter() {
                compare("q", j, n, Some(entry), oracle::q_ref(u, j, n))?;
                count += 1;
            }
            for (j, n, entry) in qd.e_grid().iter() {
                compare("e", j, n, Some(entry), oracle::e_ref(u, j, n))?;
                if n >= 1 {
                    compare("D", j, n, Some(entry), oracle::d_ref(u, j, n))?;
                }
                count += 1;
            }
        }
        _ => {
            let (rs, _) = run_rs(seq).expect("u is nonzero");
            for (j, n, entry) in rs.r_grid().iter() {
                compare("r", j, n, Some(entry), oracle::r_ref(u, j, n))?;
                count += 1;
            }
            for (j, n, entry) in rs.s_grid().iter() {
                compare("s", j, n, Some(entry), oracle::s_ref(u, j, n))?;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Even ε columns on `a` equal FS/qd on `(a, Δa)` wherever both are valid.
fn epsilon_agrees(a: &[Rational]) -> Result<usize, Mismatch> {
    let eps = run_epsilon(a).expect("non-empty");
    let seq = shanks_prepare(a).expect("nonzero differences");
    let fs = run_fs_qd(&seq, false).expect("nonzero differences").table;
    let mut count = 0;
    for (j, n, entry) in fs.iter() {
        let other = eps.get(j, n);
        if let (Entry::Valid(x), Some(Entry::Valid(y))) = (entry, other) {
            if x != y {
                return Err(Mismatch { quantity: "eps", j, n, expected: x.to_string(), found: y.to_string() });
            }
            count += 1;
        }
    }
    Ok(count)
}

fn seeded(seed: u64, kind: CheckKind) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((kind as u64 + 1) << 56))
}

/// Runs one family of checks on `cases` random breakdown-free inputs with
/// `L = levels` (the ε family uses sequences of length `2L + 1`).
pub fn run_check(kind: CheckKind, levels: usize, cases: usize, seed: u64) -> Result<CheckSummary, Box<Counterexample>> {
    assert!(levels <= MAX_ORDER, "levels beyond the oracle cap");
    let mut rng = seeded(seed, kind);
    let mut summary = CheckSummary { cases, ..Default::default() };
    for case in 0..cases {
        let mut tries = 0;
        if kind == CheckKind::Epsilon {
            let a = loop {
                let a: Vec<Rational> = (0..=2 * levels).map(|_| random_rational(&mut rng)).collect();
                let ok = shanks_prepare(&a).is_ok_and(|seq| {
                    run_fs_qd(&seq, false).is_ok_and(|r| r.table.iter().all(|(_, _, e)| e.is_valid()))
                }) && run_epsilon(&a).is_ok_and(|t| t.iter().all(|(_, _, e)| e.is_valid()));
                if ok {
                    break a;
                }
                tries += 1;
                assert!(tries < MAX_REDRAWS, "no breakdown-free sample found");
            };
            summary.redraws += tries;
            summary.comparisons +=
                epsilon_agrees(&a).map_err(|m| m.into_counterexample(kind, case, &a, &[]))?;
            continue;
        }
        let seq = loop {
            let seq = random_pair(&mut rng, levels);
            if is_breakdown_free(&seq) {
                break seq;
            }
            tries += 1;
            assert!(tries < MAX_REDRAWS, "no breakdown-free sample found");
        };
        summary.redraws += tries;
        let result = match kind {
            CheckKind::Engines => engines_agree(&seq),
            other => determinants_agree(&seq, other),
        };
        summary.comparisons += result.map_err(|m| m.into_counterexample(kind, case, seq.a(), seq.u()))?;
    }
    Ok(summary)
}

/// All four families; stops at the first counterexample.
pub fn run_all(levels: usize, cases: usize, seed: u64) -> Result<CheckSummary, Box<Counterexample>> {
    let mut total = CheckSummary::default();
    for kind in [CheckKind::Engines, CheckKind::Epsilon, CheckKind::Qd, CheckKind::Rs] {
        let s = run_check(kind, levels, cases, seed)?;
        total.cases += s.cases;
        total.comparisons += s.comparisons;
        total.redraws += s.redraws;
    }
    Ok(total)
}
