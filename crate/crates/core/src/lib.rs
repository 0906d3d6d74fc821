//! Convergence acceleration by the higher-order G-transformation.
//!
//! The crate computes `A_n^(j)` for the linear systems
//! `A_l = A_n^(j) + sum_k alpha_k u_{k+l-1}` with three interchangeable
//! recursive engines ([`accel::run_fs_qd`], [`accel::run_rs`],
//! [`accel::run_epsilon`] for the Shanks special case) over any
//! [`scalar::Scalar`], an exact determinantal [`oracle`], an infinite-integral
//! driver ([`quad`]) and operation-count benchmarks ([`bench`]).

pub mod accel;
pub mod bench;
pub mod check;
pub mod oracle;
pub mod quad;
pub mod scalar;

pub use accel::{
    build_qd_table, run_epsilon, run_fs_qd, run_rs, shanks_prepare, AccelError, Entry, EntryStatus, ExtrapolationTable,
    Method, SequencePair,
};
pub use scalar::{with_counting, Counted, OpCounts, Rational, Scalar};
