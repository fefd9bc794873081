//! Compact pivot-point encodings of the two LCS all-scores matrices, kept
//! current under single-character prepend/append operations.
//!
//! For strings `A` (length `m`) and `B` (length `n`), the library maintains:
//!
//! * the substring/string matrix `K[i,j] = LCS(B[i..j], A)`, updated on
//!   prepends and appends to `A` in work proportional to
//!   `delta = n - LCS(A,B)` ([`ssam::SsamState`]);
//! * the suffix/prefix matrix `Psi[i,j] = LCS(B[i..n], A[0..j])`, updated
//!   on prepends to `A` and appends to `B` in work proportional to
//!   `L = LCS(A,B)` ([`psam::PsamState`]);
//! * both at once under appends to either string ([`joint::JointState`]).
//!
//! Each matrix is stored only as the non-zero cells of its density
//! (second-difference) matrix — `delta` points for `K`, `L` points for
//! `Psi` — and every score is recoverable by dominance counting
//! ([`pivots::score_ssam`], [`pivots::score_psam`]). The [`oracle`] module
//! provides the brute-force reference everything is tested against.

pub mod counters;
pub mod error;
pub mod joint;
pub mod oracle;
pub mod pivots;
pub mod psam;
pub mod sequences;
pub mod ssam;
pub mod state;

pub use counters::OpCounters;
pub use error::{Error, Result};
pub use joint::JointState;
pub use pivots::{MatrixKind, Pivot, PivotSet};
pub use psam::PsamState;
pub use sequences::{Alphabet, Sequence};
pub use ssam::SsamState;
pub use state::{DynState, Op, OpKind, StateKind};
