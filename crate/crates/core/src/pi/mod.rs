//! The family `Π_N = ⟨a, b | baa(ba)^N = a⟩`.
//!
//! Witness pairs `(U_k, V_k)`, the step-count sequences behind their
//! distance `σ_N(k)`, a block-level macro engine that reaches `(ε, ε)` in
//! exactly `σ_N(k)` steps without expanding anything, and the Collatz-like
//! map `f_N` that encodes the algorithm's behaviour on this family.

mod collatz;
mod macros;
mod sequences;

use thiserror::Error;

use crate::words::{BlockKind, BlockWord, Letter, Word};

pub use collatz::{collatz_run, collatz_step, collatz_trajectory, CollatzOutcome, CollatzState};
pub use macros::{
    cross_validate, LogEntry, MacroEngine, MacroMove, MacroRun, MacroState,
};
pub use sequences::{
    closed_form, descent_cost_as_printed, lower_bound_check, sigma, sigma_closed_form, Mode, Sequence,
    SequenceKit,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiError {
    #[error("N must be at least 2, got {0}")]
    InvalidN(u64),
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("total length must be at least 12, got {0}")]
    LengthTooSmall(usize),
    #[error("unknown sequence {0:?}; expected one of s, t, T, s', t', T'")]
    UnknownSequence(String),
    #[error("{op}: expected {expected}, found {found}")]
    ShapeMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },
    #[error("internal mismatch in {what}: expected {expected}, found {found}")]
    InternalMismatch {
        what: String,
        expected: String,
        found: String,
    },
}

/// `U_k = a b^{2k} a^{2k} a` and `V_k = b^{2k-1} a^{2k} b a a`. The same
/// words serve every `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub k: usize,
    pub u: Word,
    pub v: Word,
}

impl WitnessPair {
    pub fn blocks(&self) -> (BlockWord, BlockWord) {
        witness_blocks(self.k)
    }
}

pub fn witness(k: usize) -> Result<WitnessPair, PiError> {
    if k < 1 {
        return Err(PiError::InvalidK(k));
    }
    let mut u = Word::power(Letter::A, 1);
    u.extend_from(&Word::power(Letter::B, 2 * k));
    u.extend_from(&Word::power(Letter::A, 2 * k + 1));
    let mut v = Word::power(Letter::B, 2 * k - 1);
    v.extend_from(&Word::power(Letter::A, 2 * k));
    v.extend_from(&crate::words::w("baa"));
    Ok(WitnessPair { k, u, v })
}

pub(crate) fn witness_blocks(k: usize) -> (BlockWord, BlockWord) {
    let k = k as u64;
    let u = BlockWord::from_blocks([
        (BlockKind::A, 1),
        (BlockKind::B, 2 * k),
        (BlockKind::A, 2 * k + 1),
    ]);
    let v = BlockWord::from_blocks([
        (BlockKind::B, 2 * k - 1),
        (BlockKind::A, 2 * k),
        (BlockKind::X, 1),
        (BlockKind::A, 1),
    ]);
    (u, v)
}
