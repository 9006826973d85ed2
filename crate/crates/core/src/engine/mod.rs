//! Adian's algorithm for a left cycle-free relation `bP = aQ`.
//!
//! [`decompose`] computes the prefix decomposition of a word, [`step`]
//! replaces its head by the other side of the relation, and the run
//! functions iterate that under a mandatory fuel bound: the algorithm is
//! only a semi-decision procedure and may diverge. The pair form
//! ([`pair_run`]) reaches `(ε, ε)` exactly when the two words are equal,
//! and the number of steps it takes is their Dehn distance.
//!
//! Decompositions are recomputed from scratch after each replacement. A
//! replacement changes the letter at the head position, which can extend
//! the factor in front of it, so patching the old decomposition is unsound.

mod decompose;
mod run;
mod trace;

use thiserror::Error;

use crate::words::Word;

pub use decompose::{decompose, find_head, step, PrefixDecomposition};
pub use run::{
    p_reduce, pair_run, pair_run_observed, pair_run_oriented, pair_step, run_divisibility, Outcome,
    PairState, PairVerdict, RewriteSide, RunVerdict,
};
pub(crate) use run::serialize_biguint;
pub use trace::{trace_pair, trace_word, PairTrace, TraceRecord, WordTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// The rewritten component has a headless decomposition, which proves
    /// the two words unequal.
    #[error("headless decomposition of {u}: ({u}, {v}) are not equal")]
    NotEqualEvidence { u: Word, v: Word },
    #[error("pair step needs two nonempty components")]
    EmptyComponent,
}
