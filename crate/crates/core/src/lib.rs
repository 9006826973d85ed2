//! Word problems and Dehn distances in left cycle-free one-relation monoids
//! `⟨a, b | bP = aQ⟩`.
//!
//! * [`words`]: words over `{a, b}`, power notation, block compression.
//! * [`presentation`]: validated relations and structural classifiers.
//! * [`engine`]: prefix decompositions and Adian's algorithm, single-word
//!   and pair form, with traces.
//! * [`oracle`]: brute-force shortest transformation chains and small Dehn
//!   function samples, independent of the engine.
//! * [`pi`]: the family `Π_N = ⟨a, b | baa(ba)^N = a⟩`, its step-count
//!   sequences, a block-level macro engine that reproduces exponentially
//!   long runs exactly, and the associated Collatz-like map.
//! * [`cli`]: the `onerel` command line.

pub mod cli;
pub mod engine;
pub mod oracle;
pub mod pi;
pub mod presentation;
pub mod words;

pub use presentation::{PiPresentation, Presentation};
pub use words::{BlockWord, Letter, Word};
