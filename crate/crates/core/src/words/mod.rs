//! Words over the two-letter alphabet `{a, b}`.
//!
//! [`Word`] is the plain representation used by the naive engine and the
//! oracle. [`BlockWord`] stores the same words as runs `a^i`, `b^j` and
//! `(ba)^p` with arbitrary-precision exponents, which is what the macro
//! engine in [`crate::pi`] works on.

mod block;
mod parse;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use block::{compress, p_reduce_blocks, Block, BlockKind, BlockWord};
pub use parse::{parse_word, parse_word_with_cap};

/// Default cap on the number of letters produced by expansion.
pub const DEFAULT_EXPANSION_CAP: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expanded length exceeds cap of {cap} letters")]
    Overflow { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    B = 1,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Letter {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next().and_then(Letter::from_char), chars.next()) {
            (Some(l), None) => Ok(l),
            _ => Err(WordError::Syntax {
                pos: 0,
                msg: format!("expected a single letter 'a' or 'b', got {s:?}"),
            }),
        }
    }
}

/// A finite word over `{a, b}`. Ordered lexicographically with `a < b`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// A run `x^n` of a single letter.
    pub fn power(letter: Letter, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// The factor `w[start..end]`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn suffix(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// Length of the longest common prefix of `self` and `other`.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .take_while(|(x, y)| x == y)
            .count()
    }

    /// Replaces `w[start..start + len]` by `with`.
    pub fn splice(&self, start: usize, len: usize, with: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() - len + with.len());
        letters.extend_from_slice(&self.0[..start]);
        letters.extend_from_slice(&with.0);
        letters.extend_from_slice(&self.0[start + len..]);
        Word(letters)
    }

    /// Every word of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < usize::BITS as usize, "word length {n} too large to enumerate");
        (0..(1usize << n)).map(move |bits| {
            Word(
                (0..n)
                    .map(|i| {
                        if bits >> (n - 1 - i) & 1 == 1 {
                            Letter::B
                        } else {
                            Letter::A
                        }
                    })
                    .collect(),
            )
        })
    }

    /// Lowercase letters, or `ε` for the empty word.
    pub fn display_or_epsilon(&self) -> String {
        if self.is_empty() {
            "ε".to_string()
        } else {
            self.to_string()
        }
    }

    /// Power notation using the block compression, e.g. `b^2a^3(ba)^4`.
    pub fn to_compact_string(&self) -> String {
        compress(self).to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|l| l.as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Shorthand for tests and examples: panics on malformed input.
pub fn w(text: &str) -> Word {
    parse_word(text).unwrap_or_else(|e| panic!("bad word literal {text:?}: {e}"))
}
