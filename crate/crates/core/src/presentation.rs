//! One-relation presentations `⟨a, b | bP = aQ⟩` and a few structural
//! classifiers for the monadic case `bUa = a`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::words::{parse_word, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relation is not left cycle-free: sides must be nonempty and start with different letters")]
    NotLeftCycleFree,
    #[error("both sides of the relation are the same word")]
    IdenticalSides,
    #[error("relative length of the empty word is undefined")]
    EmptyWord,
    #[error("relation must be written LHS=RHS")]
    MissingEquals,
    #[error("the family parameter must be at least 2, got {0}")]
    ParameterTooSmall(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Which side of the defining relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `bP`, the side starting with `b`.
    Lhs,
    /// `aQ`, the side starting with `a`.
    Rhs,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

/// A left cycle-free one-relation presentation, oriented so that `lhs`
/// starts with `b` and `rhs` starts with `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    lhs: Word,
    rhs: Word,
}

impl Presentation {
    /// Validates a relation given in either orientation.
    pub fn validate(lhs: Word, rhs: Word) -> Result<Self, PresentationError> {
        if lhs == rhs {
            return Err(PresentationError::IdenticalSides);
        }
        match (lhs.first(), rhs.first()) {
            (Some(Letter::B), Some(Letter::A)) => Ok(Presentation { lhs, rhs }),
            (Some(Letter::A), Some(Letter::B)) => Ok(Presentation { lhs: rhs, rhs: lhs }),
            _ => Err(PresentationError::NotLeftCycleFree),
        }
    }

    /// `⟨a, b | b²a² = a⟩`, the running example for prefix decompositions.
    pub fn m0() -> Self {
        Self::validate(
            Word::from_letters(vec![Letter::B, Letter::B, Letter::A, Letter::A]),
            Word::from_letters(vec![Letter::A]),
        )
        .expect("b^2a^2 = a is left cycle-free")
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    pub fn side(&self, side: Side) -> &Word {
        match side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }

    /// The side beginning with `letter`.
    pub fn side_starting_with(&self, letter: Letter) -> Side {
        match letter {
            Letter::B => Side::Lhs,
            Letter::A => Side::Rhs,
        }
    }

    /// The middle word `U` when the relation has the form `bUa = a`.
    pub fn monadic_middle(&self) -> Option<Word> {
        let n = self.lhs.len();
        let monadic = self.rhs.len() == 1 && n >= 2 && self.lhs.letters()[n - 1] == Letter::A;
        monadic.then(|| self.lhs.slice(1, n - 1))
    }

    /// Absolute change in length caused by one elementary transformation.
    pub fn length_delta(&self) -> usize {
        self.lhs.len().abs_diff(self.rhs.len())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Parses `LHS=RHS` with both sides in power notation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s.split_once('=').ok_or(PresentationError::MissingEquals)?;
        Presentation::validate(parse_word(l)?, parse_word(r)?)
    }
}

/// `Π_N = ⟨a, b | baa(ba)^N = a⟩` for `N ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiPresentation {
    n: usize,
    underlying: Presentation,
}

impl PiPresentation {
    pub fn new(n: usize) -> Result<Self, PresentationError> {
        if n < 2 {
            return Err(PresentationError::ParameterTooSmall(n));
        }
        let mut lhs = vec![Letter::B, Letter::A, Letter::A];
        for _ in 0..n {
            lhs.extend([Letter::B, Letter::A]);
        }
        let underlying = Presentation::validate(Word::from_letters(lhs), Word::power(Letter::A, 1))?;
        Ok(PiPresentation { n, underlying })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn presentation(&self) -> &Presentation {
        &self.underlying
    }

    /// The middle word `U` of `bUa = a`, namely `aa(ba)^{N-1}b`.
    pub fn middle(&self) -> Word {
        self.underlying
            .monadic_middle()
            .expect("Π_N is monadic")
    }
}

impl AsRef<Presentation> for PiPresentation {
    fn as_ref(&self) -> &Presentation {
        &self.underlying
    }
}

impl AsRef<Presentation> for Presentation {
    fn as_ref(&self) -> &Presentation {
        self
    }
}

/// Number of maximal single-letter runs, so `b^α a^β b^γ a^δ` has 4.
pub fn relative_length(word: &Word) -> Result<usize, PresentationError> {
    let letters = word.letters();
    if letters.is_empty() {
        return Err(PresentationError::EmptyWord);
    }
    Ok(1 + letters.windows(2).filter(|p| p[0] != p[1]).count())
}

/// Residual finiteness of `⟨a, b | bUa = a⟩`: holds exactly when `U = b^k`,
/// `k ≥ 0`.
pub fn is_residually_finite_monadic(middle: &Word) -> bool {
    middle.letters().iter().all(|&l| l == Letter::B)
}
