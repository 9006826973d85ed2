use crate::presentation::{Presentation, Side};
use crate::words::Word;

/// `w = w_1 | w_2 | ... | w_k [H] w'`: maximal proper prefixes of the
/// relation's sides, then optionally a head (a full side) and the tail
/// after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixDecomposition {
    pub factors: Vec<Word>,
    pub head: Option<Side>,
    pub tail: Word,
}

impl PrefixDecomposition {
    pub fn is_headless(&self) -> bool {
        self.head.is_none()
    }

    /// Concatenation of factors, head side and tail.
    pub fn reassemble(&self, pres: &Presentation) -> Word {
        let mut out = Word::empty();
        for f in &self.factors {
            out.extend_from(f);
        }
        if let Some(side) = self.head {
            out.extend_from(pres.side(side));
        }
        out.extend_from(&self.tail);
        out
    }

    /// Position of the head in the decomposed word.
    pub fn head_position(&self) -> Option<usize> {
        self.head
            .map(|_| self.factors.iter().map(Word::len).sum())
    }

    /// `bb | bba [bbaa] bbab`. With `compact`, runs of an identical
    /// factor are written as a power, e.g. `(ba)^3 | baa [a]`.
    pub fn render(&self, pres: &Presentation, compact: bool) -> String {
        let mut parts: Vec<String> = Vec::new();
        if compact {
            let mut i = 0;
            while i < self.factors.len() {
                let f = &self.factors[i];
                let run = self.factors[i..].iter().take_while(|g| *g == f).count();
                parts.push(match (run, f.len()) {
                    (1, _) => f.to_string(),
                    (_, 1) => format!("{f}^{run}"),
                    _ => format!("({f})^{run}"),
                });
                i += run;
            }
        } else {
            parts.extend(self.factors.iter().map(Word::to_string));
        }
        let mut out = parts.join(" | ");
        if let Some(side) = self.head {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&format!("[{}]", pres.side(side)));
            if !self.tail.is_empty() {
                out.push(' ');
                out.push_str(&self.tail.to_string());
            }
        }
        out
    }
}

/// Scans greedy maximal prefixes from the left. Returns the factor
/// boundaries and, if a full side is met, its position and which side.
fn scan(pres: &Presentation, word: &Word, mut on_factor: impl FnMut(usize, usize)) -> Option<(usize, Side)> {
    let letters = word.letters();
    let mut i = 0;
    while i < letters.len() {
        let side = pres.side_starting_with(letters[i]);
        let target = pres.side(side).letters();
        let matched = letters[i..]
            .iter()
            .zip(target)
            .take_while(|(x, y)| x == y)
            .count();
        if matched == target.len() {
            return Some((i, side));
        }
        on_factor(i, i + matched);
        i += matched;
    }
    None
}

pub fn decompose(pres: &Presentation, word: &Word) -> PrefixDecomposition {
    let mut factors = Vec::new();
    let head = scan(pres, word, |s, e| factors.push(word.slice(s, e)));
    match head {
        Some((pos, side)) => PrefixDecomposition {
            factors,
            head: Some(side),
            tail: word.suffix(pos + pres.side(side).len()),
        },
        None => PrefixDecomposition {
            factors,
            head: None,
            tail: Word::empty(),
        },
    }
}

/// Position and side of the head of the prefix decomposition, if any.
pub fn find_head(pres: &Presentation, word: &Word) -> Option<(usize, Side)> {
    scan(pres, word, |_, _| {})
}

/// One step of the algorithm: replace the head by the other side.
/// `None` when the decomposition is headless.
pub fn step(pres: &Presentation, word: &Word) -> Option<Word> {
    let (pos, side) = find_head(pres, word)?;
    Some(word.splice(pos, pres.side(side).len(), pres.side(side.other())))
}
