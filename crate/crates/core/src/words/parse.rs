//! Power notation: `baa(ba)^2`, `b^2a^2`, `ab^8a^8a`.
//!
//! ```text
//! word := atom*
//! atom := ('a' | 'b' | 'ε' | '(' word ')') ('^' digits)?
//! ```
//!
//! Whitespace and the middle dot `·` are ignored so that products written as
//! `bbbba·a·bbab` parse. Exponents must be positive.

use super::{Letter, Word, WordError, DEFAULT_EXPANSION_CAP};

enum Node {
    Letter(Letter),
    Group(Vec<(Node, u64)>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace() && *c != '·')
            .collect();
        Parser { chars, idx: 0, text }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.idx)
            .map(|&(p, _)| p)
            .unwrap_or(self.text.len())
    }

    fn error(&self, msg: impl Into<String>) -> WordError {
        WordError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn sequence(&mut self, nested: bool) -> Result<Vec<(Node, u64)>, WordError> {
        let mut items = Vec::new();
        loop {
            let node = match self.peek() {
                None if nested => return Err(self.error("unclosed '('")),
                None => return Ok(items),
                Some(')') if nested => return Ok(items),
                Some(')') => return Err(self.error("unmatched ')'")),
                Some('(') => {
                    self.idx += 1;
                    let inner = self.sequence(true)?;
                    // sequence(true) only returns on ')'
                    self.idx += 1;
                    Node::Group(inner)
                }
                Some('ε') => {
                    self.idx += 1;
                    Node::Group(Vec::new())
                }
                Some(c) => match Letter::from_char(c) {
                    Some(l) => {
                        self.idx += 1;
                        Node::Letter(l)
                    }
                    None => return Err(self.error(format!("unexpected character {c:?}"))),
                },
            };
            let exp = self.exponent()?;
            items.push((node, exp));
        }
    }

    fn exponent(&mut self) -> Result<u64, WordError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.idx += 1;
        let start = self.idx;
        let mut value: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d)))
                .ok_or(WordError::Overflow { cap: usize::MAX })?;
            self.idx += 1;
        }
        if self.idx == start {
            return Err(self.error("expected a decimal exponent after '^'"));
        }
        if value == 0 {
            self.idx = start;
            return Err(self.error("exponent must be positive"));
        }
        Ok(value)
    }
}

fn length(items: &[(Node, u64)]) -> Option<u128> {
    items.iter().try_fold(0u128, |acc, (node, exp)| {
        let base = match node {
            Node::Letter(_) => 1,
            Node::Group(inner) => length(inner)?,
        };
        acc.checked_add(base.checked_mul(u128::from(*exp))?)
    })
}

fn expand_into(items: &[(Node, u64)], out: &mut Vec<Letter>) {
    for (node, exp) in items {
        for _ in 0..*exp {
            match node {
                Node::Letter(l) => out.push(*l),
                Node::Group(inner) => expand_into(inner, out),
            }
        }
    }
}

/// Parses power notation with the default expansion cap.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    parse_word_with_cap(text, DEFAULT_EXPANSION_CAP)
}

pub fn parse_word_with_cap(text: &str, cap: usize) -> Result<Word, WordError> {
    let items = Parser::new(text).sequence(false)?;
    let len = length(&items).ok_or(WordError::Overflow { cap })?;
    if len > cap as u128 {
        return Err(WordError::Overflow { cap });
    }
    let mut letters = Vec::with_capacity(len as usize);
    expand_into(&items, &mut letters);
    Ok(Word::from_letters(letters))
}
