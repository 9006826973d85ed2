use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{Letter, Word, WordError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// `a^i`
    A,
    /// `b^j`
    B,
    /// `(ba)^p`
    X,
}

impl BlockKind {
    pub fn first_letter(self) -> Letter {
        match self {
            BlockKind::A => Letter::A,
            BlockKind::B | BlockKind::X => Letter::B,
        }
    }

    fn letters_per_unit(self) -> u32 {
        match self {
            BlockKind::A | BlockKind::B => 1,
            BlockKind::X => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    pub exp: BigUint,
}

impl Block {
    pub fn new(kind: BlockKind, exp: impl Into<BigUint>) -> Self {
        Block {
            kind,
            exp: exp.into(),
        }
    }
}

/// A word stored as a sequence of `a^i`, `b^j` and `(ba)^p` blocks.
///
/// Construction always normalizes: zero exponents are dropped and adjacent
/// blocks of the same kind merge. A `b` block followed by an `a` block is
/// *not* folded into an `(ba)` block implicitly; [`BlockWord::carve_x`] does
/// that re-blocking when asked to.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BlockWord {
    blocks: Vec<Block>,
}

impl BlockWord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks<I, E>(blocks: I) -> Self
    where
        I: IntoIterator<Item = (BlockKind, E)>,
        E: Into<BigUint>,
    {
        let mut bw = BlockWord::new();
        for (kind, exp) in blocks {
            bw.push(kind, exp);
        }
        bw
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Appends a block, merging with the last one when the kinds agree.
    pub fn push(&mut self, kind: BlockKind, exp: impl Into<BigUint>) {
        let exp = exp.into();
        if exp.is_zero() {
            return;
        }
        match self.blocks.last_mut() {
            Some(last) if last.kind == kind => last.exp += exp,
            _ => self.blocks.push(Block { kind, exp }),
        }
    }

    pub fn concat(&self, other: &BlockWord) -> BlockWord {
        let mut out = self.clone();
        for b in &other.blocks {
            out.push(b.kind, b.exp.clone());
        }
        out
    }

    /// The blocks from index `idx` on, as a word of their own.
    pub fn tail_from(&self, idx: usize) -> BlockWord {
        BlockWord::from_blocks(self.blocks[idx..].iter().map(|b| (b.kind, b.exp.clone())))
    }

    pub fn head_until(&self, idx: usize) -> BlockWord {
        BlockWord::from_blocks(self.blocks[..idx].iter().map(|b| (b.kind, b.exp.clone())))
    }

    /// Number of letters in the expansion.
    pub fn len(&self) -> BigUint {
        self.blocks
            .iter()
            .map(|b| &b.exp * b.kind.letters_per_unit())
            .sum()
    }

    pub fn first_letter(&self) -> Option<Letter> {
        self.blocks.first().map(|b| b.kind.first_letter())
    }

    pub fn is_normalized(&self) -> bool {
        self.blocks.iter().all(|b| !b.exp.is_zero())
            && self.blocks.windows(2).all(|p| p[0].kind != p[1].kind)
    }

    /// Expands to a plain word, failing if the result would exceed `cap`.
    pub fn expand(&self, cap: usize) -> Result<Word, WordError> {
        let len = self
            .len()
            .to_usize()
            .filter(|&n| n <= cap)
            .ok_or(WordError::Overflow { cap })?;
        let mut letters = Vec::with_capacity(len);
        for b in &self.blocks {
            // fits: bounded by len above
            let n = b.exp.to_usize().expect("exponent bounded by total length");
            match b.kind {
                BlockKind::A => letters.extend(std::iter::repeat_n(Letter::A, n)),
                BlockKind::B => letters.extend(std::iter::repeat_n(Letter::B, n)),
                BlockKind::X => {
                    for _ in 0..n {
                        letters.push(Letter::B);
                        letters.push(Letter::A);
                    }
                }
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// Removes and returns the first letter, keeping the representation
    /// normalized. Peeling `b` off `(ba)^p` leaves `a·(ba)^{p-1}`.
    pub fn peel_front(&mut self) -> Option<Letter> {
        let first = self.blocks.first()?.clone();
        let letter = first.kind.first_letter();
        let rest = self.blocks.split_off(1);
        let mut out = BlockWord::new();
        let one = BigUint::one();
        match first.kind {
            BlockKind::A | BlockKind::B => out.push(first.kind, first.exp - &one),
            BlockKind::X => {
                out.push(BlockKind::A, 1u32);
                out.push(BlockKind::X, first.exp - &one);
            }
        }
        for b in rest {
            out.push(b.kind, b.exp);
        }
        *self = out;
        Some(letter)
    }

    /// Re-blocks `b^j · a^i` (blocks `idx`, `idx + 1`) as
    /// `b^{j-1} · (ba) · a^{i-1}`. The expanded word is unchanged.
    ///
    /// Returns `false` and leaves `self` untouched if blocks `idx` and
    /// `idx + 1` are not a `b` block followed by an `a` block.
    pub fn carve_x(&mut self, idx: usize) -> bool {
        match (self.blocks.get(idx), self.blocks.get(idx + 1)) {
            (Some(b), Some(a)) if b.kind == BlockKind::B && a.kind == BlockKind::A => {}
            _ => return false,
        }
        let one = BigUint::one();
        let mut out = BlockWord::new();
        for (i, blk) in self.blocks.iter().enumerate() {
            if i == idx {
                out.push(BlockKind::B, &blk.exp - &one);
                out.push(BlockKind::X, 1u32);
            } else if i == idx + 1 {
                out.push(BlockKind::A, &blk.exp - &one);
            } else {
                out.push(blk.kind, blk.exp.clone());
            }
        }
        *self = out;
        true
    }

    fn drop_front(&mut self, count: &BigUint) {
        let first = &mut self.blocks[0];
        first.exp -= count;
        if first.exp.is_zero() {
            self.blocks.remove(0);
        }
    }
}

/// Removes the longest common prefix of two block words, in place.
///
/// Same-kind front blocks are cancelled in bulk, so exponents may be
/// astronomically large; mixed fronts are compared letter by letter.
pub fn p_reduce_blocks(u: &mut BlockWord, v: &mut BlockWord) {
    loop {
        let (Some(bu), Some(bv)) = (u.blocks.first(), v.blocks.first()) else {
            return;
        };
        if bu.kind == bv.kind {
            let m = (&bu.exp).min(&bv.exp).clone();
            u.drop_front(&m);
            v.drop_front(&m);
            continue;
        }
        if bu.kind.first_letter() != bv.kind.first_letter() {
            return;
        }
        u.peel_front();
        v.peel_front();
    }
}

/// Greedy block compression.
///
/// Scanning left to right: a lone `b` followed by `a` starts a maximal
/// `(ba)^p` run; any other `b` run or `a` run becomes a letter block. So
/// `babababa` is `(ba)^4` while `bbaaa` is `b^2·a^3`.
pub fn compress(word: &Word) -> BlockWord {
    let letters = word.letters();
    let n = letters.len();
    let run_len = |start: usize| {
        letters[start..]
            .iter()
            .take_while(|&&l| l == letters[start])
            .count()
    };
    let mut out = BlockWord::new();
    let mut i = 0;
    while i < n {
        let run = run_len(i);
        if letters[i] == Letter::B && run == 1 && i + 1 < n {
            let mut p = 0usize;
            while i + 1 < n && letters[i] == Letter::B && letters[i + 1] == Letter::A {
                p += 1;
                i += 2;
            }
            out.push(BlockKind::X, p);
        } else {
            let kind = match letters[i] {
                Letter::A => BlockKind::A,
                Letter::B => BlockKind::B,
            };
            out.push(kind, run);
            i += run;
        }
    }
    out
}

impl fmt::Display for BlockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("ε");
        }
        for b in &self.blocks {
            let base = match b.kind {
                BlockKind::A => "a",
                BlockKind::B => "b",
                BlockKind::X => "(ba)",
            };
            if b.exp.is_one() {
                f.write_str(if b.kind == BlockKind::X { "ba" } else { base })?;
            } else {
                write!(f, "{base}^{}", b.exp)?;
            }
        }
        Ok(())
    }
}

impl Serialize for BlockWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
