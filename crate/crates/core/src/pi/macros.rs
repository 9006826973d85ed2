//! Block-level macro engine for pair runs on `(U_k, V_k)`.
//!
//! Every move matches a fixed block shape on the first component, rewrites
//! it, charges the number of single steps the naive engine would take for
//! that rewrite, and left-reduces the pair. Shapes are matched exactly on
//! normalized block words; anything else is a [`PiError::ShapeMismatch`].
//!
//! With `X = ba` the moves are
//!
//! * shift: `X^p aa X^q → aa X^{q+pN²}`, `p(N+1)` steps;
//! * fold: `(X^N (aX^N)^{2q}, a^{2q} Q) → (X^{s(q)}, Q)`, `T(q)` steps;
//! * drain: `b^{2q-1} X^p a^{2q} → b^{2q-3} X^{pN²-N+1} a^{2q-2}`,
//!   `p(N+1)+1` steps;
//!
//! and the three phases of the witness run are built from them.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use super::sequences::{sigma, Sequence, SequenceKit};
use super::{witness, witness_blocks, PiError};
use crate::engine::{pair_run_observed, PairVerdict, RewriteSide};
use crate::presentation::PiPresentation;
use crate::words::{compress, p_reduce_blocks, Block, BlockKind, BlockWord, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MacroMove {
    /// A leading `a` replaced by `baa(ba)^N`.
    LeadingA,
    /// `X^p aa X^q → aa X^{q+pN²}`.
    ShiftXPastAa,
    /// `(X^N (aX^N)^{2q}, a^{2q} Q) → (X^{s(q)}, Q)`.
    FoldXBlocks,
    /// `b^{2q-1} X^p a^{2q} → b^{2q-3} X^{pN²-N+1} a^{2q-2}`.
    DrainBPair,
    /// `(U_k, V_k) → (X^{s(k-1)-1} b^{2k} a^{2k+1}, a)`.
    Opening,
    /// `X^c b^{2k} a^{2k+1} → X^c a X^{s'(k)-1}`.
    Descent,
    /// `(X^p a X^{pN}, a) → (ε, ε)`.
    Collapse,
}

impl MacroMove {
    pub fn name(self) -> &'static str {
        match self {
            MacroMove::LeadingA => "leading_a",
            MacroMove::ShiftXPastAa => "shift_x_past_aa",
            MacroMove::FoldXBlocks => "fold_x_blocks",
            MacroMove::DrainBPair => "drain_b_pair",
            MacroMove::Opening => "opening",
            MacroMove::Descent => "descent",
            MacroMove::Collapse => "collapse",
        }
    }
}

/// One logged move, with a snapshot of the pair after it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogEntry {
    #[serde(rename = "move")]
    pub op: MacroMove,
    #[serde(serialize_with = "serialize_big_vec")]
    pub params: Vec<BigUint>,
    #[serde(serialize_with = "crate::engine::serialize_biguint")]
    pub charged: BigUint,
    #[serde(serialize_with = "crate::engine::serialize_biguint")]
    pub steps_after: BigUint,
    pub left: BlockWord,
    pub right: BlockWord,
}

fn serialize_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        match u64::try_from(n) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&n.to_string())?,
        }
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacroState {
    pub left: BlockWord,
    pub right: BlockWord,
    pub steps: BigUint,
    pub log: Vec<LogEntry>,
}

impl MacroState {
    /// Starts at `(left, right)`, left-reduced, with no steps taken.
    pub fn new(left: BlockWord, right: BlockWord) -> Self {
        let mut st = MacroState {
            left,
            right,
            steps: BigUint::zero(),
            log: Vec::new(),
        };
        st.reduce();
        st
    }

    pub fn from_words(u: &Word, v: &Word) -> Self {
        Self::new(compress(u), compress(v))
    }

    pub fn is_solved(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn expand(&self, cap: usize) -> Option<(Word, Word)> {
        Some((self.left.expand(cap).ok()?, self.right.expand(cap).ok()?))
    }

    fn reduce(&mut self) {
        p_reduce_blocks(&mut self.left, &mut self.right);
    }

    fn charge(&mut self, amount: &BigUint) {
        self.steps += amount;
        self.reduce();
    }

    fn record(&mut self, op: MacroMove, params: Vec<BigUint>, charged: BigUint) {
        self.log.push(LogEntry {
            op,
            params,
            charged,
            steps_after: self.steps.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
        });
    }

    /// Sum of all logged charges; equals `steps` when every move was logged.
    pub fn charged_total(&self) -> BigUint {
        self.log.iter().map(|e| &e.charged).sum()
    }
}

/// Completed witness run.
#[derive(Debug, Clone)]
pub struct MacroRun {
    pub n_param: u64,
    pub k: usize,
    pub state: MacroState,
}

impl MacroRun {
    pub fn steps(&self) -> &BigUint {
        &self.state.steps
    }

    pub fn phase_charges(&self) -> Vec<BigUint> {
        self.state.log.iter().map(|e| e.charged.clone()).collect()
    }
}

fn kind_name(kind: BlockKind) -> &'static str {
    match kind {
        BlockKind::A => "a",
        BlockKind::B => "b",
        BlockKind::X => "(ba)",
    }
}

fn splice(word: &BlockWord, at: usize, count: usize, with: &[(BlockKind, BigUint)]) -> BlockWord {
    let mut out = word.head_until(at);
    for (kind, exp) in with {
        out.push(*kind, exp.clone());
    }
    out.concat(&word.tail_from(at + count))
}

/// Matches blocks by kind and minimum exponent.
struct Shape<'a> {
    op: &'static str,
    word: &'a BlockWord,
}

impl Shape<'_> {
    fn mismatch(&self, expected: impl Into<String>) -> PiError {
        PiError::ShapeMismatch {
            op: self.op,
            expected: expected.into(),
            found: self.word.to_string(),
        }
    }

    fn block(&self, idx: usize, kind: BlockKind) -> Result<&Block, PiError> {
        match self.word.blocks().get(idx) {
            Some(b) if b.kind == kind => Ok(b),
            _ => Err(self.mismatch(format!("a {} block at position {idx}", kind_name(kind)))),
        }
    }

    fn exact(&self, idx: usize, kind: BlockKind, exp: &BigUint) -> Result<(), PiError> {
        let b = self.block(idx, kind)?;
        if &b.exp != exp {
            return Err(self.mismatch(format!("{}^{exp} at position {idx}", kind_name(kind))));
        }
        Ok(())
    }

    fn at_least(&self, idx: usize, kind: BlockKind, exp: &BigUint) -> Result<BigUint, PiError> {
        let b = self.block(idx, kind)?;
        if &b.exp < exp {
            return Err(self.mismatch(format!(
                "{}^e with e >= {exp} at position {idx}",
                kind_name(kind)
            )));
        }
        Ok(b.exp.clone())
    }
}

/// Macro moves for a fixed `N`.
#[derive(Debug, Clone)]
pub struct MacroEngine {
    n_param: u64,
    big_n: BigUint,
}

impl MacroEngine {
    pub fn new(n_param: u64) -> Result<Self, PiError> {
        if n_param < 2 {
            return Err(PiError::InvalidN(n_param));
        }
        Ok(MacroEngine {
            n_param,
            big_n: BigUint::from(n_param),
        })
    }

    pub fn n_param(&self) -> u64 {
        self.n_param
    }

    fn n_squared(&self) -> BigUint {
        &self.big_n * &self.big_n
    }

    /// `X^p aa X^q ↦ aa X^{q+pN²}` on the first component, starting at
    /// block `at`. For `q > 0` the block after `aa` may be longer than
    /// `X^q`; the excess is part of the suffix.
    fn shift_raw(&self, st: &mut MacroState, at: usize, p: &BigUint, q: &BigUint) -> Result<BigUint, PiError> {
        let shape = Shape {
            op: MacroMove::ShiftXPastAa.name(),
            word: &st.left,
        };
        let two = BigUint::from(2u32);
        if p.is_zero() {
            let e = shape.at_least(at, BlockKind::A, &two)?;
            if !q.is_zero() {
                if e != two {
                    return Err(shape.mismatch("aa followed by (ba)^q"));
                }
                shape.at_least(at + 1, BlockKind::X, q)?;
            }
            return Ok(BigUint::zero());
        }
        shape.exact(at, BlockKind::X, p)?;
        let e = shape.at_least(at + 1, BlockKind::A, &two)?;
        if !q.is_zero() {
            if e != two {
                return Err(shape.mismatch("aa followed by (ba)^q"));
            }
            shape.at_least(at + 2, BlockKind::X, q)?;
        }
        let grown = p * self.n_squared();
        st.left = splice(
            &st.left,
            at,
            2,
            &[(BlockKind::A, two.clone()), (BlockKind::X, grown), (BlockKind::A, e - two)],
        );
        let charge = p * (&self.big_n + 1u32);
        st.charge(&charge);
        Ok(charge)
    }

    /// A single relator occurrence `b·aa·(ba)^N` or `(ba)·a·(ba)^N` whose
    /// first letter ends block `at`, replaced by `a`.
    fn contract_raw(&self, st: &mut MacroState, at: usize) -> Result<(), PiError> {
        let shape = Shape {
            op: "contract",
            word: &st.left,
        };
        let one = BigUint::one();
        let lead = st.left.blocks().get(at).map(|b| b.kind);
        let a_len = match lead {
            Some(BlockKind::B) => BigUint::from(2u32),
            Some(BlockKind::X) => one.clone(),
            _ => return Err(shape.mismatch(format!("a b or (ba) block at position {at}"))),
        };
        let lead_exp = shape.at_least(at, lead.expect("matched above"), &one)?;
        shape.exact(at + 1, BlockKind::A, &a_len)?;
        let f = shape.at_least(at + 2, BlockKind::X, &self.big_n)?;
        st.left = splice(
            &st.left,
            at,
            3,
            &[
                (lead.expect("matched above"), lead_exp - &one),
                (BlockKind::A, one.clone()),
                (BlockKind::X, f - &self.big_n),
            ],
        );
        st.charge(&one);
        Ok(())
    }

    fn leading_a_raw(&self, st: &mut MacroState) -> Result<(), PiError> {
        let shape = Shape {
            op: MacroMove::LeadingA.name(),
            word: &st.left,
        };
        let e = shape.at_least(0, BlockKind::A, &BigUint::one())?;
        st.left = splice(
            &st.left,
            0,
            1,
            &[
                (BlockKind::X, BigUint::one()),
                (BlockKind::A, BigUint::one()),
                (BlockKind::X, self.big_n.clone()),
                (BlockKind::A, e - 1u32),
            ],
        );
        st.charge(&BigUint::one());
        Ok(())
    }

    fn fold_raw(&self, st: &mut MacroState, q: usize) -> Result<BigUint, PiError> {
        let op = MacroMove::FoldXBlocks.name();
        let shape = Shape { op, word: &st.left };
        let one = BigUint::one();
        for i in 0..=2 * q {
            let last = i == 2 * q;
            if last {
                shape.at_least(2 * i, BlockKind::X, &self.big_n)?;
            } else {
                shape.exact(2 * i, BlockKind::X, &self.big_n)?;
                shape.exact(2 * i + 1, BlockKind::A, &one)?;
            }
        }
        Shape { op, word: &st.right }.at_least(0, BlockKind::A, &BigUint::from(2 * q))?;

        let start = st.steps.clone();
        let mut c = self.big_n.clone();
        for _ in 0..q {
            self.contract_raw(st, 0)?;
            let p = &c - 1u32;
            self.shift_raw(st, 0, &p, &self.big_n)?;
            c = &self.big_n + p * self.n_squared();
        }
        Ok(&st.steps - start)
    }

    fn drain_raw(&self, st: &mut MacroState, at: usize, p: &BigUint, q: usize) -> Result<BigUint, PiError> {
        let shape = Shape {
            op: MacroMove::DrainBPair.name(),
            word: &st.left,
        };
        if q < 2 || p.is_zero() {
            return Err(shape.mismatch(format!("p >= 1 and q >= 2, got p = {p}, q = {q}")));
        }
        shape.exact(at, BlockKind::B, &BigUint::from(2 * q - 1))?;
        shape.exact(at + 1, BlockKind::X, p)?;
        shape.at_least(at + 2, BlockKind::A, &BigUint::from(2 * q))?;
        let start = st.steps.clone();
        self.shift_raw(st, at + 1, p, &BigUint::zero())?;
        self.contract_raw(st, at)?;
        if !st.left.carve_x(at) {
            return Err(Shape {
                op: MacroMove::DrainBPair.name(),
                word: &st.left,
            }
            .mismatch(format!("b^j a^i at position {at}")));
        }
        Ok(&st.steps - start)
    }

    /// Shifts `X^p aa X^q` starting at block `at` of the first component.
    pub fn shift_x_past_aa(
        &self,
        st: &mut MacroState,
        at: usize,
        p: impl Into<BigUint>,
        q: impl Into<BigUint>,
    ) -> Result<(), PiError> {
        let (p, q) = (p.into(), q.into());
        let charged = self.shift_raw(st, at, &p, &q)?;
        st.record(MacroMove::ShiftXPastAa, vec![p, q], charged);
        Ok(())
    }

    /// Folds `X^N (aX^N)^{2q}` at the front of the first component against
    /// `a^{2q}` at the front of the second. The pair is left-reduced after
    /// the fold, as the algorithm would.
    pub fn fold_x_blocks(&self, st: &mut MacroState, q: usize) -> Result<(), PiError> {
        let charged = self.fold_raw(st, q)?;
        st.record(MacroMove::FoldXBlocks, vec![BigUint::from(q)], charged);
        Ok(())
    }

    /// Drains `b^{2q-1} X^p a^{2q}` starting at block `at`.
    pub fn drain_b_pair(
        &self,
        st: &mut MacroState,
        at: usize,
        p: impl Into<BigUint>,
        q: usize,
    ) -> Result<(), PiError> {
        let p = p.into();
        let charged = self.drain_raw(st, at, &p, q)?;
        st.record(MacroMove::DrainBPair, vec![p, BigUint::from(q)], charged);
        Ok(())
    }

    /// From `(U_k, V_k)` to `(X^{s(k-1)-1} b^{2k} a^{2k+1}, a)`.
    pub fn opening(&self, st: &mut MacroState, k: usize) -> Result<(), PiError> {
        let start = st.steps.clone();
        for _ in 0..2 * k - 1 {
            self.leading_a_raw(st)?;
        }
        if k > 1 {
            self.fold_raw(st, k - 1)?;
        }
        let charged = &st.steps - start;
        st.record(MacroMove::Opening, vec![BigUint::from(k)], charged);
        Ok(())
    }

    /// From `X^c b^{2k} a^{2k+1}` to `X^c a X^{s'(k)-1}`.
    pub fn descent(&self, st: &mut MacroState, k: usize) -> Result<(), PiError> {
        let start = st.steps.clone();
        let at = 1;
        let shape = Shape {
            op: MacroMove::Descent.name(),
            word: &st.left,
        };
        shape.block(0, BlockKind::X)?;
        shape.exact(at, BlockKind::B, &BigUint::from(2 * k))?;
        shape.exact(at + 1, BlockKind::A, &BigUint::from(2 * k + 1))?;
        if st.left.blocks().len() != at + 2 {
            return Err(shape.mismatch("nothing after the a block"));
        }
        st.left.carve_x(at);
        let mut p = BigUint::one();
        for q in (2..=k).rev() {
            self.drain_raw(st, at, &p, q)?;
            p = &p * self.n_squared() + 1u32 - &self.big_n;
        }
        self.shift_raw(st, at + 1, &p, &BigUint::zero())?;
        self.contract_raw(st, at)?;
        let charged = &st.steps - start;
        st.record(MacroMove::Descent, vec![BigUint::from(k)], charged);
        Ok(())
    }

    /// `(X^p a X^{pN}, a)` to `(ε, ε)` in `p` steps.
    pub fn collapse(&self, st: &mut MacroState) -> Result<(), PiError> {
        let op = MacroMove::Collapse.name();
        let shape = Shape { op, word: &st.left };
        let p = shape.block(0, BlockKind::X)?.exp.clone();
        shape.exact(1, BlockKind::A, &BigUint::one())?;
        shape.exact(2, BlockKind::X, &(&p * &self.big_n))?;
        if st.left.blocks().len() != 3 {
            return Err(shape.mismatch("(ba)^p a (ba)^{pN} and nothing else"));
        }
        let right = Shape { op, word: &st.right };
        right.exact(0, BlockKind::A, &BigUint::one())?;
        if st.right.blocks().len() != 1 {
            return Err(right.mismatch("a single a"));
        }
        st.left = BlockWord::new();
        st.right = BlockWord::new();
        st.steps += &p;
        st.record(MacroMove::Collapse, vec![p.clone()], p);
        Ok(())
    }

    /// Runs the three phases on `(U_k, V_k)` and checks each charge and the
    /// total against the sequences.
    pub fn run_witness(&self, k: usize) -> Result<MacroRun, PiError> {
        if k < 1 {
            return Err(PiError::InvalidK(k));
        }
        let (u, v) = witness_blocks(k);
        let mut st = MacroState::new(u, v);
        self.opening(&mut st, k)?;
        self.descent(&mut st, k)?;
        self.collapse(&mut st)?;

        let mut kit = SequenceKit::new(self.n_param)?;
        let expected = kit.phase_charges(k)?;
        for (entry, want) in st.log.iter().zip(&expected) {
            if &entry.charged != want {
                return Err(PiError::InternalMismatch {
                    what: format!("{} charge for N = {}, k = {k}", entry.op.name(), self.n_param),
                    expected: want.to_string(),
                    found: entry.charged.to_string(),
                });
            }
        }
        let exponent = kit.recurrence(Sequence::FoldExponent, k - 1) - 1u32;
        let after_opening = &st.log[0].left;
        if after_opening.blocks().first().map(|b| &b.exp) != Some(&exponent) {
            return Err(PiError::InternalMismatch {
                what: "exponent after the opening phase".into(),
                expected: exponent.to_string(),
                found: after_opening.to_string(),
            });
        }
        let total = sigma(self.n_param, k)?;
        if st.steps != total || !st.is_solved() || st.charged_total() != st.steps {
            return Err(PiError::InternalMismatch {
                what: format!("total steps for N = {}, k = {k}", self.n_param),
                expected: total.to_string(),
                found: st.steps.to_string(),
            });
        }
        Ok(MacroRun {
            n_param: self.n_param,
            k,
            state: st,
        })
    }
}

/// Replays `(U_k, V_k)` on the naive engine and compares the expanded
/// phase snapshots of the macro run with the naive states at the same step
/// indices. Returns the number of snapshots compared.
pub fn cross_validate(n_param: u64, k: usize) -> Result<usize, PiError> {
    let run = MacroEngine::new(n_param)?.run_witness(k)?;
    let pi = PiPresentation::new(n_param as usize).map_err(|_| PiError::InvalidN(n_param))?;
    let pair = witness(k)?;
    let cap = crate::words::DEFAULT_EXPANSION_CAP;
    let mut wanted: Vec<(BigUint, Word, Word)> = Vec::new();
    for e in &run.state.log {
        let (l, r) = (e.left.expand(cap), e.right.expand(cap));
        let (Ok(l), Ok(r)) = (l, r) else {
            return Err(PiError::InternalMismatch {
                what: "snapshot expansion".into(),
                expected: format!("at most {cap} letters"),
                found: e.left.len().to_string(),
            });
        };
        wanted.push((e.steps_after.clone(), l, r));
    }
    let mut seen = Vec::new();
    let verdict = pair_run_observed(
        pi.presentation(),
        &pair.u,
        &pair.v,
        &(run.steps() + 1u32),
        RewriteSide::First,
        |s| {
            if wanted.iter().any(|(at, _, _)| at == &s.steps) {
                seen.push((s.steps.clone(), s.u.clone(), s.v.clone()));
            }
        },
    );
    if verdict != PairVerdict::Equal(run.steps().clone()) {
        return Err(PiError::InternalMismatch {
            what: format!("naive run for N = {n_param}, k = {k}"),
            expected: format!("Equal({})", run.steps()),
            found: verdict.to_string(),
        });
    }
    for (at, l, r) in &wanted {
        let naive = seen.iter().find(|(s, _, _)| s == at);
        match naive {
            Some((_, nl, nr)) if nl == l && nr == r => {}
            other => {
                return Err(PiError::InternalMismatch {
                    what: format!("snapshot at step {at}"),
                    expected: format!("({l}, {r})"),
                    found: other.map_or("nothing".into(), |(_, a, b)| format!("({a}, {b})")),
                })
            }
        }
    }
    Ok(wanted.len())
}
