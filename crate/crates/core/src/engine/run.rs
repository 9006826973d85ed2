use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::decompose::{decompose, find_head, PrefixDecomposition};
use super::EngineError;
use crate::presentation::Presentation;
use crate::words::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Yes,
    No,
    OutOfFuel,
}

/// Result of a left-divisibility run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunVerdict {
    pub outcome: Outcome,
    pub steps_used: BigUint,
    /// The last word reached; for `OutOfFuel` this is where to resume.
    pub final_word: Word,
}

impl fmt::Display for RunVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} after {} steps: {}",
            self.outcome,
            self.steps_used,
            self.final_word.display_or_epsilon()
        )
    }
}

pub(crate) type DecompositionObserver<'a> = &'a mut dyn FnMut(&BigUint, &Word, &PrefixDecomposition);

/// Decides whether `word` is left divisible by `x`, spending at most `fuel`
/// head replacements.
pub fn run_divisibility(
    pres: &Presentation,
    word: &Word,
    x: Letter,
    fuel: impl Into<BigUint>,
) -> RunVerdict {
    divisibility_loop(pres, word, x, &fuel.into(), None)
}

pub(crate) fn divisibility_loop(
    pres: &Presentation,
    word: &Word,
    x: Letter,
    fuel: &BigUint,
    mut observe: Option<DecompositionObserver<'_>>,
) -> RunVerdict {
    let mut current = word.clone();
    let mut steps = BigUint::zero();
    loop {
        let verdict = |outcome, steps, final_word| RunVerdict {
            outcome,
            steps_used: steps,
            final_word,
        };
        if current.first() == Some(x) {
            return verdict(Outcome::Yes, steps, current);
        }
        if &steps >= fuel {
            return verdict(Outcome::OutOfFuel, steps, current);
        }
        let head = match observe.as_mut() {
            Some(obs) => {
                if current.is_empty() {
                    None
                } else {
                    let d = decompose(pres, &current);
                    obs(&steps, &current, &d);
                    d.head_position().zip(d.head)
                }
            }
            None => find_head(pres, &current),
        };
        let Some((pos, side)) = head else {
            return verdict(Outcome::No, steps, current);
        };
        current = current.splice(pos, pres.side(side).len(), pres.side(side.other()));
        steps += 1u32;
    }
}

/// Removes the longest common prefix of `u` and `v`.
pub fn p_reduce(u: &Word, v: &Word) -> (Word, Word) {
    let k = u.common_prefix_len(v);
    (u.suffix(k), v.suffix(k))
}

/// A left-reduced pair together with the number of steps taken to reach it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PairState {
    pub u: Word,
    pub v: Word,
    #[serde(serialize_with = "serialize_biguint")]
    pub steps: BigUint,
}

pub(crate) fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u64::try_from(n) {
        Ok(small) => s.serialize_u64(small),
        Err(_) => s.serialize_str(&n.to_string()),
    }
}

impl PairState {
    /// Starts a run at `(u, v)` reduced, with a zero step count.
    pub fn new(u: &Word, v: &Word) -> Self {
        let (u, v) = p_reduce(u, v);
        PairState {
            u,
            v,
            steps: BigUint::zero(),
        }
    }

    pub fn is_solved(&self) -> bool {
        self.u.is_empty() && self.v.is_empty()
    }
}

impl fmt::Display for PairState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.u.display_or_epsilon(),
            self.v.display_or_epsilon()
        )
    }
}

/// Which component the pair algorithm rewrites. The algorithm proper
/// rewrites the first; `Second` is a diagnostic mirror.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RewriteSide {
    #[default]
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairVerdict {
    /// Reached `(ε, ε)` in exactly this many steps; this is the Dehn
    /// distance of the input pair.
    Equal(BigUint),
    /// A headless decomposition or a lone empty component; the words are
    /// different in the monoid.
    NotEqual(PairState),
    OutOfFuel(PairState),
}

impl PairVerdict {
    pub fn distance(&self) -> Option<&BigUint> {
        match self {
            PairVerdict::Equal(k) => Some(k),
            _ => None,
        }
    }

    pub fn is_equal(&self) -> bool {
        matches!(self, PairVerdict::Equal(_))
    }
}

impl fmt::Display for PairVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairVerdict::Equal(k) => write!(f, "Equal({k})"),
            PairVerdict::NotEqual(_) => write!(f, "NotEqual"),
            PairVerdict::OutOfFuel(s) => write!(f, "OutOfFuel({} steps, {s})", s.steps),
        }
    }
}

/// One step on the first component, then left reduction.
pub fn pair_step(pres: &Presentation, state: &PairState) -> Result<PairState, EngineError> {
    pair_step_on(pres, state, RewriteSide::First)
}

fn pair_step_on(
    pres: &Presentation,
    state: &PairState,
    side: RewriteSide,
) -> Result<PairState, EngineError> {
    if state.u.is_empty() || state.v.is_empty() {
        return Err(EngineError::EmptyComponent);
    }
    let (target, other) = match side {
        RewriteSide::First => (&state.u, &state.v),
        RewriteSide::Second => (&state.v, &state.u),
    };
    let rewritten = super::step(pres, target).ok_or_else(|| EngineError::NotEqualEvidence {
        u: state.u.clone(),
        v: state.v.clone(),
    })?;
    let (t, o) = p_reduce(&rewritten, other);
    let (u, v) = match side {
        RewriteSide::First => (t, o),
        RewriteSide::Second => (o, t),
    };
    Ok(PairState {
        u,
        v,
        steps: &state.steps + 1u32,
    })
}

/// Runs the pair algorithm on `(u, v)` with at most `fuel` steps.
pub fn pair_run(pres: &Presentation, u: &Word, v: &Word, fuel: impl Into<BigUint>) -> PairVerdict {
    pair_run_observed(pres, u, v, &fuel.into(), RewriteSide::First, |_| {})
}

pub fn pair_run_oriented(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    fuel: impl Into<BigUint>,
    side: RewriteSide,
) -> PairVerdict {
    pair_run_observed(pres, u, v, &fuel.into(), side, |_| {})
}

/// Like [`pair_run`], calling `observe` on every state reached, starting
/// with the reduced input and ending with the final state.
pub fn pair_run_observed(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    fuel: &BigUint,
    side: RewriteSide,
    mut observe: impl FnMut(&PairState),
) -> PairVerdict {
    let mut state = PairState::new(u, v);
    loop {
        observe(&state);
        match (state.u.is_empty(), state.v.is_empty()) {
            (true, true) => return PairVerdict::Equal(state.steps),
            (true, false) | (false, true) => return PairVerdict::NotEqual(state),
            (false, false) => {}
        }
        if &state.steps >= fuel {
            return PairVerdict::OutOfFuel(state);
        }
        state = match pair_step_on(pres, &state, side) {
            Ok(next) => next,
            Err(_) => return PairVerdict::NotEqual(state),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::PiPresentation;
    use crate::words::w;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn m0_divisibility_reaches_headless_word() {
        let v = run_divisibility(&Presentation::m0(), &w("bbbbabbaabbab"), Letter::A, 10u32);
        assert_eq!(v.outcome, Outcome::No);
        assert_eq!(v.steps_used, big(2));
        assert_eq!(v.final_word, w("bbabbab"));
    }

    #[test]
    fn m0_divergence_from_ba() {
        let v = run_divisibility(&Presentation::m0(), &w("ba"), Letter::A, 5u32);
        assert_eq!(v.outcome, Outcome::OutOfFuel);
        assert_eq!(v.final_word, w("b^11a^6"));
        for i in 1..=20usize {
            let v = run_divisibility(&Presentation::m0(), &w("ba"), Letter::A, i);
            let expected = Word::power(Letter::B, 2 * i + 1).concat(&Word::power(Letter::A, i + 1));
            assert_eq!(v.final_word, expected, "i = {i}");
        }
    }

    #[test]
    fn already_divisible() {
        let v = run_divisibility(&Presentation::m0(), &w("abba"), Letter::A, 0u32);
        assert_eq!(v.outcome, Outcome::Yes);
        assert!(v.steps_used.is_zero());
    }

    #[test]
    fn empty_word_is_not_divisible() {
        let v = run_divisibility(&Presentation::m0(), &Word::empty(), Letter::A, 3u32);
        assert_eq!(v.outcome, Outcome::No);
    }

    #[test]
    fn pair_step_on_first_witness() {
        let pi = PiPresentation::new(2).unwrap();
        let s = PairState::new(&w("abbaaa"), &w("baabaa"));
        let next = pair_step(pi.presentation(), &s).unwrap();
        assert_eq!((next.u, next.v, next.steps), (w("babbaaa"), w("a"), big(1)));
    }

    #[test]
    fn pair_step_reports_headless_words() {
        let s = PairState::new(&w("bbabbabb"), &w("a"));
        assert_eq!(
            pair_step(&Presentation::m0(), &s),
            Err(EngineError::NotEqualEvidence {
                u: w("bbabbabb"),
                v: w("a")
            })
        );
        let e = PairState::new(&w("a"), &w("a"));
        assert_eq!(pair_step(&Presentation::m0(), &e), Err(EngineError::EmptyComponent));
    }

    #[test]
    fn pair_runs_on_witnesses() {
        let pi = PiPresentation::new(2).unwrap();
        let p = pi.presentation();
        assert_eq!(
            pair_run(p, &w("abbaaa"), &w("baabaa"), 100u32),
            PairVerdict::Equal(big(6))
        );
        assert_eq!(
            pair_run(p, &w("ab^8a^8a"), &w("b^7a^8baa"), 1000u32),
            PairVerdict::Equal(big(354))
        );
        assert_eq!(pair_run(p, &w("abba"), &w("abba"), 0u32), PairVerdict::Equal(big(0)));
    }

    #[test]
    fn pair_run_out_of_fuel_and_unequal() {
        let pi = PiPresentation::new(2).unwrap();
        let p = pi.presentation();
        match pair_run(p, &w("abbaaa"), &w("baabaa"), 3u32) {
            PairVerdict::OutOfFuel(s) => assert_eq!(s.steps, big(3)),
            other => panic!("unexpected {other}"),
        }
        assert!(matches!(
            pair_run(&Presentation::m0(), &w("bbabbabb"), &w("a"), 10u32),
            PairVerdict::NotEqual(_)
        ));
        assert!(matches!(
            pair_run(p, &w("ab"), &w("a"), 10u32),
            PairVerdict::NotEqual(_)
        ));
    }

    #[test]
    fn second_component_mirror_agrees_on_witness() {
        let pi = PiPresentation::new(2).unwrap();
        let v = pair_run_oriented(
            pi.presentation(),
            &w("baabaa"),
            &w("abbaaa"),
            100u32,
            RewriteSide::Second,
        );
        assert_eq!(v, PairVerdict::Equal(big(6)));
    }
}
