//! Step-by-step records of engine runs.
//!
//! Text lines are `<step>: <factors joined by " | "> [<head>] <tail>` for a
//! single word and `<step>: (<u>, <v>)` for pairs. Each record also has a
//! JSON form with the fields `step`, `word` or `pair`, `factors`, `head`
//! and `tail`.

use num_bigint::BigUint;
use serde::Serialize;

use super::decompose::{decompose, PrefixDecomposition};
use super::run::{divisibility_loop, pair_run_observed, serialize_biguint, PairVerdict, RewriteSide, RunVerdict};
use crate::presentation::Presentation;
use crate::words::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    #[serde(serialize_with = "serialize_biguint")]
    pub step: BigUint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(Word, Word)>,
    pub factors: Vec<Word>,
    pub head: Option<Word>,
    pub tail: Word,
    #[serde(skip)]
    line: String,
}

impl TraceRecord {
    fn for_word(pres: &Presentation, step: &BigUint, word: &Word, d: &PrefixDecomposition, compact: bool) -> Self {
        TraceRecord {
            step: step.clone(),
            word: Some(word.clone()),
            pair: None,
            factors: d.factors.clone(),
            head: d.head.map(|s| pres.side(s).clone()),
            tail: d.tail.clone(),
            line: format!("{step}: {}", d.render(pres, compact)),
        }
    }

    fn for_pair(pres: &Presentation, step: &BigUint, u: &Word, v: &Word) -> Self {
        let d = decompose(pres, u);
        TraceRecord {
            step: step.clone(),
            word: None,
            pair: Some((u.clone(), v.clone())),
            factors: d.factors,
            head: d.head.map(|s| pres.side(s).clone()),
            tail: d.tail,
            line: format!("{step}: ({}, {})", u.display_or_epsilon(), v.display_or_epsilon()),
        }
    }

    /// The plain-text trace line.
    pub fn line(&self) -> &str {
        &self.line
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace records serialize")
    }
}

#[derive(Debug, Clone)]
pub struct WordTrace {
    /// One record per decomposition the algorithm inspects.
    pub records: Vec<TraceRecord>,
    pub verdict: RunVerdict,
}

#[derive(Debug, Clone)]
pub struct PairTrace {
    /// One record per state, from the reduced input to the final state.
    pub records: Vec<TraceRecord>,
    pub verdict: PairVerdict,
}

fn render_lines(records: &[TraceRecord]) -> String {
    records.iter().map(|r| format!("{}\n", r.line)).collect()
}

fn render_jsonl(records: &[TraceRecord]) -> String {
    records.iter().map(|r| format!("{}\n", r.to_json())).collect()
}

impl WordTrace {
    pub fn to_text(&self) -> String {
        render_lines(&self.records)
    }

    pub fn to_jsonl(&self) -> String {
        render_jsonl(&self.records)
    }
}

impl PairTrace {
    pub fn to_text(&self) -> String {
        render_lines(&self.records)
    }

    pub fn to_jsonl(&self) -> String {
        render_jsonl(&self.records)
    }
}

/// Traces the divisibility run on `word` by the letter it does not start
/// with. The empty word produces no records.
pub fn trace_word(pres: &Presentation, word: &Word, fuel: impl Into<BigUint>, compact: bool) -> WordTrace {
    let x = word.first().map_or(Letter::A, Letter::other);
    let mut records = Vec::new();
    let mut obs = |step: &BigUint, w: &Word, d: &PrefixDecomposition| {
        records.push(TraceRecord::for_word(pres, step, w, d, compact));
    };
    let verdict = divisibility_loop(pres, word, x, &fuel.into(), Some(&mut obs));
    WordTrace { records, verdict }
}

pub fn trace_pair(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    fuel: impl Into<BigUint>,
    side: RewriteSide,
) -> PairTrace {
    let mut records = Vec::new();
    let verdict = pair_run_observed(pres, u, v, &fuel.into(), side, |s| {
        records.push(TraceRecord::for_pair(pres, &s.steps, &s.u, &s.v));
    });
    PairTrace { records, verdict }
}
