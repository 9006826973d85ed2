//! Brute-force ground truth that does not use Adian's algorithm for its
//! answers: exact shortest chains of elementary transformations by
//! bidirectional breadth-first search, and small-`n` Dehn function samples.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::engine::{pair_run, PairVerdict};
use crate::presentation::{Presentation, Side};
use crate::words::Word;

/// Default limit on the number of distinct words a search may visit.
pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search visited more than {budget} words")]
    SearchBoundExceeded { budget: usize },
    #[error("oracle distance {oracle:?} disagrees with engine distance {engine} for ({u}, {v})")]
    Mismatch {
        u: Word,
        v: Word,
        engine: BigUint,
        oracle: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    LhsToRhs,
    RhsToLhs,
}

/// Replacing one occurrence of a side, at `position`, by the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ElementaryMove {
    pub position: usize,
    pub direction: Direction,
}

impl ElementaryMove {
    fn sides(self) -> (Side, Side) {
        match self.direction {
            Direction::LhsToRhs => (Side::Lhs, Side::Rhs),
            Direction::RhsToLhs => (Side::Rhs, Side::Lhs),
        }
    }
}

/// Applies `mv`, or `None` if the side it rewrites does not occur there.
pub fn apply_move(pres: &Presentation, word: &Word, mv: ElementaryMove) -> Option<Word> {
    let (from, to) = mv.sides();
    let from = pres.side(from);
    let letters = word.letters();
    let end = mv.position.checked_add(from.len())?;
    if end > letters.len() || &letters[mv.position..end] != from.letters() {
        return None;
    }
    Some(word.splice(mv.position, from.len(), pres.side(to)))
}

/// Every elementary move applicable to `word`, with its result.
pub fn moves(pres: &Presentation, word: &Word) -> Vec<(ElementaryMove, Word)> {
    let mut out = Vec::new();
    for direction in [Direction::LhsToRhs, Direction::RhsToLhs] {
        for position in 0..word.len() {
            let mv = ElementaryMove { position, direction };
            if let Some(next) = apply_move(pres, word, mv) {
                out.push((mv, next));
            }
        }
    }
    out
}

/// All words one elementary move away from `word`, sorted.
pub fn neighbors(pres: &Presentation, word: &Word) -> BTreeSet<Word> {
    moves(pres, word).into_iter().map(|(_, w)| w).collect()
}

/// The move turning `from` into `to`, if they differ by exactly one.
pub fn move_between(pres: &Presentation, from: &Word, to: &Word) -> Option<ElementaryMove> {
    moves(pres, from)
        .into_iter()
        .find(|(_, w)| w == to)
        .map(|(mv, _)| mv)
}

/// `|u| + |v| + depth · ||lhs| - |rhs||`: no word on a chain of at most
/// `depth` moves between `u` and `v` is longer than this.
pub fn default_length_cap(pres: &Presentation, u: &Word, v: &Word, depth: usize) -> usize {
    u.len() + v.len() + depth * pres.length_delta()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_depth: usize,
    /// Longest intermediate word allowed; `None` uses [`default_length_cap`].
    pub length_cap: Option<usize>,
    pub node_budget: usize,
}

impl SearchLimits {
    pub fn depth(max_depth: usize) -> Self {
        SearchLimits {
            max_depth,
            length_cap: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// A shortest chain `u = w_0, w_1, ..., w_k = v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub distance: usize,
    pub words: Vec<Word>,
}

struct Visited {
    seen: HashMap<Word, (usize, Option<Word>)>,
    frontier: Vec<Word>,
    depth: usize,
}

impl Visited {
    fn new(root: &Word) -> Self {
        let mut seen = HashMap::new();
        seen.insert(root.clone(), (0, None));
        Visited {
            seen,
            frontier: vec![root.clone()],
            depth: 0,
        }
    }

    fn path_to_root(&self, from: &Word) -> Vec<Word> {
        let mut path = vec![from.clone()];
        let mut cur = from;
        while let Some((_, Some(parent))) = self.seen.get(cur) {
            path.push(parent.clone());
            cur = parent;
        }
        path
    }
}

/// Exact Dehn distance between `u` and `v` by bidirectional BFS, or `None`
/// if no chain of at most `max_depth` moves exists within the length cap.
pub fn shortest_chain(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    max_depth: usize,
    length_cap: usize,
) -> Result<Option<Chain>, OracleError> {
    shortest_chain_with(
        pres,
        u,
        v,
        &SearchLimits {
            max_depth,
            length_cap: Some(length_cap),
            node_budget: DEFAULT_NODE_BUDGET,
        },
    )
}

pub fn shortest_chain_with(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    limits: &SearchLimits,
) -> Result<Option<Chain>, OracleError> {
    if u == v {
        return Ok(Some(Chain {
            distance: 0,
            words: vec![u.clone()],
        }));
    }
    let cap = limits
        .length_cap
        .unwrap_or_else(|| default_length_cap(pres, u, v, limits.max_depth));
    let mut fwd = Visited::new(u);
    let mut bwd = Visited::new(v);

    // Layers are expanded whole, alternating towards the smaller frontier.
    // While no word has been reached from both ends, a shortest chain has
    // length > fwd.depth + bwd.depth, so the first layer that produces a
    // meeting word yields the exact distance.
    loop {
        if fwd.depth + bwd.depth + 1 > limits.max_depth
            || fwd.frontier.is_empty()
            || bwd.frontier.is_empty()
        {
            return Ok(None);
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward {
            (&mut fwd, &bwd)
        } else {
            (&mut bwd, &fwd)
        };
        let mut next = BTreeSet::new();
        let mut best: Option<(usize, Word)> = None;
        for word in std::mem::take(&mut this.frontier) {
            for n in neighbors(pres, &word) {
                if n.len() > cap || this.seen.contains_key(&n) {
                    continue;
                }
                if let Some((d, _)) = other.seen.get(&n) {
                    let total = this.depth + 1 + d;
                    if best.as_ref().is_none_or(|(t, w)| (total, &n) < (*t, w)) {
                        best = Some((total, n.clone()));
                    }
                }
                this.seen.insert(n.clone(), (this.depth + 1, Some(word.clone())));
                next.insert(n);
            }
            if visited_total(this, other) > limits.node_budget {
                return Err(OracleError::SearchBoundExceeded {
                    budget: limits.node_budget,
                });
            }
        }
        this.frontier = next.into_iter().collect();
        this.depth += 1;
        if let Some((distance, meet)) = best {
            let mut words = fwd.path_to_root(&meet);
            words.reverse();
            words.pop();
            words.extend(bwd.path_to_root(&meet));
            debug_assert_eq!(words.len(), distance + 1);
            return Ok(Some(Chain { distance, words }));
        }
    }
}

fn visited_total(a: &Visited, b: &Visited) -> usize {
    a.seen.len() + b.seen.len()
}

/// `∂(n)` restricted to what can be certified: the maximum distance over
/// pairs `|u| + |v| ≤ n` that the engine proves equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DehnSample {
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub value: BigUint,
    /// First pair, in enumeration order, attaining `value`.
    pub witnesses: (Word, Word),
    pub equal_pairs: usize,
    /// Pairs on which the engine ran out of fuel. When nonempty, `value` is
    /// only a lower bound.
    pub inconclusive: Vec<(Word, Word)>,
}

fn ser_big<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

impl DehnSample {
    pub fn is_exact(&self) -> bool {
        self.inconclusive.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct DehnConfig {
    /// Fuel for each engine run.
    pub fuel: u64,
    /// Confirm every engine distance with [`shortest_chain_with`].
    pub cross_check: bool,
    pub node_budget: usize,
}

impl Default for DehnConfig {
    fn default() -> Self {
        DehnConfig {
            fuel: 10_000,
            cross_check: false,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Unordered pairs `{u, v}` with `|u| + |v| ≤ n` and `u` shortlex-before
/// `v`, ordered by total length, then `|u|`, then lexicographically.
pub fn pairs_up_to(n: usize) -> impl Iterator<Item = (Word, Word)> {
    (1..=n).flat_map(move |total| {
        (0..=total / 2).flat_map(move |lu| {
            let lv = total - lu;
            Word::all_of_length(lu).flat_map(move |u| {
                Word::all_of_length(lv)
                    .filter_map(move |v| (lu < lv || u < v).then(|| (u.clone(), v)))
            })
        })
    })
}

pub fn dehn_function_at(
    pres: &Presentation,
    n: usize,
    config: &DehnConfig,
) -> Result<DehnSample, OracleError> {
    let mut sample = DehnSample {
        n,
        value: BigUint::zero(),
        witnesses: (Word::empty(), Word::empty()),
        equal_pairs: 0,
        inconclusive: Vec::new(),
    };
    for (u, v) in pairs_up_to(n) {
        match pair_run(pres, &u, &v, config.fuel) {
            PairVerdict::Equal(k) => {
                sample.equal_pairs += 1;
                if config.cross_check {
                    cross_check(pres, &u, &v, &k, config.node_budget)?;
                }
                if k > sample.value {
                    sample.value = k;
                    sample.witnesses = (u, v);
                }
            }
            PairVerdict::NotEqual(_) => {}
            PairVerdict::OutOfFuel(_) => sample.inconclusive.push((u, v)),
        }
    }
    Ok(sample)
}

fn cross_check(
    pres: &Presentation,
    u: &Word,
    v: &Word,
    engine: &BigUint,
    node_budget: usize,
) -> Result<(), OracleError> {
    let depth = engine.to_usize().unwrap_or(usize::MAX);
    let limits = SearchLimits {
        max_depth: depth,
        length_cap: None,
        node_budget,
    };
    let oracle = shortest_chain_with(pres, u, v, &limits)?.map(|c| c.distance);
    if oracle != Some(depth) {
        return Err(OracleError::Mismatch {
            u: u.clone(),
            v: v.clone(),
            engine: engine.clone(),
            oracle,
        });
    }
    Ok(())
}
