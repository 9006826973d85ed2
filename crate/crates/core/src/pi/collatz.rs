use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CollatzState {
    #[serde(serialize_with = "crate::engine::serialize_biguint")]
    pub m: BigUint,
    #[serde(serialize_with = "crate::engine::serialize_biguint")]
    pub n: BigUint,
}

impl CollatzState {
    pub fn new(m: impl Into<BigUint>, n: impl Into<BigUint>) -> Self {
        CollatzState {
            m: m.into(),
            n: n.into(),
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.m.is_zero() || self.n.is_zero()
    }
}

impl fmt::Display for CollatzState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}

/// One application of `f_N`:
///
/// * `m ≡ n (mod 2)`: `(⌊m/2⌋, ⌊n/2⌋)`
/// * `m` even, `n` odd: `(m/2, 2^{2N+1}·n + (2^{2N+1}+1)/3)`
/// * `m` odd, `n` even: `(n, m)`
pub fn collatz_step(n_param: u64, s: &CollatzState) -> CollatzState {
    match (s.m.is_even(), s.n.is_even()) {
        (me, ne) if me == ne => CollatzState::new(&s.m >> 1u32, &s.n >> 1u32),
        (true, false) => {
            let pow = BigUint::one() << (2 * n_param + 1);
            let (offset, rem) = (&pow + 1u32).div_rem(&BigUint::from(3u32));
            debug_assert!(rem.is_zero());
            CollatzState::new(&s.m >> 1u32, pow * &s.n + offset)
        }
        _ => CollatzState::new(s.n.clone(), s.m.clone()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollatzOutcome {
    Terminated { steps: u64, last: CollatzState },
    OutOfFuel { steps: u64, last: CollatzState },
}

impl CollatzOutcome {
    pub fn steps(&self) -> u64 {
        match self {
            CollatzOutcome::Terminated { steps, .. } | CollatzOutcome::OutOfFuel { steps, .. } => *steps,
        }
    }

    pub fn last(&self) -> &CollatzState {
        match self {
            CollatzOutcome::Terminated { last, .. } | CollatzOutcome::OutOfFuel { last, .. } => last,
        }
    }

    pub fn terminated(&self) -> bool {
        matches!(self, CollatzOutcome::Terminated { .. })
    }
}

impl fmt::Display for CollatzOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollatzOutcome::Terminated { steps, last } => write!(f, "Terminated({steps}, {last})"),
            CollatzOutcome::OutOfFuel { steps, last } => write!(f, "OutOfFuel({steps}, {last})"),
        }
    }
}

pub fn collatz_run(n_param: u64, m: impl Into<BigUint>, n: impl Into<BigUint>, fuel: u64) -> CollatzOutcome {
    iterate(n_param, CollatzState::new(m, n), fuel, |_| {})
}

/// Like [`collatz_run`], also returning every state visited, starting with
/// the input.
pub fn collatz_trajectory(
    n_param: u64,
    m: impl Into<BigUint>,
    n: impl Into<BigUint>,
    fuel: u64,
) -> (Vec<CollatzState>, CollatzOutcome) {
    let mut states = Vec::new();
    let out = iterate(n_param, CollatzState::new(m, n), fuel, |s| states.push(s.clone()));
    (states, out)
}

fn iterate(n_param: u64, mut s: CollatzState, fuel: u64, mut visit: impl FnMut(&CollatzState)) -> CollatzOutcome {
    let mut steps = 0;
    loop {
        visit(&s);
        if s.is_terminal() {
            return CollatzOutcome::Terminated { steps, last: s };
        }
        if steps >= fuel {
            return CollatzOutcome::OutOfFuel { steps, last: s };
        }
        s = collatz_step(n_param, &s);
        steps += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_steps() {
        let step = |n, m: u32, k: u32| collatz_step(n, &CollatzState::new(m, k));
        assert_eq!(step(2, 1, 1), CollatzState::new(0u32, 0u32));
        assert_eq!(step(2, 2, 1), CollatzState::new(1u32, 43u32));
        for n in 2..6 {
            assert_eq!(step(n, 3, 2), CollatzState::new(2u32, 3u32));
        }
        assert_eq!(step(3, 5, 5), CollatzState::new(2u32, 2u32));
    }

    #[test]
    fn even_odd_offset_is_integral() {
        for n in 2..=16u64 {
            let pow = BigUint::one() << (2 * n + 1);
            assert!(((pow + 1u32) % 3u32).is_zero());
        }
    }

    #[test]
    fn runs() {
        assert_eq!(
            collatz_run(2, 2u32, 1u32, 100),
            CollatzOutcome::Terminated {
                steps: 2,
                last: CollatzState::new(0u32, 21u32)
            }
        );
        assert_eq!(collatz_run(7, 0u32, 5u32, 0).steps(), 0);
        let (states, out) = collatz_trajectory(2, 2u32, 1u32, 100);
        assert_eq!(states.len(), 3);
        assert!(out.terminated());
        assert!(!collatz_run(2, 2u32, 1u32, 1).terminated());
    }
}
