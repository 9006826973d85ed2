//! Step-count sequences for the witness pairs of `Π_N`.
//!
//! The "fold" sequences count the opening phase (pushing `(ba)` blocks past
//! `aa`), the "descent" sequences count the phase that walks `b^{2q-1}`
//! down two letters at a time. Recurrences are authoritative; the closed
//! forms exist to be checked against them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::PiError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sequence {
    /// `s(0) = N`, `s(n) = N²·s(n-1) - N² + N`: the `(ba)` exponent after
    /// `n` folds.
    FoldExponent,
    /// `t(0) = 0`, `t(n) = (N+1)(s(n-1) - 1) + 1`: steps of the `n`-th fold.
    FoldCost,
    /// `T(n) = Σ_{i ≤ n} t(i)`.
    FoldTotal,
    /// `s'(0) = 1`, `s'(n) = N²·s'(n-1) - N + 1`.
    DescentExponent,
    /// `t'(0) = 0`, `t'(n) = (N+1)·s'(n-1) + 1`.
    DescentCost,
    /// `T'(n) = Σ_{i ≤ n} t'(i)`.
    DescentTotal,
}

impl Sequence {
    pub const ALL: [Sequence; 6] = [
        Sequence::FoldExponent,
        Sequence::FoldCost,
        Sequence::FoldTotal,
        Sequence::DescentExponent,
        Sequence::DescentCost,
        Sequence::DescentTotal,
    ];

    /// Short column name: `s`, `t`, `T`, `s'`, `t'`, `T'`.
    pub fn symbol(self) -> &'static str {
        match self {
            Sequence::FoldExponent => "s",
            Sequence::FoldCost => "t",
            Sequence::FoldTotal => "T",
            Sequence::DescentExponent => "s'",
            Sequence::DescentCost => "t'",
            Sequence::DescentTotal => "T'",
        }
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Sequence {
    type Err = PiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.replace('′', "'");
        Sequence::ALL
            .into_iter()
            .find(|q| q.symbol() == normalized)
            .ok_or_else(|| PiError::UnknownSequence(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Recurrence,
    ClosedForm,
}

/// Memoized recurrence values for one `N`.
#[derive(Debug, Clone)]
pub struct SequenceKit {
    n_param: BigUint,
    fold_exp: Vec<BigUint>,
    fold_total: Vec<BigUint>,
    descent_exp: Vec<BigUint>,
    descent_total: Vec<BigUint>,
}

impl SequenceKit {
    pub fn new(n_param: u64) -> Result<Self, PiError> {
        if n_param < 2 {
            return Err(PiError::InvalidN(n_param));
        }
        let big_n = BigUint::from(n_param);
        Ok(SequenceKit {
            fold_exp: vec![big_n.clone()],
            fold_total: vec![BigUint::zero()],
            descent_exp: vec![BigUint::one()],
            descent_total: vec![BigUint::zero()],
            n_param: big_n,
        })
    }

    pub fn n_param(&self) -> &BigUint {
        &self.n_param
    }

    fn extend_to(&mut self, n: usize) {
        let big_n = &self.n_param;
        let n2 = big_n * big_n;
        while self.fold_exp.len() <= n {
            let i = self.fold_exp.len();
            let prev = &self.fold_exp[i - 1];
            let cost = fold_cost_from(big_n, prev);
            let next = &n2 * prev + big_n - &n2;
            let total = &self.fold_total[i - 1] + cost;
            self.fold_exp.push(next);
            self.fold_total.push(total);

            let prev = &self.descent_exp[i - 1];
            let cost = (big_n + 1u32) * prev + 1u32;
            let next = &n2 * prev + 1u32 - big_n;
            let total = &self.descent_total[i - 1] + cost;
            self.descent_exp.push(next);
            self.descent_total.push(total);
        }
    }

    /// Value by the defining recurrences.
    pub fn recurrence(&mut self, seq: Sequence, n: usize) -> BigUint {
        self.extend_to(n);
        match seq {
            Sequence::FoldExponent => self.fold_exp[n].clone(),
            Sequence::FoldCost if n == 0 => BigUint::zero(),
            Sequence::FoldCost => fold_cost_from(&self.n_param, &self.fold_exp[n - 1]),
            Sequence::FoldTotal => self.fold_total[n].clone(),
            Sequence::DescentExponent => self.descent_exp[n].clone(),
            Sequence::DescentCost if n == 0 => BigUint::zero(),
            Sequence::DescentCost => (&self.n_param + 1u32) * &self.descent_exp[n - 1] + 1u32,
            Sequence::DescentTotal => self.descent_total[n].clone(),
        }
    }

    pub fn value(&mut self, seq: Sequence, n: usize, mode: Mode) -> BigUint {
        match mode {
            Mode::Recurrence => self.recurrence(seq, n),
            Mode::ClosedForm => closed_form(&self.n_param, seq, n),
        }
    }

    /// Steps charged by the three phases of the witness run:
    /// `T(k-1) + 2k - 1`, `T'(k)`, `s(k-1) - 1`.
    pub fn phase_charges(&mut self, k: usize) -> Result<[BigUint; 3], PiError> {
        if k < 1 {
            return Err(PiError::InvalidK(k));
        }
        Ok([
            self.recurrence(Sequence::FoldTotal, k - 1) + BigUint::from(2 * k - 1),
            self.recurrence(Sequence::DescentTotal, k),
            self.recurrence(Sequence::FoldExponent, k - 1) - 1u32,
        ])
    }
}

fn fold_cost_from(big_n: &BigUint, prev_exp: &BigUint) -> BigUint {
    (big_n + 1u32) * (prev_exp - 1u32) + 1u32
}

fn exact_div(num: BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "closed form is not integral: remainder {r}");
    q
}

/// Closed-form evaluation. `DescentCost` uses `N^{2n-1} + 2`; see
/// [`descent_cost_as_printed`] for the variant that does not match.
pub fn closed_form(big_n: &BigUint, seq: Sequence, n: usize) -> BigUint {
    let pow = |e: usize| big_n.pow(e as u32);
    let n2m1 = big_n * big_n - 1u32;
    match seq {
        Sequence::FoldExponent => exact_div(big_n * (pow(2 * n + 1) + 1u32), &(big_n + 1u32)),
        Sequence::FoldCost if n == 0 => BigUint::zero(),
        Sequence::FoldCost => pow(2 * n),
        Sequence::FoldTotal => exact_div(big_n * big_n * (pow(2 * n) - 1u32), &n2m1),
        Sequence::DescentExponent => exact_div(pow(2 * n + 1) + 1u32, &(big_n + 1u32)),
        Sequence::DescentCost if n == 0 => BigUint::zero(),
        Sequence::DescentCost => pow(2 * n - 1) + 2u32,
        Sequence::DescentTotal => {
            exact_div(big_n * (pow(2 * n) - 1u32), &n2m1) + BigUint::from(2 * n)
        }
    }
}

/// `N^{2n} + 2`, a commonly quoted form of the descent cost that disagrees
/// with its recurrence for every `n ≥ 1`.
pub fn descent_cost_as_printed(big_n: &BigUint, n: usize) -> BigUint {
    big_n.pow(2 * n as u32) + 2u32
}

/// Exact length of the shortest transformation chain between the `k`-th
/// witness words in `Π_N`, computed both as the sum of the phase charges
/// and as `2N(N^{2k} - 1)/(N² - 1) + 4k - 2`. The two must agree.
pub fn sigma(n_param: u64, k: usize) -> Result<BigUint, PiError> {
    let mut kit = SequenceKit::new(n_param)?;
    let [a, b, c] = kit.phase_charges(k)?;
    let by_phases = a + b + c;
    let closed = sigma_closed_form(n_param, k)?;
    if by_phases != closed {
        return Err(PiError::InternalMismatch {
            what: format!("sigma({n_param}, {k})"),
            expected: closed.to_string(),
            found: by_phases.to_string(),
        });
    }
    Ok(closed)
}

pub fn sigma_closed_form(n_param: u64, k: usize) -> Result<BigUint, PiError> {
    if n_param < 2 {
        return Err(PiError::InvalidN(n_param));
    }
    if k < 1 {
        return Err(PiError::InvalidK(k));
    }
    let big_n = BigUint::from(n_param);
    let num = 2u32 * &big_n * (big_n.pow(2 * k as u32) - 1u32);
    Ok(exact_div(num, &(&big_n * &big_n - 1u32)) + BigUint::from(4 * k - 2))
}

/// The lower bound `∂_N(n) ≥ σ_N(⌊(n - 4)/8⌋)` witnessed by
/// `(U_k, V_k)`, `|U_k| + |V_k| = 8k + 4`.
pub fn lower_bound_check(n_param: u64, n: usize) -> Result<BigUint, PiError> {
    if n < 12 {
        return Err(PiError::LengthTooSmall(n));
    }
    sigma(n_param, (n - 4) / 8)
}
