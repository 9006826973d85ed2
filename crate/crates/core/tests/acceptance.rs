//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Runtime budgets are part of each criterion.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use onerel::engine::{pair_run, run_divisibility, step, trace_word, Outcome, PairVerdict};
use onerel::oracle::{dehn_function_at, pairs_up_to, shortest_chain_with, DehnConfig, SearchLimits};
use onerel::pi::{
    closed_form, collatz_run, cross_validate, descent_cost_as_printed, lower_bound_check, sigma, sigma_closed_form,
    witness, MacroEngine, Mode, Sequence, SequenceKit,
};
use onerel::words::{w, Letter, Word};
use onerel::{PiPresentation, Presentation};

type Check = Result<String, String>;

type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn pi(n: usize) -> PiPresentation {
    PiPresentation::new(n).unwrap()
}

fn sigma_tables() -> Check {
    let want = [6u64, 26, 94, 354, 1382, 5482, 21870];
    for (k, &v) in (1..).zip(&want) {
        let got = sigma(2, k).map_err(|e| e.to_string())?;
        ensure(got == big(v), || format!("sigma(2, {k}) = {got}, expected {v}"))?;
    }
    let s44 = sigma(4, 4).map_err(|e| e.to_string())?;
    ensure(s44 == big(34966), || format!("sigma(4, 4) = {s44}"))?;
    for n in 2..=10 {
        for k in 1..=40 {
            let mut kit = SequenceKit::new(n).unwrap();
            let [a, b, c] = kit.phase_charges(k).unwrap();
            let closed = sigma_closed_form(n, k).unwrap();
            ensure(a + b + c == closed, || format!("component sum != closed form at N={n}, k={k}"))?;
        }
    }
    Ok("sigma_2(1..7) and sigma_4(4) match; sums agree for N<=10, k<=40".into())
}

fn sequence_tables() -> Check {
    let printed: [(Sequence, [u64; 6]); 6] = [
        (Sequence::FoldExponent, [2, 6, 22, 86, 342, 1366]),
        (Sequence::FoldCost, [0, 4, 16, 64, 256, 1024]),
        (Sequence::FoldTotal, [0, 4, 20, 84, 340, 1364]),
        (Sequence::DescentExponent, [1, 3, 11, 43, 171, 683]),
        (Sequence::DescentCost, [0, 4, 10, 34, 130, 514]),
        (Sequence::DescentTotal, [0, 4, 14, 48, 178, 692]),
    ];
    let mut kit = SequenceKit::new(2).unwrap();
    for (seq, values) in printed {
        for (n, &v) in values.iter().enumerate() {
            let got = kit.recurrence(seq, n);
            ensure(got == big(v), || format!("{seq}({n}) = {got}, expected {v}"))?;
        }
    }
    let mut printed_form_failures = 0;
    for n_param in 2..=10u64 {
        let mut kit = SequenceKit::new(n_param).unwrap();
        let big_n = big(n_param);
        for n in 0..=50 {
            for seq in Sequence::ALL {
                let r = kit.value(seq, n, Mode::Recurrence);
                let c = closed_form(&big_n, seq, n);
                ensure(r == c, || format!("{seq}({n}) for N={n_param}: recurrence {r}, closed form {c}"))?;
            }
            if n >= 1 {
                let t = kit.recurrence(Sequence::DescentCost, n);
                ensure(descent_cost_as_printed(&big_n, n) != t, || {
                    format!("N^(2n)+2 unexpectedly matches t'({n}) for N={n_param}")
                })?;
                printed_form_failures += 1;
                let bridge_l = kit.recurrence(Sequence::DescentExponent, n) - 1u32;
                let bridge_r = &big_n * (kit.recurrence(Sequence::FoldExponent, n - 1) - 1u32);
                ensure(bridge_l == bridge_r, || format!("bridge identity fails at N={n_param}, k={n}"))?;
            }
        }
    }
    Ok(format!(
        "N=2 tables match; closed forms agree for N<=10, n<=50; N^(2n)+2 rejected in {printed_form_failures}/{printed_form_failures} cases"
    ))
}

fn naive_witness_runs() -> Check {
    let cases = [(2usize, 1usize), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)];
    let mut done = Vec::new();
    for (n, k) in cases {
        let p = witness(k).unwrap();
        let expect = sigma(n as u64, k).unwrap();
        let got = pair_run(pi(n).presentation(), &p.u, &p.v, &expect + 1u32);
        ensure(got == PairVerdict::Equal(expect.clone()), || format!("N={n}, k={k}: {got}, expected Equal({expect})"))?;
        done.push(format!("{n}/{k}:{expect}"));
    }
    Ok(format!("pair_run = sigma for N/k {}", done.join(" ")))
}

fn macro_witness_runs() -> Check {
    for n in 2..=10u64 {
        let engine = MacroEngine::new(n).unwrap();
        let mut kit = SequenceKit::new(n).unwrap();
        for k in 1..=30 {
            let run = engine.run_witness(k).map_err(|e| format!("N={n}, k={k}: {e}"))?;
            ensure(run.state.is_solved(), || format!("N={n}, k={k}: not at (ε, ε)"))?;
            let s = sigma(n, k).unwrap();
            ensure(run.steps() == &s, || format!("N={n}, k={k}: {} steps", run.steps()))?;
            let want = kit.phase_charges(k).unwrap();
            ensure(run.phase_charges() == want, || format!("N={n}, k={k}: phase charges differ"))?;
        }
    }
    Ok("270 runs reach (ε, ε) in sigma_N(k) steps with the expected phase charges".into())
}

fn macro_naive_cross() -> Check {
    let mut total = 0;
    for n in [2, 3] {
        for k in [1, 2] {
            total += cross_validate(n, k).map_err(|e| format!("N={n}, k={k}: {e}"))?;
        }
    }
    Ok(format!("{total} phase snapshots equal the naive states"))
}

fn oracle_minimality() -> Check {
    let p2 = pi(2);
    let p = p2.presentation();
    let w1 = witness(1).unwrap();
    let chain = shortest_chain_with(p, &w1.u, &w1.v, &SearchLimits::depth(6))
        .map_err(|e| e.to_string())?
        .ok_or("no chain for (U1, V1)")?;
    ensure(chain.distance == 6, || format!("oracle distance {}", chain.distance))?;
    ensure(pair_run(p, &w1.u, &w1.v, 100u32) == PairVerdict::Equal(big(6)), || "engine disagrees".into())?;
    let mut checked = 0;
    for (u, v) in pairs_up_to(10) {
        let PairVerdict::Equal(k) = pair_run(p, &u, &v, 2_000u32) else {
            continue;
        };
        let k = u64::try_from(&k).unwrap() as usize;
        if k > 6 {
            continue;
        }
        let found = shortest_chain_with(p, &u, &v, &SearchLimits::depth(k)).map_err(|e| e.to_string())?;
        let d = found.map(|c| c.distance);
        ensure(d == Some(k), || format!("({u}, {v}): engine {k}, oracle {d:?}"))?;
        checked += 1;
    }
    Ok(format!("(U1, V1) at distance 6; oracle agrees on {checked} equal pairs with |u|+|v|<=10"))
}

fn worked_examples() -> Check {
    let m0 = Presentation::m0();
    let lines = [
        ("bbbbabbaabbab", "0: bb | bba [bbaa] bbab"),
        ("bbabbababab", "0: bba | bba | b [a] bab"),
        ("bbabbabb", "0: bba | bba | bb"),
    ];
    for (word, want) in lines {
        let t = trace_word(&m0, &w(word), 1u32, false);
        let got = t.records.first().map(|r| r.line().to_string()).unwrap_or_default();
        ensure(got == want, || format!("{word}: {got:?}, expected {want:?}"))?;
    }
    let v = run_divisibility(&m0, &w("bbbbabbaabbab"), Letter::A, 10u32);
    ensure(
        v.outcome == Outcome::No && v.steps_used == big(2) && v.final_word == w("bbabbab"),
        || format!("two steps on bbbbabbaabbab: {v}"),
    )?;
    ensure(step(&m0, &v.final_word).is_none(), || "bbabbab has a head".into())?;
    let mut cur = w("ba");
    for i in 1..=20 {
        cur = step(&m0, &cur).ok_or("ba run became headless")?;
        let mut want = Word::power(Letter::B, 2 * i + 1);
        want.extend_from(&Word::power(Letter::A, i + 1));
        ensure(cur == want, || format!("step {i} from ba gave {cur}"))?;
    }
    Ok("three decompositions byte-identical, headless after 2 steps, 20 powers of ba".into())
}

fn x_block(p: usize) -> Word {
    w("ba").repeat(p)
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_letters((0..len).map(|_| if rng.gen() { Letter::B } else { Letter::A }).collect())
}

fn steps(pres: &Presentation, word: &Word, count: usize) -> Option<Word> {
    let mut cur = word.clone();
    for _ in 0..count {
        cur = step(pres, &cur)?;
    }
    Some(cur)
}

fn rewriting_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut cases = [0usize; 4];

    // X^p aa X^q · suffix: p(N+1) steps give aa X^{q+pN²} · suffix.
    for n in [2usize, 3] {
        let pres = pi(n);
        let p_ = pres.presentation();
        for p in 0..=4 {
            for q in 0..=4 {
                for _ in 0..3 {
                    let suffix = random_word(&mut rng, 6);
                    let mut start = x_block(p);
                    start.extend_from(&w("aa"));
                    start.extend_from(&x_block(q));
                    start.extend_from(&suffix);
                    let mut want = w("aa");
                    want.extend_from(&x_block(q + p * n * n));
                    want.extend_from(&suffix);
                    let got = steps(p_, &start, p * (n + 1));
                    ensure(got.as_ref() == Some(&want), || format!("shift N={n} p={p} q={q} suffix {suffix}"))?;
                    cases[0] += 1;
                }
            }
        }
    }

    // (X^p a X^{pN}, a) collapses in exactly p pair steps.
    for n in [2usize, 3] {
        let pres = pi(n);
        let mut kit = SequenceKit::new(n as u64).unwrap();
        let mut ps: Vec<usize> = (1..=3)
            .map(|k| u64::try_from(kit.recurrence(Sequence::FoldExponent, k - 1) - 1u32).unwrap() as usize)
            .filter(|&p| p <= 60)
            .collect();
        ps.extend(1..=30);
        for p in ps {
            let mut u = x_block(p);
            u.push(Letter::A);
            u.extend_from(&x_block(p * n));
            let got = pair_run(pres.presentation(), &u, &w("a"), p as u64);
            ensure(got == PairVerdict::Equal(big(p as u64)), || format!("collapse N={n} p={p}: {got}"))?;
            cases[1] += 1;
        }
    }

    // k steps on P·Q equal (k steps on P)·Q when P becomes a-divisible in k steps.
    for n in [2usize, 3] {
        let pres = pi(n);
        let p_ = pres.presentation();
        let mut found = 0;
        while found < 100 {
            let mut prefix = w("b");
            prefix.extend_from(&random_word(&mut rng, 9));
            let v = run_divisibility(p_, &prefix, Letter::A, 50u32);
            if v.outcome != Outcome::Yes || v.steps_used == big(0) {
                continue;
            }
            let k = u64::try_from(&v.steps_used).unwrap() as usize;
            let q = random_word(&mut rng, 8);
            let got = steps(p_, &prefix.concat(&q), k);
            let want = v.final_word.concat(&q);
            ensure(got.as_ref() == Some(&want), || format!("prefix independence N={n}: {prefix} · {q}"))?;
            found += 1;
            cases[2] += 1;
        }
    }

    // ℓ steps on b^s Y equal b^s · (ℓ steps on Y) while Y's images begin with b.
    for n in [2usize, 3] {
        let pres = pi(n);
        let p_ = pres.presentation();
        let mut found = 0;
        while found < 100 {
            let mut y = w("b");
            y.extend_from(&random_word(&mut rng, 9));
            let limit = rng.gen_range(0..=50usize);
            let mut ell = 0;
            let mut cur = y.clone();
            while ell < limit {
                match step(p_, &cur) {
                    Some(next) if next.first() == Some(Letter::B) => {
                        cur = next;
                        ell += 1;
                    }
                    _ => break,
                }
            }
            let s = rng.gen_range(0..=4usize);
            let prefixed = Word::power(Letter::B, s).concat(&y);
            let got = steps(p_, &prefixed, ell);
            let want = Word::power(Letter::B, s).concat(&cur);
            ensure(got.as_ref() == Some(&want), || format!("b-prefix N={n}: s={s}, ℓ={ell}, Y={y}"))?;
            found += 1;
            cases[3] += 1;
        }
    }
    let total: usize = cases.iter().sum();
    ensure(total >= 500, || format!("only {total} cases"))?;
    Ok(format!(
        "{total} cases: shift {}, collapse {}, prefix independence {}, b-prefix {}",
        cases[0], cases[1], cases[2], cases[3]
    ))
}

fn collatz_sweep() -> Check {
    let mut longest = 0;
    for n in [2u64, 3, 4] {
        for m in 0..=200u32 {
            for k in 0..=200u32 {
                let out = collatz_run(n, m, k, 1_000_000);
                ensure(out.terminated(), || format!("N={n}, ({m}, {k}) did not terminate"))?;
                longest = longest.max(out.steps());
            }
        }
    }
    Ok(format!("all 3·201² runs terminate; longest {longest} steps"))
}

fn lower_bound() -> Check {
    for k in 1..=7 {
        let lb = lower_bound_check(2, 8 * k + 4).map_err(|e| e.to_string())?;
        ensure(lb == sigma(2, k).unwrap(), || format!("k={k}: {lb}"))?;
    }
    let sample = dehn_function_at(pi(2).presentation(), 12, &DehnConfig::default()).map_err(|e| e.to_string())?;
    let w1 = witness(1).unwrap();
    ensure(sample.value >= big(6), || format!("dehn(12) = {}", sample.value))?;
    ensure(sample.witnesses == (w1.u.clone(), w1.v.clone()), || {
        format!("witness ({}, {})", sample.witnesses.0, sample.witnesses.1)
    })?;
    Ok(format!("lower bounds match sigma_2(1..7); dehn(12) = {} at (U1, V1)", sample.value))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 sigma tables", Duration::from_secs(1), sigma_tables),
        ("2 sequence tables", Duration::from_secs(1), sequence_tables),
        ("3 witness distances, naive engine", Duration::from_secs(30), naive_witness_runs),
        ("4 witness distances, macro engine", Duration::from_secs(1), macro_witness_runs),
        ("5 macro/naive cross-validation", Duration::from_secs(5), macro_naive_cross),
        ("6 minimality oracle", Duration::from_secs(120), oracle_minimality),
        ("7 worked examples", Duration::from_secs(1), worked_examples),
        ("8 rewriting-law suites", Duration::from_secs(30), rewriting_laws),
        ("9 collatz termination sweep", Duration::from_secs(30), collatz_sweep),
        ("10 lower-bound consistency", Duration::from_secs(60), lower_bound),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:.2?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{took:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{took:.2?}]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
