//! The `onerel` command line.
//!
//! Exit status: 0 for Equal / Yes / success, 1 for NotEqual / No, 2 for
//! OutOfFuel, 64 for usage and parse errors, 70 for internal mismatches.
//!
//! CSV columns:
//!
//! * `sigma`: `k,sigma,opening,descent,collapse`
//! * `sequences`: `n,s,t,T,s',t',T'`
//! * `collatz`: `step,m,n`
//! * `dehn`: `n,value,witness_u,witness_v`

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use crate::engine::{
    decompose, pair_run_oriented, run_divisibility, step, trace_pair, trace_word, Outcome, PairVerdict,
    RewriteSide,
};
use crate::oracle::{dehn_function_at, shortest_chain_with, DehnConfig, SearchLimits, DEFAULT_NODE_BUDGET};
use crate::pi::{
    collatz_trajectory, cross_validate, sigma, witness, MacroEngine, Mode, Sequence, SequenceKit,
};
use crate::presentation::{is_residually_finite_monadic, relative_length, PiPresentation, Presentation};
use crate::words::{parse_word, Letter, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_OUT_OF_FUEL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "onerel", version, about = "Word problems and Dehn distances in one-relation monoids ⟨a, b | bP = aQ⟩")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the prefix decomposition of a word.
    Decompose(WordCmd),
    /// Replace the head of a word by the other side of the relation.
    Step(WordCmd),
    /// Decide left divisibility of a word by the letter it does not start with.
    Run(RunCmd),
    /// Run the pair algorithm; prints Equal(k), NotEqual or OutOfFuel.
    Pair(PairCmd),
    /// Shortest transformation chain by breadth-first search.
    Oracle(OracleCmd),
    /// Dehn function samples over all pairs up to a total length.
    Dehn(DehnCmd),
    /// σ_N(k) table: k,sigma,opening,descent,collapse.
    Sigma(SigmaCmd),
    /// Step-count sequences: n,s,t,T,s',t',T'.
    Sequences(SequencesCmd),
    /// Macro-engine run on the k-th witness pair of Π_N.
    Macro(MacroCmd),
    /// Iterate the Collatz-like map f_N from (m, n): step,m,n.
    Collatz(CollatzCmd),
    /// Structural facts about a relation.
    Classify(ClassifyCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Jsonl,
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    /// Relation as LHS=RHS, e.g. "baa(ba)^2=a".
    #[arg(long, conflicts_with = "n")]
    pub relation: Option<String>,
    /// Use Π_N = ⟨a, b | baa(ba)^N = a⟩ instead of --relation.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WordCmd {
    #[command(flatten)]
    pub rel: RelationArgs,
    #[arg(long, alias = "u")]
    pub word: String,
    /// Write repeated factors as powers.
    #[arg(long)]
    pub compact: bool,
}

#[derive(Debug, Args)]
pub struct RunCmd {
    #[command(flatten)]
    pub rel: RelationArgs,
    #[arg(long, alias = "u")]
    pub word: String,
    #[arg(long, default_value_t = 10_000)]
    pub fuel: u64,
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub compact: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PairCmd {
    #[command(flatten)]
    pub rel: RelationArgs,
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
    #[arg(long, default_value_t = 10_000)]
    pub fuel: u64,
    #[arg(long)]
    pub trace: bool,
    /// Rewrite the second component instead of the first.
    #[arg(long)]
    pub second: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct OracleCmd {
    #[command(flatten)]
    pub rel: RelationArgs,
    #[arg(long)]
    pub u: String,
    #[arg(long)]
    pub v: String,
    #[arg(long, default_value_t = 12)]
    pub max_depth: usize,
    /// Longest intermediate word; defaults to |u| + |v| + depth·||lhs| - |rhs||.
    #[arg(long)]
    pub length_cap: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct DehnCmd {
    #[command(flatten)]
    pub rel: RelationArgs,
    /// Largest total length |u| + |v|.
    #[arg(long)]
    pub length: usize,
    /// Smallest total length to report; defaults to --length.
    #[arg(long)]
    pub from: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub fuel: u64,
    /// Confirm every distance with the breadth-first oracle.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SigmaCmd {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 7)]
    pub k_max: usize,
    /// Run the macro engine for every row.
    #[arg(long)]
    pub verify_macro: bool,
    /// Replay every row on the naive engine (k ≤ 4 only).
    #[arg(long)]
    pub verify_naive: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SequencesCmd {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 5)]
    pub n_max: usize,
    /// Evaluate the closed forms instead of the recurrences.
    #[arg(long)]
    pub closed_form: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MacroCmd {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: usize,
    /// Compare phase snapshots with the naive engine.
    #[arg(long)]
    pub verify_naive: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CollatzCmd {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: BigUint,
    /// Second coordinate of the start pair.
    #[arg(long)]
    pub mm: BigUint,
    #[arg(long, default_value_t = 1_000_000)]
    pub fuel: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ClassifyCmd {
    #[command(flatten)]
    pub rel: RelationArgs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

type CmdResult = Result<i32, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<crate::pi::PiError> for Failure {
    fn from(e: crate::pi::PiError) -> Self {
        match e {
            crate::pi::PiError::InvalidN(_)
            | crate::pi::PiError::InvalidK(_)
            | crate::pi::PiError::LengthTooSmall(_)
            | crate::pi::PiError::UnknownSequence(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl RelationArgs {
    fn resolve(&self) -> Result<Presentation, Failure> {
        match (&self.relation, self.n) {
            (Some(r), _) => r.parse().map_err(usage),
            (None, Some(n)) => Ok(PiPresentation::new(n).map_err(usage)?.presentation().clone()),
            (None, None) => Err(Failure::Usage("give --relation or --n".into())),
        }
    }
}

fn word(text: &str) -> Result<Word, Failure> {
    parse_word(text).map_err(|e| Failure::Usage(format!("{text:?}: {e}")))
}

/// Parses `args` (program name first) and runs the command. Returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Decompose(c) => cmd_decompose(&c, out),
        Command::Step(c) => cmd_step(&c, out),
        Command::Run(c) => cmd_run(&c, out),
        Command::Pair(c) => cmd_pair(&c, out),
        Command::Oracle(c) => cmd_oracle(&c, out),
        Command::Dehn(c) => cmd_dehn(&c, out),
        Command::Sigma(c) => cmd_sigma(&c, out),
        Command::Sequences(c) => cmd_sequences(&c, out),
        Command::Macro(c) => cmd_macro(&c, out),
        Command::Collatz(c) => cmd_collatz(&c, out),
        Command::Classify(c) => cmd_classify(&c, out),
    }
}

fn cmd_decompose(c: &WordCmd, out: &mut dyn Write) -> CmdResult {
    let pres = c.rel.resolve()?;
    let w = word(&c.word)?;
    let d = decompose(&pres, &w);
    writeln!(out, "{}", d.render(&pres, c.compact))?;
    Ok(if d.is_headless() { EXIT_NO } else { EXIT_OK })
}

fn cmd_step(c: &WordCmd, out: &mut dyn Write) -> CmdResult {
    let pres = c.rel.resolve()?;
    let w = word(&c.word)?;
    match step(&pres, &w) {
        Some(next) => {
            writeln!(out, "{}", next.display_or_epsilon())?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "headless")?;
            Ok(EXIT_NO)
        }
    }
}

fn outcome_code(o: Outcome) -> i32 {
    match o {
        Outcome::Yes => EXIT_OK,
        Outcome::No => EXIT_NO,
        Outcome::OutOfFuel => EXIT_OUT_OF_FUEL,
    }
}

fn cmd_run(c: &RunCmd, out: &mut dyn Write) -> CmdResult {
    let pres = c.rel.resolve()?;
    let w = word(&c.word)?;
    let verdict = if c.trace {
        let t = trace_word(&pres, &w, c.fuel, c.compact);
        match c.format {
            Format::Jsonl => out.write_all(t.to_jsonl().as_bytes())?,
            _ => out.write_all(t.to_text().as_bytes())?,
        }
        t.verdict
    } else {
        let x = w.first().map_or(Letter::A, Letter::other);
        run_divisibility(&pres, &w, x, c.fuel)
    };
    if !(c.trace && c.format == Format::Jsonl) {
        writeln!(out, "{verdict}")?;
    }
    Ok(outcome_code(verdict.outcome))
}

fn pair_code(v: &PairVerdict) -> i32 {
    match v {
        PairVerdict::Equal(_) => EXIT_OK,
        PairVerdict::NotEqual(_) => EXIT_NO,
        PairVerdict::OutOfFuel(_) => EXIT_OUT_OF_FUEL,
    }
}

fn cmd_pair(c: &PairCmd, out: &mut dyn Write) -> CmdResult {
    let pres = c.rel.resolve()?;
    let (u, v) = (word(&c.u)?, word(&c.v)?);
    let side = if c.second { RewriteSide::Second } else { RewriteSide::First };
    let verdict = if c.trace {
        let t = trace_pair(&pres, &u, &v, c.fuel, side);
        match c.format {
            Format::Jsonl => out.write_all(t.to_jsonl().as_bytes())?,
            _ => out.write_all(t.to_text().as_bytes())?,
        }
        t.verdict
    } else {
        pair_run_oriented(&pres, &u, &v, c.fuel, side)
    };
    if !(c.trace && c.format == Format::Jsonl) {
        writeln!(out, "{verdict}")?;
    }
    Ok(pair_code(&verdict))
}

fn cmd_oracle(c: &OracleCmd, out: &mut dyn Write) -> CmdResult {
    let pres = c.rel.resolve()?;
    let (u, v) = (word(&c.u)?, word(&c.v)?);
    let limits = SearchLimits {
        max_depth: c.max_depth,
        length_cap: c.length_cap,
        node_budget: c.budget,
    };
    match shortest_chain_with(&pres, &u, &v, &limits).map_err(|e| Failure::Internal(e.to_string()))? {
        Some(chain) => {
            writeln!(out, "distance {}", chain.distance)?;
            for w in &chain.words {
                writeln!(out, "{}", w.display_or_epsilon())?;
            }
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "no chain within {} moves", c.max_depth)?;
            Ok(EXIT_NO)
        }
    }
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().from_writer(out)
}

fn csv_err(e: csv::Error) -> Failure {
    Failure::Internal(e.to_string())
}

fn cmd_dehn(c: &DehnCmd, out: &mut dyn Write) -> CmdResult {
    let pres = c.rel.resolve()?;
    let config = DehnConfig {
        fuel: c.fuel,
        cross_check: c.cross_check,
        ..DehnConfig::default()
    };
    let from = c.from.unwrap_or(c.length).min(c.length).max(1);
    let mut samples = Vec::new();
    for n in from..=c.length {
        samples.push(dehn_function_at(&pres, n, &config).map_err(|e| Failure::Internal(e.to_string()))?);
    }
    let exact = samples.iter().all(|s| s.is_exact());
    match c.format {
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["n", "value", "witness_u", "witness_v"]).map_err(csv_err)?;
            for s in &samples {
                wr.write_record([
                    s.n.to_string(),
                    s.value.to_string(),
                    s.witnesses.0.to_string(),
                    s.witnesses.1.to_string(),
                ])
                .map_err(csv_err)?;
            }
            wr.flush()?;
        }
        Format::Jsonl => {
            for s in &samples {
                writeln!(out, "{}", json(s)?)?;
            }
        }
        Format::Text => {
            for s in &samples {
                let bound = if s.is_exact() { "" } else { " (lower bound)" };
                writeln!(
                    out,
                    "n={} value={}{bound} witness=({}, {}) equal_pairs={} inconclusive={}",
                    s.n,
                    s.value,
                    s.witnesses.0.display_or_epsilon(),
                    s.witnesses.1.display_or_epsilon(),
                    s.equal_pairs,
                    s.inconclusive.len()
                )?;
            }
        }
    }
    Ok(if exact { EXIT_OK } else { EXIT_OUT_OF_FUEL })
}

/// Largest `k` replayed by `sigma --verify-naive`.
const NAIVE_K_LIMIT: usize = 4;

fn cmd_sigma(c: &SigmaCmd, out: &mut dyn Write) -> CmdResult {
    let mut kit = SequenceKit::new(c.n)?;
    let engine = MacroEngine::new(c.n)?;
    if c.verify_naive && c.k_max > NAIVE_K_LIMIT {
        return Err(Failure::Usage(format!("--verify-naive supports k-max up to {NAIVE_K_LIMIT}")));
    }
    let mut rows = Vec::new();
    for k in 1..=c.k_max.max(1) {
        let value = sigma(c.n, k)?;
        let charges = kit.phase_charges(k)?;
        if c.verify_macro {
            let run = engine.run_witness(k)?;
            if run.steps() != &value {
                return Err(Failure::Internal(format!("macro run for k = {k} took {} steps", run.steps())));
            }
        }
        if c.verify_naive {
            let pi = PiPresentation::new(c.n as usize).map_err(usage)?;
            let pair = witness(k)?;
            let fuel = &value + 1u32;
            let verdict = pair_run_oriented(pi.presentation(), &pair.u, &pair.v, fuel, RewriteSide::First);
            if verdict != PairVerdict::Equal(value.clone()) {
                return Err(Failure::Internal(format!("naive run for k = {k}: {verdict}")));
            }
        }
        rows.push((k, value, charges));
    }
    let verified = match (c.verify_macro, c.verify_naive) {
        (true, true) => "macro+naive",
        (true, false) => "macro",
        (false, true) => "naive",
        (false, false) => "",
    };
    match c.format {
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["k", "sigma", "opening", "descent", "collapse"]).map_err(csv_err)?;
            for (k, v, [a, b, d]) in &rows {
                wr.write_record([k.to_string(), v.to_string(), a.to_string(), b.to_string(), d.to_string()])
                    .map_err(csv_err)?;
            }
            wr.flush()?;
        }
        _ => {
            for (k, v, [a, b, d]) in &rows {
                write!(out, "k={k} sigma={v} phases={a}+{b}+{d}")?;
                if verified.is_empty() {
                    writeln!(out)?;
                } else {
                    writeln!(out, " verified={verified}")?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_sequences(c: &SequencesCmd, out: &mut dyn Write) -> CmdResult {
    let mut kit = SequenceKit::new(c.n)?;
    let mode = if c.closed_form { Mode::ClosedForm } else { Mode::Recurrence };
    let header: Vec<String> = std::iter::once("n".to_string())
        .chain(Sequence::ALL.iter().map(|s| s.symbol().to_string()))
        .collect();
    let rows: Vec<Vec<String>> = (0..=c.n_max)
        .map(|n| {
            std::iter::once(n.to_string())
                .chain(Sequence::ALL.iter().map(|&s| kit.value(s, n, mode).to_string()))
                .collect()
        })
        .collect();
    match c.format {
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(&header).map_err(csv_err)?;
            for r in &rows {
                wr.write_record(r).map_err(csv_err)?;
            }
            wr.flush()?;
        }
        _ => {
            for (i, name) in header.iter().enumerate().skip(1) {
                let values: Vec<&str> = rows.iter().map(|r| r[i].as_str()).collect();
                writeln!(out, "{name}: {}", values.join(", "))?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct MacroSummary {
    n: u64,
    k: usize,
    steps: serde_json::Value,
    verified_snapshots: Option<usize>,
}

fn json_number(n: &BigUint) -> serde_json::Value {
    match u64::try_from(n) {
        Ok(small) => small.into(),
        Err(_) => n.to_string().into(),
    }
}

fn cmd_macro(c: &MacroCmd, out: &mut dyn Write) -> CmdResult {
    let run = MacroEngine::new(c.n)?.run_witness(c.k)?;
    let verified = if c.verify_naive {
        Some(cross_validate(c.n, c.k)?)
    } else {
        None
    };
    match c.format {
        Format::Jsonl => {
            for e in &run.state.log {
                writeln!(out, "{}", json(e)?)?;
            }
            let summary = MacroSummary {
                n: c.n,
                k: c.k,
                steps: json_number(run.steps()),
                verified_snapshots: verified,
            };
            writeln!(out, "{}", json(&summary)?)?;
        }
        _ => {
            for e in &run.state.log {
                writeln!(
                    out,
                    "{}: charged {} -> step {}: ({}, {})",
                    e.op.name(),
                    e.charged,
                    e.steps_after,
                    e.left,
                    e.right
                )?;
            }
            writeln!(out, "Equal({})", run.steps())?;
            if let Some(n) = verified {
                writeln!(out, "verified {n} snapshots against the naive engine")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::Internal(e.to_string()))
}

fn cmd_collatz(c: &CollatzCmd, out: &mut dyn Write) -> CmdResult {
    if c.n < 2 {
        return Err(Failure::Usage(format!("N must be at least 2, got {}", c.n)));
    }
    let (states, outcome) = collatz_trajectory(c.n, c.m.clone(), c.mm.clone(), c.fuel);
    match c.format {
        Format::Csv => {
            let mut wr = csv_writer(out);
            wr.write_record(["step", "m", "n"]).map_err(csv_err)?;
            for (i, s) in states.iter().enumerate() {
                wr.write_record([i.to_string(), s.m.to_string(), s.n.to_string()]).map_err(csv_err)?;
            }
            wr.flush()?;
        }
        Format::Jsonl => {
            for (i, s) in states.iter().enumerate() {
                writeln!(out, "{{\"step\":{i},\"m\":\"{}\",\"n\":\"{}\"}}", s.m, s.n)?;
            }
        }
        Format::Text => {
            for (i, s) in states.iter().enumerate() {
                writeln!(out, "{i}: {s}")?;
            }
            writeln!(out, "{outcome}")?;
        }
    }
    Ok(if outcome.terminated() { EXIT_OK } else { EXIT_OUT_OF_FUEL })
}

fn cmd_classify(c: &ClassifyCmd, out: &mut dyn Write) -> CmdResult {
    let pres = c.rel.resolve()?;
    writeln!(out, "relation: {pres}")?;
    writeln!(out, "length change per move: {}", pres.length_delta())?;
    match pres.monadic_middle() {
        Some(middle) => {
            writeln!(out, "monadic: yes, U = {}", middle.display_or_epsilon())?;
            let rl = relative_length(pres.lhs()).map_err(usage)?;
            writeln!(out, "relative length of bUa: {rl}")?;
            let rf = is_residually_finite_monadic(&middle);
            writeln!(out, "residually finite: {}", if rf { "yes" } else { "no" })?;
        }
        None => writeln!(out, "monadic: no")?,
    }
    Ok(EXIT_OK)
}
