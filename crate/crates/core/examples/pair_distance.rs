//! Dehn distance of (U_1, V_1) in Π_2 from the pair algorithm, with trace.
use onerel::engine::{trace_pair, RewriteSide};
use onerel::pi::witness;
use onerel::PiPresentation;

fn main() {
    let pi = PiPresentation::new(2).unwrap();
    let pair = witness(1).unwrap();
    let t = trace_pair(pi.presentation(), &pair.u, &pair.v, 100u32, RewriteSide::First);
    print!("{}", t.to_text());
    println!("{}", t.verdict);
    print!("{}", t.to_jsonl().lines().next().unwrap_or_default());
    println!();
}
