//! Left divisibility: a terminating run, a headless run, and a divergent one.
use onerel::engine::{run_divisibility, trace_word};
use onerel::words::{w, Letter};
use onerel::{PiPresentation, Presentation};

fn main() {
    let m0 = Presentation::m0();
    println!("{}", run_divisibility(&m0, &w("bbbbabbaabbab"), Letter::A, 10u32));
    println!("{}", run_divisibility(&m0, &w("ba"), Letter::A, 8u32));

    let pi = PiPresentation::new(2).unwrap();
    let t = trace_word(pi.presentation(), &w("bbaaa"), 10u32, false);
    print!("{}", t.to_text());
    println!("{}", t.verdict);
}
