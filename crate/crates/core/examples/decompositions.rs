//! Prefix decompositions in M0 = ⟨a, b | b²a² = a⟩ and in Π_2.
use onerel::engine::{decompose, step};
use onerel::words::w;
use onerel::{PiPresentation, Presentation};

fn main() {
    let m0 = Presentation::m0();
    for word in ["bbbbabbaabbab", "bbabbababab", "bbabbabb"] {
        let d = decompose(&m0, &w(word));
        let next = step(&m0, &w(word)).map_or("headless".to_string(), |n| n.to_string());
        println!("{word:<14} {:<28} -> {next}", d.render(&m0, false));
    }
    let pi = PiPresentation::new(2).unwrap();
    let d = decompose(pi.presentation(), &w("(ba)^3aa"));
    println!("compact: {}", d.render(pi.presentation(), true));
}
