//! Parsing power notation, printing, and block compression.
use onerel::words::{compress, parse_word};

fn main() {
    for text in ["ab^2a^2a", "(ba)^3aa", "b^7 a^8 · baa", "ε"] {
        let w = parse_word(text).expect("valid word");
        println!("{text:>14} -> {:<20} len {:>2}  blocks {}", w.display_or_epsilon(), w.len(), compress(&w));
    }
    match parse_word("ab^0") {
        Ok(_) => unreachable!(),
        Err(e) => println!("ab^0 rejected: {e}"),
    }
}
