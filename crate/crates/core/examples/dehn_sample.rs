//! Dehn function samples of Π_2 for small total lengths.
use onerel::oracle::{dehn_function_at, DehnConfig};
use onerel::PiPresentation;

fn main() {
    let pi = PiPresentation::new(2).unwrap();
    let config = DehnConfig { fuel: 2_000, ..DehnConfig::default() };
    for n in 2..=12 {
        let s = dehn_function_at(pi.presentation(), n, &config).expect("engine only");
        println!(
            "n={n:>2} value={:>2} witness=({}, {}) exact={}",
            s.value,
            s.witnesses.0.display_or_epsilon(),
            s.witnesses.1.display_or_epsilon(),
            s.is_exact()
        );
    }
}
