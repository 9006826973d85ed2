//! σ_N(k) for a few N, with the phase split and the implied lower bound.
use onerel::pi::{lower_bound_check, sigma, SequenceKit};

fn main() {
    for n in [2u64, 3, 4] {
        let mut kit = SequenceKit::new(n).unwrap();
        for k in 1..=7 {
            let [a, b, c] = kit.phase_charges(k).unwrap();
            println!("N={n} k={k} sigma={} ({a}+{b}+{c})", sigma(n, k).unwrap());
        }
    }
    println!("Dehn function of Π_2 at 60 is at least {}", lower_bound_check(2, 60).unwrap());
}
