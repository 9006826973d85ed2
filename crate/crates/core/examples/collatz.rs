//! Trajectories of the Collatz-like map f_N.
use onerel::pi::{collatz_run, collatz_trajectory};

fn main() {
    let (states, out) = collatz_trajectory(2, 2u32, 1u32, 100);
    for (i, s) in states.iter().enumerate() {
        println!("{i}: {s}");
    }
    println!("{out}");
    let longest = (1..=60u32)
        .flat_map(|m| (1..=60u32).map(move |n| (m, n)))
        .map(|(m, n)| (collatz_run(3, m, n, 1_000_000).steps(), m, n))
        .max()
        .unwrap();
    println!("N=3, m,n <= 60: longest run {} steps from ({}, {})", longest.0, longest.1, longest.2);
}
