//! Structural classification of monadic relations bUa = a.
use onerel::presentation::{is_residually_finite_monadic, relative_length};
use onerel::Presentation;

fn main() {
    for rel in ["bbba=a", "baa=a", "baababa=a", "b^2a^2=a", "bab=a"] {
        let p: Presentation = rel.parse().unwrap();
        match p.monadic_middle() {
            Some(u) => println!(
                "{rel:<10} U={:<6} relative length {} residually finite {}",
                u.display_or_epsilon(),
                relative_length(p.lhs()).unwrap(),
                is_residually_finite_monadic(&u)
            ),
            None => println!("{rel:<10} not monadic"),
        }
    }
}
