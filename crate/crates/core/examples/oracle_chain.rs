//! Brute-force shortest chain for (U_1, V_1), compared with the engine.
use onerel::engine::pair_run;
use onerel::oracle::{shortest_chain_with, SearchLimits};
use onerel::pi::witness;
use onerel::PiPresentation;

fn main() {
    let pi = PiPresentation::new(2).unwrap();
    let p = pi.presentation();
    let pair = witness(1).unwrap();
    let chain = shortest_chain_with(p, &pair.u, &pair.v, &SearchLimits::depth(8))
        .expect("within budget")
        .expect("chain exists");
    for word in &chain.words {
        println!("{word}");
    }
    println!("oracle {} / engine {}", chain.distance, pair_run(p, &pair.u, &pair.v, 100u32));
}
