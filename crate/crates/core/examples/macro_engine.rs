//! Macro-engine runs far beyond what the naive engine can expand.
use onerel::pi::{cross_validate, MacroEngine};

fn main() {
    let run = MacroEngine::new(2).unwrap().run_witness(3).unwrap();
    for e in &run.state.log {
        println!("{:<9} +{:<4} step {:<4} ({}, {})", e.op.name(), e.charged, e.steps_after, e.left, e.right);
    }
    println!("snapshots checked against naive engine: {}", cross_validate(2, 3).unwrap());

    let big = MacroEngine::new(10).unwrap().run_witness(30).unwrap();
    println!("N=10 k=30: {} steps", big.steps());
}
