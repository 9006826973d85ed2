//! The six step-count sequences, recurrence against closed form.
use onerel::pi::{descent_cost_as_printed, Mode, Sequence, SequenceKit};

fn main() {
    let mut kit = SequenceKit::new(3).unwrap();
    for seq in Sequence::ALL {
        let rec: Vec<String> = (0..=6).map(|n| kit.value(seq, n, Mode::Recurrence).to_string()).collect();
        let agree = (0..=30).all(|n| kit.value(seq, n, Mode::Recurrence) == kit.value(seq, n, Mode::ClosedForm));
        println!("{:>2}: {}  closed form agrees: {agree}", seq.symbol(), rec.join(", "));
    }
    let n = kit.n_param().clone();
    println!("N^(2n)+2 at n=1: {} vs t'(1) = {}", descent_cost_as_printed(&n, 1), kit.recurrence(Sequence::DescentCost, 1));
}
