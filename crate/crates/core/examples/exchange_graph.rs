//! Breadth-first enumeration of exchange graphs for the bundled pairs.

use qclaw::graph::enumerate_exchange_graph;
use qclaw::seed::{bundled, ClassicalSeed, QuantumSeed};

fn main() {
    let depth = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    for (name, pair) in bundled::all() {
        let q = enumerate_exchange_graph(QuantumSeed::initial(pair.clone()), depth).unwrap();
        let c = enumerate_exchange_graph(ClassicalSeed::initial(pair.b_tilde().clone()), depth).unwrap();
        println!(
            "{name:<14} quantum: {} clusters {} variables {} edges closed={}   classical: {} clusters {} variables",
            q.num_seeds(),
            q.num_variables(),
            q.edges(),
            q.closed,
            c.num_seeds(),
            c.num_variables()
        );
    }
}
