//! Quantum and classical mutation of A2 with principal coefficients.
//!
//! cargo run --example seed_mutation -- [path, e.g. 1,2,1]

use qclaw::seed::{bundled, ClassicalSeed, MutationPath, QuantumSeed};

fn main() {
    let path: MutationPath = std::env::args().nth(1).unwrap_or_else(|| "1,2,1".into()).parse().expect("comma-separated 1-based indices");
    let pair = bundled::a2_principal();
    let q = QuantumSeed::initial(pair.clone()).mutate_path(&path).unwrap();
    let c = ClassicalSeed::initial(pair.b_tilde().clone()).mutate_path(&path).unwrap();
    println!("path {path}");
    println!("lambda {}", q.pair().lambda());
    println!("b_tilde {}", q.pair().b_tilde());
    for (i, (x, y)) in q.vars().iter().zip(c.vars()).enumerate() {
        println!("X{} = {x}", i + 1);
        println!("x{} = {y}   (q=1 agrees: {})", i + 1, &x.specialize_q1() == y);
    }
    let back = q.mutate_path(&MutationPath(path.0.iter().rev().copied().collect())).unwrap();
    println!("undoing the path returns the initial seed: {}", back.vars() == QuantumSeed::initial(pair).vars());
}
