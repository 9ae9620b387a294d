//! Power identities of the exchange binomial and the p-divisibility symmetry
//! between adjacent tori, on every exchangeable index.
//!
//! cargo run --release --example identities -- [samples] [rng_seed]

use qclaw::seed::{bundled, QuantumSeed};
use qclaw::verify::{summary, verify_power_identities, verify_prop_key};

fn main() {
    let mut args = std::env::args().skip(1);
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let rng_seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    for (name, pair) in bundled::all() {
        let s = QuantumSeed::initial(pair.clone());
        for k in 0..pair.n_ex() {
            let a = verify_power_identities(&s, k, 4).unwrap();
            let b = verify_prop_key(&s, k, samples, rng_seed).unwrap();
            println!("{name} k={}: {} | {}", k + 1, summary(&a), summary(&b));
        }
    }
}
