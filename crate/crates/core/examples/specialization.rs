//! Compares every quantum cluster variable at q = 1 with its classical twin.

use qclaw::seed::bundled;
use qclaw::verify::{specialization_check, summary};

fn main() {
    for (name, pair) in bundled::all() {
        let r = specialization_check(&pair, 8).unwrap();
        println!("{name}: {}", summary(&r));
    }
}
