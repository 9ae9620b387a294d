//! Every mutation sequence up to a given length stays inside the initial
//! quantum torus.

use qclaw::seed::bundled;
use qclaw::verify::{summary, verify_laurent};

fn main() {
    let depth = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for (name, pair) in bundled::all() {
        println!("{name}: {}", summary(&verify_laurent(&pair, depth).unwrap()));
    }
}
