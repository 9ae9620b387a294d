//! Samples products divisible by p and checks that a factor already was.

use qclaw::verify::{summary, verify_domain_property};

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let r = verify_domain_property(n, 1).unwrap();
    println!("{}", summary(&r));
    println!("{}", serde_json::to_string_pretty(&r.details).unwrap());
}
