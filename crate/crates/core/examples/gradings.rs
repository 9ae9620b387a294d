//! Grading lattices and the degrees of cluster variables under mutation.

use qclaw::grading::{check_homogeneous_mutation, grading_lattice};
use qclaw::seed::bundled;

fn main() {
    for (name, pair) in bundled::all() {
        let lat = grading_lattice(pair.b_tilde());
        let basis: Vec<String> = lat.basis.iter().map(|v| v.to_string()).collect();
        println!("{name}: rank {} basis [{}]", lat.rank(), basis.join(" "));
        for d in &lat.basis {
            let r = check_homogeneous_mutation(&pair, d, 3).unwrap();
            println!("  d = {d}: {} seeds, {} relations balanced", r.seeds, r.relations_checked);
            for v in r.degrees.iter().filter(|v| v.path.len() == 1) {
                println!("    after mu{}: x{} has degree {}", v.path, v.index, v.degree);
            }
        }
    }
}
