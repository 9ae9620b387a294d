//! Classical dimension against quantum rank, degree by degree.
//!
//! cargo run --release --example graded_dimensions -- [max_factors]

use qclaw::grading::GradingVector;
use qclaw::seed::bundled;
use qclaw::verify::graded_dimension_report;

fn main() {
    let max_factors = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let pair = bundled::a2_principal();
    let d = GradingVector(vec![1, 0, 0, -1]);
    let r = graded_dimension_report(&pair, &d, -4..=4, 6, max_factors).expect("d is a grading vector");
    println!("A2 with principal coefficients, d = {d}, at most {max_factors} factors");
    println!("{:>6} {:>9} {:>10} {:>8} {:>12}", "degree", "products", "classical", "quantum", "specialized");
    for row in r.details.as_ref().unwrap()["degrees"].as_array().unwrap() {
        println!(
            "{:>6} {:>9} {:>10} {:>8} {:>12}",
            row["degree"], row["products"], row["classical_dim"], row["quantum_rank"], row["specialized_rank"]
        );
    }
    println!("status: {:?} ({} ms)", r.status, r.millis);
}
