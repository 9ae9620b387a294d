//! Acceptance run: one line per criterion, exit status 1 if any is red.
//!
//! All comparisons are exact (tolerance 0); runtime limits are wall-clock
//! bounds on the criterion as run here.

use std::process::Command;
use std::time::{Duration, Instant};

use qclaw::grading::{check_homogeneous_mutation, grading_lattice, GradingVector};
use qclaw::graph::enumerate_exchange_graph;
use qclaw::intlin::IntMatrix;
use qclaw::seed::{bundled, ClassicalSeed, QuantumSeed};
use qclaw::verify::{
    graded_dimension_report, specialization_check, verify_domain_property, verify_laurent, verify_mutation_suite,
    verify_power_identities, verify_prop_key,
};

struct Outcome {
    pass: bool,
    note: String,
}

fn run(id: u32, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let started = Instant::now();
    let out = f();
    let took = started.elapsed();
    let in_time = limit.map_or(true, |l| took <= l);
    let pass = out.pass && in_time;
    let limit_text = limit.map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
    println!(
        "criterion {id}: {}  {title}  [{}]  tolerance=exact  runtime={:.2}s limit={limit_text}",
        if pass { "PASS" } else { "FAIL" },
        out.note,
        took.as_secs_f64(),
    );
    pass
}

fn ok(pass: bool, note: impl Into<String>) -> Outcome {
    Outcome { pass, note: note.into() }
}

fn main() {
    let mut all = true;
    let secs = Duration::from_secs;

    all &= run(1, "compatibility preserved with the same d; mu_k mu_k = id", Some(secs(10)), || {
        let mut cases = 0;
        for (i, (name, pair)) in bundled::all().into_iter().enumerate() {
            let r = verify_mutation_suite(&pair, 200, 8, 1000 + i as u64).unwrap();
            cases += r.cases_run;
            if !r.passed() {
                return ok(false, format!("{name}: {:?}", r.witnesses.first()));
            }
        }
        ok(true, format!("4 pairs x 200 sequences, {cases} steps"))
    });

    all &= run(2, "quantum Laurent phenomenon, every path of length <= 6", Some(secs(60)), || {
        let mut cases = 0;
        for (name, pair) in bundled::all() {
            let r = verify_laurent(&pair, 6).unwrap();
            cases += r.cases_run;
            if !r.passed() {
                return ok(false, format!("{name}: {:?}", r.witnesses.first()));
            }
        }
        ok(cases >= 500, format!("{cases} variable computations"))
    });

    all &= run(3, "specialization at q=1 equals the classical variable", None, || {
        let cases = [("A2", bundled::a2(), 10, Some(5)), ("A2-principal", bundled::a2_principal(), 10, Some(5)), ("A3-principal", bundled::a3_principal(), 6, None)];
        let mut notes = Vec::new();
        for (name, pair, depth, seeds) in cases {
            let r = specialization_check(&pair, depth).unwrap();
            let det = r.details.clone().unwrap();
            let n = det["quantum_seeds"].as_u64().unwrap() as usize;
            if !r.passed() || seeds.is_some_and(|s| s != n || det["closed"] != true) {
                return ok(false, format!("{name}: {:?} seeds={n}", r.witnesses.first()));
            }
            notes.push(format!("{name}: {n} seeds, {} vars", det["quantum_variables"]));
        }
        ok(true, notes.join("; "))
    });

    all &= run(4, "power identities (l <= 4) and p-divisibility symmetry (100 samples each way)", Some(secs(60)), || {
        let mut cases = 0;
        for (name, pair) in bundled::all() {
            let s = QuantumSeed::initial(pair.clone());
            for k in 0..pair.n_ex() {
                let a = verify_power_identities(&s, k, 4).unwrap();
                let b = verify_prop_key(&s, k, 100, 42 + k as u64).unwrap();
                cases += a.cases_run + b.cases_run;
                if !a.passed() || !b.passed() || b.cases_run != 200 {
                    return ok(false, format!("{name} k={}: {:?} {:?}", k + 1, a.witnesses.first(), b.witnesses.first()));
                }
            }
        }
        ok(true, format!("{cases} identity and sample checks"))
    });

    all &= run(5, "grading lattices; homogeneity and exchange balance", None, || {
        let v = |x: &[i64]| GradingVector(x.to_vec());
        let bases = grading_lattice(&IntMatrix::new(&[&[0], &[1]])).basis == vec![v(&[1, 0])]
            && grading_lattice(bundled::a2_principal().b_tilde()).basis == vec![v(&[1, 0, 0, -1]), v(&[0, 1, 1, 0])]
            && grading_lattice(bundled::a2().b_tilde()).is_zero();
        if !bases {
            return ok(false, "lattice bases differ");
        }
        let mut relations = 0;
        let mut runs = vec![
            (bundled::rank_one_frozen(), v(&[1, 0])),
            (bundled::a2(), v(&[0, 0])),
            (bundled::a2_principal(), v(&[1, 0, 0, -1])),
            (bundled::a2_principal(), v(&[0, 1, 1, 0])),
        ];
        let a3 = bundled::a3_principal();
        for b in grading_lattice(a3.b_tilde()).basis {
            runs.push((a3.clone(), b));
        }
        for (pair, d) in runs {
            match check_homogeneous_mutation(&pair, &d, 6) {
                Ok(r) => relations += r.relations_checked,
                Err(e) => return ok(false, e.to_string()),
            }
        }
        ok(true, format!("bases match; {relations} exchange relations balanced"))
    });

    all &= run(6, "classical dimension = quantum rank, A2-principal, d=(1,0,0,-1), degrees -4..4", Some(secs(120)), || {
        let r = graded_dimension_report(&bundled::a2_principal(), &GradingVector(vec![1, 0, 0, -1]), -4..=4, 6, 4).unwrap();
        let dims: Vec<String> = r.details.as_ref().unwrap()["degrees"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| format!("{}:{}/{}", row["degree"], row["classical_dim"], row["quantum_rank"]))
            .collect();
        ok(r.passed(), format!("depth 6, <= 4 factors; {}", dims.join(" ")))
    });

    all &= run(7, "p-divisible product has a p-divisible factor", None, || {
        let r = verify_domain_property(500, 7).unwrap();
        ok(r.passed(), format!("{} pairs sampled, 500 with divisible product", r.details.unwrap()["pairs_sampled"]))
    });

    all &= run(8, "byte-identical JSON reports across runs and thread counts", None, || {
        let seeds = concat!(env!("CARGO_MANIFEST_DIR"), "/seeds");
        let runs = [
            ("a2_principal.json", vec!["--check", "propkey", "--depth", "1", "--samples", "10", "--rng-seed", "9"]),
            ("a2_principal.json", vec!["--check", "graded", "--depth", "6", "--max-factors", "3"]),
            ("a3_principal.json", vec!["--check", "specialization", "--depth", "4"]),
        ];
        for (file, args) in runs {
            let mut outputs = Vec::new();
            for threads in ["1", "4", "4"] {
                let out = Command::new(env!("CARGO_BIN_EXE_qclaw"))
                    .arg("verify")
                    .arg(format!("{seeds}/{file}"))
                    .args(&args)
                    .env("QCLAW_THREADS", threads)
                    .output()
                    .expect("binary runs");
                if !out.status.success() {
                    return ok(false, format!("{file} {args:?} exited {:?}", out.status.code()));
                }
                outputs.push(out.stdout);
            }
            if outputs.windows(2).any(|w| w[0] != w[1]) {
                return ok(false, format!("{file} {args:?} differs between runs"));
            }
        }
        ok(true, "3 reports x 3 runs (1 and 4 threads)")
    });

    // enumerator sanity used by criterion 3's counts
    let g = enumerate_exchange_graph(ClassicalSeed::initial(bundled::a2().b_tilde().clone()), 10).unwrap();
    assert_eq!(g.num_seeds(), 5);

    if all {
        println!("acceptance: all criteria PASS");
    } else {
        println!("acceptance: some criteria FAIL");
        std::process::exit(1);
    }
}
