//! Expected values computed a second way: by hand expansion, brute force,
//! or through the commutative Laurent ring only.

use std::collections::BTreeSet;

use qclaw::grading::{degree_of, grading_lattice, GradingVector};
use qclaw::graph::enumerate_exchange_graph;
use qclaw::intlin::{dot, IntMatrix};
use qclaw::laurent::Laurent;
use qclaw::qtorus::TorusElement;
use qclaw::seed::{bundled, ClassicalSeed, QuantumSeed};
use qclaw::verify::{graded_dimension_report, rewrite_in_adjacent_frame, verify_power_identities, VerifyError};

fn x(m: usize, i: usize) -> Laurent {
    Laurent::var(m, i)
}

fn quo(a: &Laurent, b: &Laurent) -> Laurent {
    a.div_exact(b).unwrap()
}

#[test]
fn a2_recursion_by_hand() {
    // x_{n+1} x_{n-1} = x_n + 1, period 5
    let one = Laurent::one(2);
    let (x1, x2) = (x(2, 0), x(2, 1));
    let x3 = quo(&(&x2 + &one), &x1);
    let x4 = quo(&(&(&x1 + &x2) + &one), &(&x1 * &x2));
    let x5 = quo(&(&x1 + &one), &x2);
    let expected = [[&x3, &x2], [&x3, &x4], [&x5, &x4], [&x5, &x1], [&x2, &x1]];
    let mut c = ClassicalSeed::initial(bundled::a2().b_tilde().clone());
    let mut q = QuantumSeed::initial(bundled::a2());
    for (step, k) in [0, 1, 0, 1, 0].into_iter().enumerate() {
        c = c.mutate(k).unwrap();
        q = q.mutate(k).unwrap();
        for i in 0..2 {
            assert_eq!(&c.vars()[i], expected[step][i], "step {step}");
            assert_eq!(&q.vars()[i].specialize_q1(), expected[step][i], "step {step}");
        }
    }
}

#[test]
fn rank_one_exchange_by_hand() {
    // L = [[0,-1],[1,0]]: M(e1) M(-e1+e2) = q^{-1/2} M(e2), M(e1) M(-e1) = 1,
    // and the binomial is q^{m_+/2} M(e2) + 1 with m_+ = -1.
    let s = QuantumSeed::initial(bundled::rank_one_frozen());
    let f = s.frame();
    let t = s.mutate(0).unwrap();
    let new = &t.vars()[0];
    assert_eq!(new, &TorusElement::parse(f, "1 * M[-1,0] + 1 * M[-1,1]").unwrap());
    let lhs = &s.vars()[0] * new;
    assert_eq!(lhs, TorusElement::parse(f, "1 * M[0,0] + 1*q^(-1/2) * M[0,1]").unwrap());
    assert_eq!(new.specialize_q1(), quo(&(&x(2, 1) + &Laurent::one(2)), &x(2, 0)));
}

#[test]
fn a2_quantum_first_step_by_hand() {
    // column (0,-1): b_+ = 0, b_- = e2
    let s = QuantumSeed::initial(bundled::a2());
    let t = s.mutate(0).unwrap();
    assert_eq!(t.vars()[0], TorusElement::parse(s.frame(), "1 * M[-1,0] + 1 * M[-1,1]").unwrap());
}

/// Writes `v` in the row-echelon basis, or `None` if that is impossible over Z.
fn integer_coordinates(basis: &[GradingVector], v: &[i64]) -> Option<Vec<i64>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::new();
    for b in basis {
        let piv = b.0.iter().position(|&x| x != 0).unwrap();
        if rest[piv] % b.0[piv] != 0 {
            return None;
        }
        let c = rest[piv] / b.0[piv];
        for (r, &bi) in rest.iter_mut().zip(&b.0) {
            *r -= c * bi;
        }
        coords.push(c);
    }
    rest.iter().all(|&r| r == 0).then_some(coords)
}

fn box_vectors(m: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn lattices_against_brute_force() {
    let cases = [
        IntMatrix::new(&[&[0], &[1]]),
        bundled::a2().b_tilde().clone(),
        bundled::a2_principal().b_tilde().clone(),
        bundled::a3_principal().b_tilde().clone(),
        IntMatrix::new(&[&[0, 2], &[-2, 0], &[1, 1]]),
    ];
    for b in cases {
        let lat = grading_lattice(&b);
        for v in &lat.basis {
            assert!((0..b.cols()).all(|k| dot(&v.0, &b.col(k)) == 0));
        }
        for v in box_vectors(b.rows(), 2) {
            let in_kernel = (0..b.cols()).all(|k| dot(&v, &b.col(k)) == 0);
            assert_eq!(in_kernel, integer_coordinates(&lat.basis, &v).is_some(), "{b} {v:?}");
        }
    }
}

#[test]
fn degree_examples_by_dot_product() {
    let d = GradingVector(vec![1, 0]);
    let s = QuantumSeed::initial(bundled::rank_one_frozen());
    let new = s.mutate(0).unwrap().vars()[0].clone();
    // exponents (-1,1) and (-1,0) both pair to -1
    assert_eq!(degree_of(&new, &d), Ok(-1));
    assert_eq!(degree_of(&new.specialize_q1(), &d), Ok(-1));
}

/// Clusters as unordered sets, by a BFS that only uses classical mutation.
fn classical_clusters(b: &IntMatrix, depth: usize) -> (usize, usize) {
    let n = b.cols();
    let key = |s: &ClassicalSeed| s.vars()[..n].iter().map(|v| v.to_string()).collect::<BTreeSet<_>>();
    let start = ClassicalSeed::initial(b.clone());
    let mut seen = BTreeSet::from([key(&start)]);
    let mut frontier = vec![start];
    let mut vars: BTreeSet<String> = key(&frontier[0]);
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &frontier {
            for k in 0..n {
                let t = s.mutate(k).unwrap();
                let kt = key(&t);
                if seen.insert(kt.clone()) {
                    vars.extend(kt);
                    next.push(t);
                }
            }
        }
        frontier = next;
    }
    (seen.len(), vars.len())
}

#[test]
fn exchange_graph_counts_against_classical_bfs() {
    for (pair, depth) in [(bundled::a2(), 8), (bundled::rank_one_frozen(), 4), (bundled::a3_principal(), 10)] {
        let g = enumerate_exchange_graph(QuantumSeed::initial(pair.clone()), depth).unwrap();
        assert!(g.closed);
        assert_eq!((g.num_seeds(), g.num_variables()), classical_clusters(pair.b_tilde(), depth));
    }
    assert_eq!(classical_clusters(bundled::a2().b_tilde(), 8), (5, 5));
    let g = enumerate_exchange_graph(QuantumSeed::initial(bundled::a2()), 0).unwrap();
    assert_eq!(g.num_seeds(), 1);
}

#[test]
fn inverse_of_exchanged_variable_is_not_laurent() {
    // 1/x1 = x1'/(x2 + 1) in the ring of (x1', x2)
    let (x1p, x2) = (x(2, 0), x(2, 1));
    assert!(x1p.div_exact(&(&x2 + &Laurent::one(2))).is_err());
    let s = QuantumSeed::initial(bundled::rank_one_frozen());
    let inv = TorusElement::monomial(s.frame(), vec![-1, 0]);
    assert!(matches!(rewrite_in_adjacent_frame(&s, &inv, 0), Err(VerifyError::NotInAdjacentTorus { .. })));
}

#[test]
fn first_power_identity_by_hand() {
    // mutated frame L' = [[0,1],[-1,0]], b_+ = 0, b_- = e2, m_- = 1:
    // X'^{-1} (1 + q^{1/2} M(e2)) = M(-e1) + M(-e1+e2)
    let s = QuantumSeed::initial(bundled::rank_one_frozen());
    let t = s.mutate(0).unwrap();
    let x1 = rewrite_in_adjacent_frame(&s, &s.vars()[0], 0).unwrap();
    assert_eq!(x1, TorusElement::parse(t.frame(), "1 * M[-1,0] + 1 * M[-1,1]").unwrap());
    let inv = TorusElement::monomial(t.frame(), vec![-1, 0]);
    let q = TorusElement::parse(t.frame(), "1 * M[0,0] + 1*q^(1/2) * M[0,1]").unwrap();
    assert_eq!(&inv * &q, x1);
    assert!(verify_power_identities(&s, 0, 1).unwrap().passed());
}

#[test]
fn single_variable_degree_component() {
    let r = graded_dimension_report(&bundled::rank_one_frozen(), &GradingVector(vec![1, 0]), -1..=-1, 1, 1).unwrap();
    let row = &r.details.unwrap()["degrees"][0];
    // the only variable of degree -1 at depth 1 is (x2 + 1)/x1
    assert_eq!(row["products"], 1);
    assert_eq!(row["classical_dim"], 1);
    assert_eq!(row["quantum_rank"], 1);
}
