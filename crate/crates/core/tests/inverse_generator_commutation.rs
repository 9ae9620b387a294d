//! `X'^{-1} M(b_+) = q^{-m_+} M(b_+) X'^{-1}`, with the frame where `X'`
//! is a generator taken to be that of the original rank-one pair.

use qclaw::qcoeff::QCoeff;
use qclaw::qtorus::TorusElement;
use qclaw::seed::{bundled, ExchangeBinomial, QuantumSeed};
use qclaw::verify::{rewrite_in_adjacent_frame, verify_power_identities};

#[test]
fn m_plus_is_minus_one_and_factor_is_q() {
    let pair = bundled::rank_one_frozen();
    let bin = ExchangeBinomial::new(&pair, 0).unwrap();
    assert_eq!(bin.m_plus, -1);
    assert_eq!(bin.b_plus, vec![0, 1]);
    let s = QuantumSeed::initial(pair);
    let f = s.frame();
    let xp_inv = TorusElement::monomial(f, vec![-1, 0]);
    let b_plus = TorusElement::monomial(f, bin.b_plus.clone());
    let q = QCoeff::q_pow(2);
    assert_eq!(&xp_inv * &b_plus, (&b_plus * &xp_inv).scalar_mul(&q));
    assert_eq!(QCoeff::q_pow(-2 * bin.m_plus), q);
}

#[test]
fn checked_from_the_mutated_seed() {
    // seen from mu_1, the adjacent frame is the original one
    let t = QuantumSeed::initial(bundled::rank_one_frozen()).mutate(0).unwrap();
    let r = verify_power_identities(&t, 0, 4).unwrap();
    assert!(r.passed());
    assert_eq!(r.details.unwrap()["m_plus"], -1);
    let back = rewrite_in_adjacent_frame(&t, &TorusElement::generator(t.frame(), 0), 0).unwrap();
    assert_eq!(back, t.vars()[0]);
}
