//! Products, exact division and q=1 specialization in a rank-2 quantum torus.

use qclaw::intlin::IntMatrix;
use qclaw::qcoeff::QCoeff;
use qclaw::qtorus::{ToricFrame, TorusElement};

fn main() {
    let f = ToricFrame::new(IntMatrix::new(&[&[0, 1], &[-1, 0]]), "demo").unwrap();
    let x1 = TorusElement::generator(&f, 0);
    let x2 = TorusElement::generator(&f, 1);
    println!("X1 X2 = {}", &x1 * &x2);
    println!("X2 X1 = {}", &x2 * &x1);

    let a = &x1 + &TorusElement::one(&f);
    let b = &x2 + &TorusElement::scalar(&f, QCoeff::q_pow(1));
    let ab = &a * &b;
    println!("(X1 + 1)(X2 + q^(1/2)) = {ab}");
    println!("left divided by X1 + 1: {}", ab.left_divide_exact(&a).unwrap());
    println!("at q = 1: {}", ab.specialize_q1());

    let p = TorusElement::scalar(&f, QCoeff::p());
    let pab = &p * &ab;
    println!("p-adic valuation of p*(..): {:?}", pab.p_divisible());
    println!("divided by p again: {}", pab.divide_by_p_exact().unwrap() == ab);
}
