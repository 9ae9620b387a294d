//! Exact arithmetic in `R = Q[q^{1/2}, q^{-1/2}]`.
//!
//! A [`QCoeff`] is a finite sum `sum_k c_k q^{k/2}` with rational `c_k`.
//! Exponents are stored as the integer `k`, so `q^{1/2}` is the primitive
//! variable and `q = q^{2/2}`. The prime `p = q^{1/2} - 1` plays a special
//! role: reduction modulo `p` is evaluation at `q^{1/2} = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational numbers used for every coefficient in the crate.
pub type Rational = BigRational;

/// Convenience constructor for integer-valued rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QCoeffError {
    #[error("{dividend} is not divisible by {divisor} in Q[q^(+-1/2)]")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse coefficient `{0}`")]
    Parse(String),
}

/// `p`-adic valuation with `p = q^{1/2} - 1`. Zero has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_divisible(self) -> bool {
        self >= Valuation::Finite(1)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// An element of `R = Q[q^{+-1/2}]` in canonical sparse form.
///
/// Keys are half-exponents: the entry `k -> c` stands for `c * q^{k/2}`.
/// No stored coefficient is zero, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QCoeff {
    terms: BTreeMap<i64, Rational>,
}

impl QCoeff {
    pub fn zero() -> Self {
        QCoeff { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `c * q^{half_exp/2}`.
    pub fn term(c: Rational, half_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half_exp, c);
        }
        QCoeff { terms }
    }

    /// The unit `q^{half_exp/2}`.
    pub fn q_pow(half_exp: i64) -> Self {
        Self::term(Rational::one(), half_exp)
    }

    /// The prime `p = q^{1/2} - 1`.
    pub fn p() -> Self {
        Self::from_terms([(0, rat(-1)), (1, rat(1))])
    }

    /// Builds an element from `(half_exp, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut out = QCoeff::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    /// Integer-coefficient shorthand: `from_ints(&[(k, c), ...])`.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(k, c)| (k, rat(c))))
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(half_exp, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, half_exp: i64) -> Rational {
        self.terms.get(&half_exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn leading(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// Multiplies by the unit `q^{half_exp/2}`.
    pub fn shift(&self, half_exp: i64) -> Self {
        QCoeff {
            terms: self.terms.iter().map(|(k, c)| (k + half_exp, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return QCoeff::zero();
        }
        QCoeff {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// True for `c * q^{k/2}` with `c != 0`, the units of `R`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QCoeff::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q^{1/2} = 1`; the ring homomorphism `R -> R/pR = Q`.
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Exact quotient `self / divisor` in `R`.
    ///
    /// Long division on leading terms. The quotient exponents are confined to
    /// `[min(self) - min(divisor), max(self) - max(divisor)]`; stepping below
    /// that window proves non-divisibility.
    pub fn div_exact(&self, divisor: &QCoeff) -> Result<QCoeff, QCoeffError> {
        let (dk, dc) = divisor.leading().ok_or(QCoeffError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(QCoeff::zero());
        }
        let dmin = divisor.min_exponent().unwrap();
        let lo = self.min_exponent().unwrap() - dmin;
        let not_divisible = || QCoeffError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let mut rem = self.clone();
        let mut quot = QCoeff::zero();
        while let Some((rk, rc)) = rem.leading() {
            let e = rk - dk;
            if e < lo {
                return Err(not_divisible());
            }
            let c = rc / dc;
            for (k, v) in divisor.terms() {
                rem.add_term(k + e, -(v * &c));
            }
            quot.add_term(e, c);
        }
        Ok(quot)
    }

    /// Largest `v` with `p^v | self`; infinite for zero.
    pub fn p_valuation(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let mut v = 0;
        let mut cur = self.clone();
        while cur.eval_at_one().is_zero() {
            cur = cur.divide_by_p_exact().expect("vanishing at 1 implies divisibility by p");
            v += 1;
        }
        Valuation::Finite(v)
    }

    /// `self / (q^{1/2} - 1)`, failing when `self` does not vanish at 1.
    pub fn divide_by_p_exact(&self) -> Result<QCoeff, QCoeffError> {
        if !self.eval_at_one().is_zero() {
            return Err(QCoeffError::NotDivisible {
                dividend: self.to_string(),
                divisor: QCoeff::p().to_string(),
            });
        }
        self.div_exact(&QCoeff::p())
    }
}

impl fmt::Debug for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QCoeff({self})")
    }
}

impl fmt::Display for QCoeff {
    /// Canonical text: ascending exponents, `c*q^(k/2)` per term, the bare
    /// rational for `k = 0`, terms joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*q^({k}/2)")?;
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

fn parse_term(s: &str) -> Option<(i64, Rational)> {
    match s.split_once("*q^(") {
        Some((c, rest)) => {
            let c = parse_rational(c)?;
            let inner = rest.trim().strip_suffix(')')?;
            let (k, two) = inner.split_once('/')?;
            if two.trim() != "2" {
                return None;
            }
            Some((k.trim().parse().ok()?, c))
        }
        None => Some((0, parse_rational(s)?)),
    }
}

impl FromStr for QCoeff {
    type Err = QCoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || QCoeffError::Parse(s.to_string());
        let body = s.trim();
        if body.is_empty() {
            return Err(err());
        }
        let mut out = QCoeff::zero();
        for piece in body.split('+') {
            let (k, c) = parse_term(piece.trim()).ok_or_else(err)?;
            out.add_term(k, c);
        }
        Ok(out)
    }
}

impl Serialize for QCoeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QCoeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for QCoeff {
    fn from(c: Rational) -> Self {
        QCoeff::constant(c)
    }
}

impl From<i64> for QCoeff {
    fn from(n: i64) -> Self {
        QCoeff::from_int(n)
    }
}

impl<'a> Add<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: &QCoeff) -> QCoeff {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QCoeff {
    type Output = QCoeff;
    fn add(mut self, rhs: QCoeff) -> QCoeff {
        self += &rhs;
        self
    }
}

impl AddAssign<&QCoeff> for QCoeff {
    fn add_assign(&mut self, rhs: &QCoeff) {
        for (k, c) in rhs.terms() {
            self.add_term(k, c.clone());
        }
    }
}

impl SubAssign<&QCoeff> for QCoeff {
    fn sub_assign(&mut self, rhs: &QCoeff) {
        for (k, c) in rhs.terms() {
            self.add_term(k, -c.clone());
        }
    }
}

impl<'a> Sub<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: &QCoeff) -> QCoeff {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QCoeff {
    type Output = QCoeff;
    fn sub(mut self, rhs: QCoeff) -> QCoeff {
        self -= &rhs;
        self
    }
}

impl Neg for &QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        QCoeff {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        -&self
    }
}

impl<'a> Mul<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: &QCoeff) -> QCoeff {
        let mut out = QCoeff::zero();
        for (ka, ca) in self.terms() {
            for (kb, cb) in rhs.terms() {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }
}

impl Mul for QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: QCoeff) -> QCoeff {
        &self * &rhs
    }
}
