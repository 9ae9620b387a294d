//! Based quantum tori over `R = Q[q^{+-1/2}]`.
//!
//! A [`ToricFrame`] fixes a skew-symmetric commutation matrix `L`. Elements
//! are finite `R`-combinations of normalized monomials `M(c)`, `c in Z^m`,
//! multiplied by
//!
//! ```text
//! M(a) M(b) = q^{L(a,b)/2} M(a + b),    L(a,b) = a^T L b.
//! ```
//!
//! The generators `X_i = M(e_i)` then satisfy `X_i X_j = q^{l_ij} X_j X_i`.
//! The ordered monomial `X_1^{a_1} ... X_m^{a_m}` equals
//! `q^{s(a)/2} M(a)` with `s(a) = sum_{i<j} a_i a_j l_ij`; see
//! [`ToricFrame::ordering_shift`] and [`TorusElement::to_ordered_basis`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::intlin::IntMatrix;
use crate::laurent::{write_monomial, Laurent};
use crate::qcoeff::{QCoeff, QCoeffError, Valuation};

pub type ExponentVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("commutation matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("exponent vector has length {found}, frame rank is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("elements live on different frames `{0}` and `{1}`")]
    FrameMismatch(String, String),
    #[error("no exact quotient: {0}")]
    NotDivisible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse torus element: {0}")]
    Parse(String),
}

/// Commutation data of one based quantum torus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ToricFrame {
    commutation: IntMatrix,
    label: String,
}

impl ToricFrame {
    pub fn new(commutation: IntMatrix, label: impl Into<String>) -> Result<Arc<Self>, TorusError> {
        if let Some((i, j)) = commutation.first_skew_violation() {
            return Err(TorusError::NotSkewSymmetric(i, j));
        }
        Ok(Arc::new(ToricFrame { commutation, label: label.into() }))
    }

    pub fn rank(&self) -> usize {
        self.commutation.rows()
    }

    pub fn commutation(&self) -> &IntMatrix {
        &self.commutation
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `L(a, b) = a^T L b`.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        self.commutation.bilinear(a, b)
    }

    fn check_len(&self, v: &[i64]) -> Result<(), TorusError> {
        if v.len() != self.rank() {
            return Err(TorusError::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// `M(a) M(b) = q^{L(a,b)/2} M(a+b)`, returned as `(q^{L(a,b)/2}, a + b)`.
    pub fn monomial_mul(&self, a: &[i64], b: &[i64]) -> Result<(QCoeff, ExponentVector), TorusError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let sum = a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok((QCoeff::q_pow(self.form(a, b)), sum))
    }

    /// `s(a)` with `X_1^{a_1} ... X_m^{a_m} = q^{s(a)/2} M(a)`.
    pub fn ordering_shift(&self, a: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                s += a[i] * a[j] * self.commutation[(i, j)];
            }
        }
        s
    }
}

impl fmt::Debug for ToricFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ToricFrame({}: {})", self.label, self.commutation)
    }
}

fn same_frame(a: &Arc<ToricFrame>, b: &Arc<ToricFrame>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn vadd(a: &[i64], b: &[i64]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vsub(a: &[i64], b: &[i64]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Finite sum `sum_c r_c M(c)` over one frame. Terms are kept in lex order
/// with index 0 most significant, which is the order used for division.
#[derive(Clone)]
pub struct TorusElement {
    frame: Arc<ToricFrame>,
    terms: BTreeMap<ExponentVector, QCoeff>,
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        same_frame(&self.frame, &other.frame) && self.terms == other.terms
    }
}

impl Eq for TorusElement {}

impl TorusElement {
    pub fn zero(frame: &Arc<ToricFrame>) -> Self {
        TorusElement { frame: frame.clone(), terms: BTreeMap::new() }
    }

    pub fn one(frame: &Arc<ToricFrame>) -> Self {
        Self::monomial(frame, vec![0; frame.rank()])
    }

    pub fn monomial(frame: &Arc<ToricFrame>, exp: ExponentVector) -> Self {
        Self::term(frame, QCoeff::one(), exp)
    }

    pub fn term(frame: &Arc<ToricFrame>, c: QCoeff, exp: ExponentVector) -> Self {
        assert_eq!(exp.len(), frame.rank(), "exponent length must match frame rank");
        let mut out = Self::zero(frame);
        out.add_term(exp, c);
        out
    }

    pub fn scalar(frame: &Arc<ToricFrame>, c: QCoeff) -> Self {
        Self::term(frame, c, vec![0; frame.rank()])
    }

    /// `X_i = M(e_i)`, 0-based.
    pub fn generator(frame: &Arc<ToricFrame>, i: usize) -> Self {
        let mut e = vec![0; frame.rank()];
        e[i] = 1;
        Self::monomial(frame, e)
    }

    pub fn from_terms<I>(frame: &Arc<ToricFrame>, it: I) -> Result<Self, TorusError>
    where
        I: IntoIterator<Item = (ExponentVector, QCoeff)>,
    {
        let mut out = Self::zero(frame);
        for (e, c) in it {
            frame.check_len(&e)?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, exp: ExponentVector, c: QCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn frame(&self) -> &Arc<ToricFrame> {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.frame.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &QCoeff)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> QCoeff {
        self.terms.get(exp).cloned().unwrap_or_else(QCoeff::zero)
    }

    fn leading(&self) -> Option<(&ExponentVector, &QCoeff)> {
        self.terms.iter().next_back()
    }

    fn check_frame(&self, other: &TorusElement) -> Result<(), TorusError> {
        if same_frame(&self.frame, &other.frame) {
            Ok(())
        } else {
            Err(TorusError::FrameMismatch(self.frame.label.clone(), other.frame.label.clone()))
        }
    }

    /// Same coordinates, attached to another frame of equal rank.
    ///
    /// Meaningful when the two frames share the monomials in question, e.g.
    /// monomials not involving the mutated direction of adjacent seeds.
    pub fn with_frame(&self, frame: &Arc<ToricFrame>) -> Result<TorusElement, TorusError> {
        if frame.rank() != self.rank() {
            return Err(TorusError::DimensionMismatch { expected: frame.rank(), found: self.rank() });
        }
        Ok(TorusElement { frame: frame.clone(), terms: self.terms.clone() })
    }

    pub fn try_add(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.check_frame(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &TorusElement) -> Result<TorusElement, TorusError> {
        self.check_frame(other)?;
        let mut out = TorusElement::zero(&self.frame);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let shift = self.frame.form(ea, eb);
                out.add_term(vadd(ea, eb), (ca * cb).shift(shift));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &QCoeff) -> TorusElement {
        let mut out = TorusElement::zero(&self.frame);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> TorusElement {
        let mut acc = TorusElement::one(&self.frame);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Per-coordinate `(min, max)` of the support.
    fn exponent_box(&self) -> Vec<(i64, i64)> {
        (0..self.rank())
            .map(|i| {
                let it = self.terms.keys().map(|e| e[i]);
                (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
            })
            .collect()
    }

    /// `h` with `divisor * h = self`.
    pub fn left_divide_exact(&self, divisor: &TorusElement) -> Result<TorusElement, TorusError> {
        self.divide_exact(divisor, Side::Left)
    }

    /// `h` with `h * divisor = self`.
    pub fn right_divide_exact(&self, divisor: &TorusElement) -> Result<TorusElement, TorusError> {
        self.divide_exact(divisor, Side::Right)
    }

    /// Leading-term division in lex order.
    ///
    /// The torus is a domain graded by `Z^m`, so extreme terms multiply:
    /// the quotient support is confined to the box between the per-coordinate
    /// extremes of dividend and divisor. Leaving it, or a coefficient step
    /// failing in `R`, proves there is no quotient.
    fn divide_exact(&self, divisor: &TorusElement, side: Side) -> Result<TorusElement, TorusError> {
        self.check_frame(divisor)?;
        let (gexp, gc) = divisor.leading().ok_or(TorusError::DivisionByZero)?;
        let (gexp, gc) = (gexp.clone(), gc.clone());
        if self.is_zero() {
            return Ok(TorusElement::zero(&self.frame));
        }
        let fail = |why: &str| {
            TorusError::NotDivisible(format!("{} by {} ({why})", self, divisor))
        };
        let window: Vec<(i64, i64)> = self
            .exponent_box()
            .iter()
            .zip(divisor.exponent_box())
            .map(|(y, g)| (y.0 - g.0, y.1 - g.1))
            .collect();
        if window.iter().any(|(lo, hi)| lo > hi) {
            return Err(fail("support box"));
        }
        let mut rem = self.clone();
        let mut quot = TorusElement::zero(&self.frame);
        while let Some((rexp, rc)) = rem.leading() {
            let b = vsub(rexp, &gexp);
            if b.iter().zip(&window).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(fail("support box"));
            }
            // lead(g) * c M(b) = c_g c q^{L(g,b)/2} M(g + b) on the left side.
            let twist = match side {
                Side::Left => self.frame.form(&gexp, &b),
                Side::Right => self.frame.form(&b, &gexp),
            };
            let c = rc
                .div_exact(&gc)
                .map_err(|e: QCoeffError| fail(&e.to_string()))?
                .shift(-twist);
            let step = TorusElement::term(&self.frame, c, b);
            let prod = match side {
                Side::Left => divisor * &step,
                Side::Right => &step * divisor,
            };
            rem = &rem - &prod;
            quot = &quot + &step;
        }
        Ok(quot)
    }

    /// Writes `self = sum_j X_k^j c_j` with every `c_j` free of `X_k`.
    pub fn decompose_along(&self, k: usize) -> Decomposition {
        assert!(k < self.rank(), "direction {k} out of range");
        let mut parts: BTreeMap<i64, TorusElement> = BTreeMap::new();
        for (c, coef) in &self.terms {
            let j = c[k];
            let mut r = c.clone();
            r[k] = 0;
            // M(c) = q^{-j L(e_k, r)/2} M(e_k)^j M(r)
            let mut ek = vec![0; self.rank()];
            ek[k] = 1;
            let shift = -j * self.frame.form(&ek, &r);
            parts
                .entry(j)
                .or_insert_with(|| TorusElement::zero(&self.frame))
                .add_term(r, coef.shift(shift));
        }
        parts.retain(|_, v| !v.is_zero());
        Decomposition { direction: k, frame: self.frame.clone(), parts }
    }

    /// Evaluates every coefficient at `q^{1/2} = 1`; `M(c)` becomes `x^c`.
    pub fn specialize_q1(&self) -> Laurent {
        Laurent::from_terms(self.rank(), self.terms.iter().map(|(e, c)| (e.clone(), c.eval_at_one())))
    }

    /// Largest `v` with `self in p^v T`; infinite for zero.
    pub fn p_divisible(&self) -> Valuation {
        self.terms.values().map(QCoeff::p_valuation).min().unwrap_or(Valuation::Infinite)
    }

    pub fn divide_by_p_exact(&self) -> Result<TorusElement, TorusError> {
        let mut out = TorusElement::zero(&self.frame);
        for (e, c) in &self.terms {
            let d = c.divide_by_p_exact().map_err(|err| TorusError::NotDivisible(err.to_string()))?;
            out.add_term(e.clone(), d);
        }
        Ok(out)
    }

    /// Coefficients with respect to the ordered basis `X_1^{a_1} ... X_m^{a_m}`.
    pub fn to_ordered_basis(&self) -> BTreeMap<ExponentVector, QCoeff> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.shift(-self.frame.ordering_shift(e))))
            .collect()
    }

    /// Inverse of [`TorusElement::to_ordered_basis`].
    pub fn from_ordered_basis(
        frame: &Arc<ToricFrame>,
        coeffs: &BTreeMap<ExponentVector, QCoeff>,
    ) -> Result<TorusElement, TorusError> {
        TorusElement::from_terms(
            frame,
            coeffs.iter().map(|(e, c)| (e.clone(), c.shift(frame.ordering_shift(e)))),
        )
    }

    /// `d . c` for every exponent `c` in the support.
    pub fn exponents(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.terms.keys()
    }

    /// Display using variable names inside `M(...)` rather than `M[...]`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        ElementDisplay { elem: self, names: Some(names) }
    }

    /// Parses the canonical text form against `frame`.
    pub fn parse(frame: &Arc<ToricFrame>, s: &str) -> Result<TorusElement, TorusError> {
        let err = |why: &str| TorusError::Parse(format!("{why} in `{s}`"));
        let body = s.trim();
        if body == "0" {
            return Ok(TorusElement::zero(frame));
        }
        let mut out = TorusElement::zero(frame);
        for piece in split_top_level(body) {
            let (coef, mono) = piece.rsplit_once("* M[").ok_or_else(|| err("missing `* M[`"))?;
            let coef = coef.trim();
            let coef = coef.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(coef);
            let coef: QCoeff = coef.parse().map_err(|e: QCoeffError| err(&e.to_string()))?;
            let mono = mono.trim().strip_suffix(']').ok_or_else(|| err("missing `]`"))?;
            let exp: Result<Vec<i64>, _> = mono.split(',').map(|x| x.trim().parse::<i64>()).collect();
            let exp = exp.map_err(|_| err("bad exponent"))?;
            frame.check_len(&exp)?;
            out.add_term(exp, coef);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

struct ElementDisplay<'a> {
    elem: &'a TorusElement,
    names: Option<&'a [String]>,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.elem.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.len() > 1 {
                write!(f, "({c}) * ")?;
            } else {
                write!(f, "{c} * ")?;
            }
            match self.names {
                None => {
                    f.write_str("M[")?;
                    for (j, x) in e.iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{x}")?;
                    }
                    f.write_str("]")?;
                }
                Some(names) => {
                    f.write_str("M(")?;
                    write_monomial(f, e, names)?;
                    f.write_str(")")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for TorusElement {
    /// Canonical form: lex-ascending terms, each `<QCoeff> * M[c_1,...,c_m]`,
    /// multi-term coefficients parenthesized, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ElementDisplay { elem: self, names: None })
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement[{}]({self})", self.frame.label)
    }
}

impl<'a> Add<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn add(self, rhs: &TorusElement) -> TorusElement {
        self.try_add(rhs).expect("frame mismatch in addition")
    }
}

impl<'a> Sub<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn sub(self, rhs: &TorusElement) -> TorusElement {
        self.try_sub(rhs).expect("frame mismatch in subtraction")
    }
}

impl<'a> Mul<&'a TorusElement> for &'a TorusElement {
    type Output = TorusElement;
    fn mul(self, rhs: &TorusElement) -> TorusElement {
        self.try_mul(rhs).expect("frame mismatch in multiplication")
    }
}

impl Neg for &TorusElement {
    type Output = TorusElement;
    fn neg(self) -> TorusElement {
        self.scalar_mul(&QCoeff::from_int(-1))
    }
}

/// `x = sum_j X_k^j c_j` with each `c_j` supported on `{c : c_k = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub direction: usize,
    pub frame: Arc<ToricFrame>,
    pub parts: BTreeMap<i64, TorusElement>,
}

impl Decomposition {
    pub fn part(&self, j: i64) -> TorusElement {
        self.parts.get(&j).cloned().unwrap_or_else(|| TorusElement::zero(&self.frame))
    }

    pub fn reassemble(&self) -> TorusElement {
        let mut acc = TorusElement::zero(&self.frame);
        for (&j, c) in &self.parts {
            let mut e = vec![0; self.frame.rank()];
            e[self.direction] = j;
            acc = &acc + &(&TorusElement::monomial(&self.frame, e) * c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::rat;

    fn frame() -> Arc<ToricFrame> {
        ToricFrame::new(IntMatrix::new(&[&[0, -1], &[1, 0]]), "test").unwrap()
    }

    fn m(f: &Arc<ToricFrame>, e: &[i64]) -> TorusElement {
        TorusElement::monomial(f, e.to_vec())
    }

    /// Word oracle: bubble-sort a word of generators with
    /// `X_a X_b = q^{l_ab} X_b X_a`, then normalize the ordered monomial
    /// `X^c = q^{sum_{i<j} c_i c_j l_ij / 2} M(c)`. Returns the half-exponent
    /// `s` with `word = q^{s/2} M(c)`.
    fn word_oracle(l: &IntMatrix, word: &[usize]) -> (i64, Vec<i64>) {
        let mut w = word.to_vec();
        let mut half = 0;
        for pass in 0..w.len() {
            for i in 0..w.len().saturating_sub(1 + pass) {
                if w[i] > w[i + 1] {
                    half += 2 * l[(w[i], w[i + 1])];
                    w.swap(i, i + 1);
                }
            }
        }
        let mut c = vec![0; l.rows()];
        for &g in &w {
            c[g] += 1;
        }
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                half += c[i] * c[j] * l[(i, j)];
            }
        }
        (half, c)
    }

    fn word_of(e: &[i64]) -> Vec<usize> {
        e.iter().enumerate().flat_map(|(i, &n)| std::iter::repeat(i).take(n as usize)).collect()
    }

    #[test]
    fn monomial_mul_matches_word_oracle() {
        let l = IntMatrix::new(&[&[0, 2, -1], &[-2, 0, 3], &[1, -3, 0]]);
        let f = ToricFrame::new(l.clone(), "w").unwrap();
        for a in [[1, 0, 0], [0, 2, 1], [1, 1, 1], [3, 0, 2]] {
            for b in [[0, 1, 0], [2, 0, 1], [0, 0, 3], [1, 2, 0]] {
                let (sa, ca) = word_oracle(&l, &word_of(&a));
                let (sb, cb) = word_oracle(&l, &word_of(&b));
                let mut w = word_of(&a);
                w.extend(word_of(&b));
                let (sab, cab) = word_oracle(&l, &w);
                // M(a) M(b) = q^{(sab - sa - sb)/2} M(a+b)
                let (coef, sum) = f.monomial_mul(&ca, &cb).unwrap();
                assert_eq!(sum, cab);
                assert_eq!(coef, QCoeff::q_pow(sab - sa - sb));
            }
        }
    }

    #[test]
    fn monomial_mul_examples() {
        let f = frame();
        let (c, e) = f.monomial_mul(&[1, 0], &[0, 1]).unwrap();
        assert_eq!((c, e), (QCoeff::q_pow(-1), vec![1, 1]));
        assert_eq!(word_oracle(f.commutation(), &[0, 1]), (-1, vec![1, 1]));
        let (c, e) = f.monomial_mul(&[0, 1], &[1, 0]).unwrap();
        assert_eq!((c, e), (QCoeff::q_pow(1), vec![1, 1]));
        assert_eq!(word_oracle(f.commutation(), &[1, 0]), (1, vec![1, 1]));
        let (c, e) = f.monomial_mul(&[3, -2], &[-3, 2]).unwrap();
        assert_eq!((c, e), (QCoeff::one(), vec![0, 0]));
        assert!(matches!(f.monomial_mul(&[1], &[0, 1]), Err(TorusError::DimensionMismatch { .. })));
    }

    #[test]
    fn generator_relation() {
        let f = frame();
        let (x1, x2) = (TorusElement::generator(&f, 0), TorusElement::generator(&f, 1));
        let lhs = &x1 * &x2;
        let rhs = (&x2 * &x1).scalar_mul(&QCoeff::q_pow(2 * f.commutation()[(0, 1)]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn arithmetic_examples() {
        let f = frame();
        assert_eq!(&m(&f, &[1, 0]) * &m(&f, &[-1, 0]), TorusElement::one(&f));
        assert!((&m(&f, &[1, 0]) + &(-&m(&f, &[1, 0]))).is_zero());
        let lhs = &(&m(&f, &[1, 0]) + &m(&f, &[0, 1])) * &m(&f, &[1, 0]);
        let expected = &m(&f, &[2, 0]) + &TorusElement::term(&f, QCoeff::q_pow(1), vec![1, 1]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn division_examples() {
        let f = frame();
        let g = &m(&f, &[1, 0]) + &m(&f, &[0, 1]);
        assert_eq!(g.left_divide_exact(&g).unwrap(), TorusElement::one(&f));
        let y = &m(&f, &[2, 0]) + &TorusElement::term(&f, QCoeff::q_pow(1), vec![1, 1]);
        assert_eq!(y.left_divide_exact(&g).unwrap(), m(&f, &[1, 0]));
        let g2 = &m(&f, &[1, 0]) + &TorusElement::one(&f);
        assert!(matches!(m(&f, &[0, 1]).left_divide_exact(&g2), Err(TorusError::NotDivisible(_))));
        assert!(matches!(m(&f, &[0, 1]).right_divide_exact(&g2), Err(TorusError::NotDivisible(_))));
        assert_eq!(y.left_divide_exact(&TorusElement::zero(&f)), Err(TorusError::DivisionByZero));
        // right division mirrors: (M(e1) + M(e2)) * M(e1) read as h * g with g = M(e1).
        assert_eq!(y.right_divide_exact(&m(&f, &[1, 0])).unwrap(), g);
    }

    #[test]
    fn decomposition_examples() {
        let f = frame();
        let d = m(&f, &[0, 1]).decompose_along(0);
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.part(0), m(&f, &[0, 1]));
        let x = &m(&f, &[1, 1]) + &m(&f, &[2, 0]);
        let d = x.decompose_along(0);
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.part(1), TorusElement::term(&f, QCoeff::q_pow(1), vec![0, 1]));
        assert_eq!(d.part(2), TorusElement::one(&f));
        assert_eq!(d.reassemble(), x);
        assert!(TorusElement::zero(&f).decompose_along(0).parts.is_empty());
    }

    #[test]
    fn specialization_examples() {
        let f = frame();
        let x = TorusElement::term(&f, QCoeff::q_pow(1), vec![1, 0]);
        assert_eq!(x.specialize_q1(), Laurent::var(2, 0));
        let y = TorusElement::term(&f, QCoeff::from_ints(&[(2, 1), (0, -1)]), vec![0, 1]);
        assert!(y.specialize_q1().is_zero());
        let z = &m(&f, &[-1, 1]) + &m(&f, &[-1, 0]);
        let expected = (&Laurent::var(2, 1) + &Laurent::one(2)).div_exact(&Laurent::var(2, 0)).unwrap();
        assert_eq!(z.specialize_q1(), expected);
    }

    #[test]
    fn p_divisibility_examples() {
        let f = frame();
        let q_minus_1 = QCoeff::from_ints(&[(2, 1), (0, -1)]);
        let x = &TorusElement::term(&f, q_minus_1, vec![1, 0]) + &TorusElement::term(&f, QCoeff::p(), vec![0, 1]);
        assert_eq!(x.p_divisible(), Valuation::Finite(1));
        assert_eq!(m(&f, &[1, 0]).p_divisible(), Valuation::Finite(0));
        assert_eq!(TorusElement::zero(&f).p_divisible(), Valuation::Infinite);
        assert_eq!(x.divide_by_p_exact().unwrap().scalar_mul(&QCoeff::p()), x);
    }

    #[test]
    fn ordered_basis_conversion() {
        let f = frame();
        // X_1 X_2 = q^{-1/2} M(e1+e2): ordered coefficient of M(e1+e2) is q^{1/2}.
        let x = m(&f, &[1, 1]);
        let ordered = x.to_ordered_basis();
        assert_eq!(ordered[&vec![1, 1]], QCoeff::q_pow(1));
        assert_eq!(TorusElement::from_ordered_basis(&f, &ordered).unwrap(), x);
        let x1x2 = &TorusElement::generator(&f, 0) * &TorusElement::generator(&f, 1);
        assert_eq!(x1x2.to_ordered_basis()[&vec![1, 1]], QCoeff::one());
    }

    #[test]
    fn frame_checks() {
        let f = frame();
        let g = ToricFrame::new(IntMatrix::new(&[&[0, 1], &[-1, 0]]), "other").unwrap();
        assert!(matches!(
            m(&f, &[1, 0]).try_mul(&m(&g, &[1, 0])),
            Err(TorusError::FrameMismatch(..))
        ));
        assert!(matches!(
            ToricFrame::new(IntMatrix::new(&[&[0, 1], &[1, 0]]), "bad"),
            Err(TorusError::NotSkewSymmetric(0, 1))
        ));
    }

    #[test]
    fn text_roundtrip() {
        let f = frame();
        let x = &TorusElement::term(&f, QCoeff::from_terms([(1, rat(2)), (-3, rat(-1))]), vec![-1, 2])
            + &m(&f, &[0, 0]);
        let s = x.to_string();
        assert_eq!(s, "(-1*q^(-3/2) + 2*q^(1/2)) * M[-1,2] + 1 * M[0,0]");
        assert_eq!(TorusElement::parse(&f, &s).unwrap(), x);
        assert_eq!(TorusElement::parse(&f, "0").unwrap(), TorusElement::zero(&f));
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(m(&f, &[-1, 1]).display_with(&names).to_string(), "1 * M(a^-1*b)");
    }
}
