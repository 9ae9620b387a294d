//! Commutative Laurent polynomials `Q[x_1^{+-1}, ..., x_m^{+-1}]`.
//!
//! This is the target of specialization at `q = 1` and the home of classical
//! cluster variables. It is deliberately independent of the quantum torus
//! code so the two can cross-check each other.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::qcoeff::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars])
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, c, vec![0; nvars])
    }

    pub fn monomial(nvars: usize, exp: Vec<i64>) -> Self {
        Self::term(nvars, Rational::one(), exp)
    }

    pub fn term(nvars: usize, c: Rational, exp: Vec<i64>) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length");
        let mut out = Self::zero(nvars);
        out.add_term(exp, c);
        out
    }

    /// The variable `x_i` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e)
    }

    pub fn from_terms<I>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, Rational)>,
    {
        let mut out = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent length");
            out.add_term(e, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, exp: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    /// Terms in ascending lex order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    fn leading(&self) -> Option<(&Vec<i64>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Laurent::from_terms(self.nvars, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Laurent::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `prod_i vars[i]^exp[i]`, with negative powers divided out exactly.
    pub fn monomial_power(nvars: usize, vars: &[Laurent], exp: &[i64]) -> Result<Laurent, LaurentError> {
        let mut acc = Laurent::one(nvars);
        let mut denom = Laurent::one(nvars);
        for (v, &e) in vars.iter().zip(exp) {
            if e >= 0 {
                acc = &acc * &v.pow(e as u32);
            } else {
                denom = &denom * &v.pow((-e) as u32);
            }
        }
        acc.div_exact(&denom)
    }

    /// Per-variable `(min, max)` exponents over the support.
    fn exponent_box(&self) -> Vec<(i64, i64)> {
        (0..self.nvars)
            .map(|i| {
                let it = self.terms.keys().map(|e| e[i]);
                (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
            })
            .collect()
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Lex leading-term division. The quotient support must sit in the box
    /// cut out by the per-variable exponent ranges of dividend and divisor,
    /// which bounds the loop.
    pub fn div_exact(&self, divisor: &Laurent) -> Result<Laurent, LaurentError> {
        if self.nvars != divisor.nvars {
            return Err(LaurentError::DimensionMismatch(self.nvars, divisor.nvars));
        }
        let (dexp, dc) = divisor.leading().ok_or(LaurentError::DivisionByZero)?;
        let (dexp, dc) = (dexp.clone(), dc.clone());
        if self.is_zero() {
            return Ok(Laurent::zero(self.nvars));
        }
        let not_divisible = || LaurentError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let (ybox, gbox) = (self.exponent_box(), divisor.exponent_box());
        let window: Vec<(i64, i64)> = ybox
            .iter()
            .zip(&gbox)
            .map(|(y, g)| (y.0 - g.0, y.1 - g.1))
            .collect();
        if window.iter().any(|(lo, hi)| lo > hi) {
            return Err(not_divisible());
        }
        let mut rem = self.clone();
        let mut quot = Laurent::zero(self.nvars);
        while let Some((rexp, rc)) = rem.leading() {
            let e: Vec<i64> = rexp.iter().zip(&dexp).map(|(a, b)| a - b).collect();
            if e.iter().zip(&window).any(|(x, (lo, hi))| x < lo || x > hi) {
                return Err(not_divisible());
            }
            let c = rc / &dc;
            for (gexp, gc) in &divisor.terms {
                let shifted: Vec<i64> = gexp.iter().zip(&e).map(|(a, b)| a + b).collect();
                rem.add_term(shifted, -(gc * &c));
            }
            quot.add_term(e, c);
        }
        Ok(quot)
    }

    /// Formats with the given variable names (`x1`, `x2`, ... by default).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        LaurentDisplay { poly: self, names }
    }
}

struct LaurentDisplay<'a> {
    poly: &'a Laurent,
    names: &'a [String],
}

pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, exp: &[i64], names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in exp.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        match names.get(i) {
            Some(n) => f.write_str(n)?,
            None => write!(f, "x{}", i + 1)?,
        }
        if e != 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

impl fmt::Display for LaurentDisplay<'_> {
    /// Terms in descending lex order: `x1^-1*x2 + x1^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (exp, c)) in self.poly.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let is_const = exp.iter().all(|&e| e == 0);
            if is_const {
                write!(f, "{c}")?;
                continue;
            }
            if (-c).is_one() {
                f.write_str("-")?;
            } else if !c.is_one() {
                write!(f, "{c}*")?;
            }
            write_monomial(f, exp, self.names)?;
        }
        Ok(())
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(&rat(-1))
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Laurent::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Laurent {
        Laurent::var(2, i)
    }

    #[test]
    fn division_and_printing() {
        let one = Laurent::one(2);
        let n = &x(1) + &one;
        let q = n.div_exact(&x(0)).unwrap();
        assert_eq!(q.to_string(), "x1^-1*x2 + x1^-1");
        assert_eq!(&q * &x(0), n);
    }

    #[test]
    fn non_divisible() {
        let g = &x(0) + &Laurent::one(2);
        assert!(matches!(x(1).div_exact(&g), Err(LaurentError::NotDivisible { .. })));
        assert_eq!(x(1).div_exact(&Laurent::zero(2)), Err(LaurentError::DivisionByZero));
    }

    #[test]
    fn product_roundtrip() {
        let a = &(&x(0) + &x(1)).pow(3) + &Laurent::constant(2, rat(-2));
        let b = &(&x(0) * &x(0)) - &Laurent::monomial(2, vec![-1, 2]);
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn printing_coefficients() {
        let p = Laurent::from_terms(2, [(vec![1, 0], rat(-1)), (vec![0, 1], rat(3)), (vec![0, 0], rat(-2))]);
        assert_eq!(p.to_string(), "-x1 + 3*x2 + -2");
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(p.display_with(&names).to_string(), "-a + 3*b + -2");
    }
}
