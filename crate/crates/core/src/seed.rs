//! Compatible pairs, matrix and seed mutation, quantum and classical.
//!
//! Indices are 0-based in this API. Text forms (paths, names, the CLI) are
//! 1-based.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::intlin::IntMatrix;
use crate::laurent::Laurent;
use crate::qcoeff::QCoeff;
use crate::qtorus::{ExponentVector, ToricFrame, TorusElement, TorusError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("lambda is not skew-symmetric at row {row}, column {col}")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a compatible pair: {0}")]
    NotCompatible(String),
    #[error("principal part is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("mutation index {k} out of range (exchangeable indices 1..={n_ex})")]
    IndexOutOfRange { k: usize, n_ex: usize },
    #[error("exchange relation did not divide exactly along {path}: {detail}")]
    NonLaurent { path: String, detail: String },
    #[error("lambda mutation depends on the sign choice at direction {0}")]
    SignChoiceMismatch(usize),
}

/// A validated pair `(L, B~)` with `B~^T L = (D | 0)`, `D = diag(d)`, `d > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompatiblePair {
    lambda: IntMatrix,
    b_tilde: IntMatrix,
    d: Vec<i64>,
}

/// Validates `(lambda, b_tilde)` and extracts the compatibility datum.
pub fn check_compatible(lambda: IntMatrix, b_tilde: IntMatrix) -> Result<CompatiblePair, SeedError> {
    let m = lambda.rows();
    if !lambda.is_square() {
        return Err(SeedError::DimensionMismatch(format!(
            "lambda is {}x{}, expected square",
            lambda.rows(),
            lambda.cols()
        )));
    }
    if let Some((row, col)) = lambda.first_skew_violation() {
        return Err(SeedError::NotSkewSymmetric { row: row + 1, col: col + 1 });
    }
    if b_tilde.rows() != m {
        return Err(SeedError::DimensionMismatch(format!(
            "b_tilde has {} rows, lambda is {m}x{m}",
            b_tilde.rows()
        )));
    }
    let n_ex = b_tilde.cols();
    if n_ex > m {
        return Err(SeedError::DimensionMismatch(format!("b_tilde has {n_ex} columns but only {m} rows")));
    }
    let prod = b_tilde.transpose().mul(&lambda);
    let mut d = Vec::with_capacity(n_ex);
    for i in 0..n_ex {
        for j in 0..m {
            let v = prod[(i, j)];
            let ok = if i == j { v > 0 } else { v == 0 };
            if !ok {
                return Err(SeedError::NotCompatible(format!(
                    "(B~^T L) at row {}, column {} is {v}, expected {}",
                    i + 1,
                    j + 1,
                    if i == j { "a positive diagonal entry" } else { "0" }
                )));
            }
        }
        d.push(prod[(i, i)]);
    }
    let principal = principal_part(&b_tilde);
    skew_symmetrizer(&principal)?;
    Ok(CompatiblePair { lambda, b_tilde, d })
}

fn principal_part(b_tilde: &IntMatrix) -> IntMatrix {
    let n = b_tilde.cols();
    let idx: Vec<usize> = (0..n).collect();
    b_tilde.permuted(&idx, &idx)
}

/// Smallest positive integer `d` with `d_i b_ij = -d_j b_ji`, found by
/// propagating ratios over the connected components of `B`.
pub fn skew_symmetrizer(b: &IntMatrix) -> Result<Vec<i64>, SeedError> {
    let n = b.rows();
    for i in 0..n {
        if b[(i, i)] != 0 {
            return Err(SeedError::NotSkewSymmetrizable(format!("diagonal entry {} is nonzero", i + 1)));
        }
        for j in 0..n {
            let (x, y) = (b[(i, j)], b[(j, i)]);
            if (x == 0) != (y == 0) || (x != 0 && x.signum() == y.signum()) {
                return Err(SeedError::NotSkewSymmetrizable(format!(
                    "sign pattern of entries ({}, {}) and ({}, {})",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    // weights as (numerator, denominator)
    let mut w: Vec<Option<(i64, i64)>> = vec![None; n];
    for root in 0..n {
        if w[root].is_some() {
            continue;
        }
        w[root] = Some((1, 1));
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let (wn, wd) = w[i].unwrap();
            for j in 0..n {
                if b[(i, j)] == 0 {
                    continue;
                }
                // d_j = d_i * b_ij / (-b_ji)
                let (num, den) = (wn * b[(i, j)], wd * -b[(j, i)]);
                let g = num.gcd(&den) * den.signum();
                let cand = (num / g, den / g);
                match w[j] {
                    None => {
                        w[j] = Some(cand);
                        stack.push(j);
                    }
                    Some(existing) if existing != cand => {
                        return Err(SeedError::NotSkewSymmetrizable(format!(
                            "inconsistent symmetrizer ratios around entry ({}, {})",
                            i + 1,
                            j + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let lcm = w.iter().fold(1i64, |acc, x| acc.lcm(&x.unwrap().1));
    let d: Vec<i64> = w.iter().map(|x| x.unwrap().0 * (lcm / x.unwrap().1)).collect();
    let g = d.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(d.into_iter().map(|x| x / g.max(1)).collect())
}

/// Matrix mutation in direction `k` (0-based column index).
pub fn mutate_matrix(b_tilde: &IntMatrix, k: usize) -> Result<IntMatrix, SeedError> {
    if k >= b_tilde.cols() {
        return Err(SeedError::IndexOutOfRange { k: k + 1, n_ex: b_tilde.cols() });
    }
    let mut out = b_tilde.clone();
    for i in 0..b_tilde.rows() {
        for j in 0..b_tilde.cols() {
            out[(i, j)] = if i == k || j == k {
                -b_tilde[(i, j)]
            } else {
                let (bik, bkj) = (b_tilde[(i, k)], b_tilde[(k, j)]);
                b_tilde[(i, j)] + bik.max(0) * bkj.max(0) - (-bik).max(0) * (-bkj).max(0)
            };
        }
    }
    Ok(out)
}

/// The `m x m` matrix `E` with `L' = E^T L E`; `sign` is `+1` or `-1`.
pub fn e_matrix(b_tilde: &IntMatrix, k: usize, sign: i64) -> IntMatrix {
    let m = b_tilde.rows();
    let mut e = IntMatrix::identity(m);
    for i in 0..m {
        e[(i, k)] = if i == k { -1 } else { (-sign * b_tilde[(i, k)]).max(0) };
    }
    e
}

impl CompatiblePair {
    pub fn new(lambda: IntMatrix, b_tilde: IntMatrix) -> Result<Self, SeedError> {
        check_compatible(lambda, b_tilde)
    }

    pub fn m(&self) -> usize {
        self.lambda.rows()
    }

    pub fn n_ex(&self) -> usize {
        self.b_tilde.cols()
    }

    pub fn lambda(&self) -> &IntMatrix {
        &self.lambda
    }

    pub fn b_tilde(&self) -> &IntMatrix {
        &self.b_tilde
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    /// The exchangeable `n_ex x n_ex` block `B`.
    pub fn exchange_matrix(&self) -> IntMatrix {
        principal_part(&self.b_tilde)
    }

    fn check_index(&self, k: usize) -> Result<(), SeedError> {
        if k >= self.n_ex() {
            return Err(SeedError::IndexOutOfRange { k: k + 1, n_ex: self.n_ex() });
        }
        Ok(())
    }

    /// `mu_k(L, B~)`. Both sign choices of `E` are computed and must agree;
    /// the result carries the same `d`.
    pub fn mutate(&self, k: usize) -> Result<CompatiblePair, SeedError> {
        self.check_index(k)?;
        let lam = |sign| {
            let e = e_matrix(&self.b_tilde, k, sign);
            e.transpose().mul(&self.lambda).mul(&e)
        };
        let (plus, minus) = (lam(1), lam(-1));
        if plus != minus {
            return Err(SeedError::SignChoiceMismatch(k + 1));
        }
        let b = mutate_matrix(&self.b_tilde, k)?;
        let out = check_compatible(plus, b)?;
        if out.d != self.d {
            return Err(SeedError::NotCompatible(format!(
                "mutation at {} changed d from {:?} to {:?}",
                k + 1,
                self.d,
                out.d
            )));
        }
        Ok(out)
    }

    /// Pair with principal coefficients: `B~ = [B; I]` and
    /// `L = [[0, -D], [D, -DB]]`, where `D` is the skew-symmetrizer of `B`.
    /// For skew-symmetric `B` this is `[[0, -I], [I, -B]]` with `d = (1, ..., 1)`.
    pub fn principal(b: &IntMatrix) -> Result<CompatiblePair, SeedError> {
        let n = b.rows();
        if !b.is_square() {
            return Err(SeedError::DimensionMismatch(format!("B is {}x{}, expected square", b.rows(), b.cols())));
        }
        let d = skew_symmetrizer(b)?;
        let mut lambda = IntMatrix::zeros(2 * n, 2 * n);
        let mut bt = IntMatrix::zeros(2 * n, n);
        for i in 0..n {
            lambda[(i, n + i)] = -d[i];
            lambda[(n + i, i)] = d[i];
            bt[(n + i, i)] = 1;
            for j in 0..n {
                lambda[(n + i, n + j)] = -d[i] * b[(i, j)];
                bt[(i, j)] = b[(i, j)];
            }
        }
        check_compatible(lambda, bt)
    }
}

/// Exchange data in direction `k` of the current pair: `b_+ = sum [b_ik]_+ e_i`,
/// `b_- = sum [-b_ik]_+ e_i` and `m_+- = e_k^T L b_+-`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeBinomial {
    pub k: usize,
    pub b_plus: ExponentVector,
    pub b_minus: ExponentVector,
    pub m_plus: i64,
    pub m_minus: i64,
}

impl ExchangeBinomial {
    pub fn new(pair: &CompatiblePair, k: usize) -> Result<Self, SeedError> {
        pair.check_index(k)?;
        let col = pair.b_tilde.col(k);
        let b_plus: Vec<i64> = col.iter().map(|&b| b.max(0)).collect();
        let b_minus: Vec<i64> = col.iter().map(|&b| (-b).max(0)).collect();
        let mut ek = vec![0; pair.m()];
        ek[k] = 1;
        let m_plus = pair.lambda.bilinear(&ek, &b_plus);
        let m_minus = pair.lambda.bilinear(&ek, &b_minus);
        Ok(ExchangeBinomial { k, b_plus, b_minus, m_plus, m_minus })
    }

    /// Zero exchange column: both monomials are 1.
    pub fn is_degenerate(&self) -> bool {
        self.b_plus.iter().all(|&x| x == 0) && self.b_minus.iter().all(|&x| x == 0)
    }

    /// `q^{j m_+/2} M(b_+) + q^{j m_-/2} M(b_-)` in `frame`.
    pub fn q_binomial(&self, frame: &Arc<ToricFrame>, j: i64) -> TorusElement {
        &TorusElement::term(frame, QCoeff::q_pow(j * self.m_plus), self.b_plus.clone())
            + &TorusElement::term(frame, QCoeff::q_pow(j * self.m_minus), self.b_minus.clone())
    }

    /// `M(-e_k + b_+) + M(-e_k + b_-)`: the mutated generator written in the
    /// frame this binomial was computed from.
    pub fn mutated_generator(&self, frame: &Arc<ToricFrame>) -> TorusElement {
        let shifted = |b: &[i64]| {
            let mut v = b.to_vec();
            v[self.k] -= 1;
            v
        };
        &TorusElement::monomial(frame, shifted(&self.b_plus))
            + &TorusElement::monomial(frame, shifted(&self.b_minus))
    }
}

/// A mutation sequence from the initial seed, 0-based internally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MutationPath(pub Vec<usize>);

impl MutationPath {
    pub fn then(&self, k: usize) -> MutationPath {
        let mut v = self.0.clone();
        v.push(k);
        MutationPath(v)
    }

    /// Cancels adjacent repeats, since `mu_k mu_k = id`.
    pub fn reduced(&self) -> MutationPath {
        let mut out: Vec<usize> = Vec::new();
        for &k in &self.0 {
            if out.last() == Some(&k) {
                out.pop();
            } else {
                out.push(k);
            }
        }
        MutationPath(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn frame_label(&self) -> String {
        let r = self.reduced();
        if r.is_empty() {
            "initial".to_string()
        } else {
            format!("mu[{r}]")
        }
    }
}

impl fmt::Display for MutationPath {
    /// Comma-separated, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad mutation path `{0}`: expected comma-separated indices starting at 1")]
pub struct PathParseError(pub String);

impl FromStr for MutationPath {
    type Err = PathParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(MutationPath::default());
        }
        s.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(PathParseError(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(MutationPath)
    }
}

/// A quantum seed: current pair and frame, plus the current cluster variables
/// written as elements of the initial torus.
#[derive(Debug, Clone)]
pub struct QuantumSeed {
    pair: CompatiblePair,
    frame: Arc<ToricFrame>,
    initial: Arc<ToricFrame>,
    vars: Vec<TorusElement>,
    path: MutationPath,
}

impl PartialEq for QuantumSeed {
    fn eq(&self, other: &Self) -> bool {
        self.pair == other.pair && self.frame == other.frame && self.vars == other.vars
    }
}

fn torus_err(e: TorusError) -> SeedError {
    SeedError::DimensionMismatch(e.to_string())
}

impl QuantumSeed {
    pub fn initial(pair: CompatiblePair) -> Self {
        let frame = ToricFrame::new(pair.lambda.clone(), "initial").expect("pair lambda is skew-symmetric");
        let vars = (0..pair.m()).map(|i| TorusElement::generator(&frame, i)).collect();
        QuantumSeed { pair, initial: frame.clone(), frame, vars, path: MutationPath::default() }
    }

    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    /// Frame of this seed's own torus, with the current `L`.
    pub fn frame(&self) -> &Arc<ToricFrame> {
        &self.frame
    }

    pub fn initial_frame(&self) -> &Arc<ToricFrame> {
        &self.initial
    }

    pub fn vars(&self) -> &[TorusElement] {
        &self.vars
    }

    pub fn path(&self) -> &MutationPath {
        &self.path
    }

    pub fn exchange_binomial(&self, k: usize) -> Result<ExchangeBinomial, SeedError> {
        ExchangeBinomial::new(&self.pair, k)
    }

    /// Frame of `mu_k` of this seed, without computing its variables.
    pub fn adjacent_frame(&self, k: usize) -> Result<Arc<ToricFrame>, SeedError> {
        let pair = self.pair.mutate(k)?;
        ToricFrame::new(pair.lambda.clone(), self.path.then(k).frame_label()).map_err(torus_err)
    }

    /// `M_current(c)` as an element of the initial torus, for `c >= 0`:
    /// `q^{-s(c)/2} Y_1^{c_1} ... Y_m^{c_m}` with `s` from the current `L`.
    pub fn current_monomial(&self, c: &[i64]) -> TorusElement {
        assert!(c.iter().all(|&x| x >= 0), "current_monomial needs nonnegative exponents");
        let mut acc = TorusElement::one(&self.initial);
        for (y, &e) in self.vars.iter().zip(c) {
            if e > 0 {
                acc = &acc * &y.pow(e as u32);
            }
        }
        acc.scalar_mul(&QCoeff::q_pow(-self.frame.ordering_shift(c)))
    }

    /// Quantum seed mutation. The new variable is `M(-e_k + b_+) + M(-e_k + b_-)`
    /// in the current frame; in initial coordinates it is the exact left
    /// quotient of `q^{m_+/2} M(b_+) + q^{m_-/2} M(b_-)` by the old variable.
    pub fn mutate(&self, k: usize) -> Result<QuantumSeed, SeedError> {
        let bin = self.exchange_binomial(k)?;
        if bin.is_degenerate() {
            log::warn!("zero exchange column at direction {}: exchange binomial is 2", k + 1);
        }
        let numerator = &self.current_monomial(&bin.b_plus).scalar_mul(&QCoeff::q_pow(bin.m_plus))
            + &self.current_monomial(&bin.b_minus).scalar_mul(&QCoeff::q_pow(bin.m_minus));
        let path = self.path.then(k);
        let new_var = numerator.left_divide_exact(&self.vars[k]).map_err(|e| SeedError::NonLaurent {
            path: path.to_string(),
            detail: e.to_string(),
        })?;
        let pair = self.pair.mutate(k)?;
        let frame = ToricFrame::new(pair.lambda.clone(), path.frame_label()).map_err(torus_err)?;
        let mut vars = self.vars.clone();
        vars[k] = new_var;
        Ok(QuantumSeed { pair, frame, initial: self.initial.clone(), vars, path })
    }

    pub fn mutate_path(&self, path: &MutationPath) -> Result<QuantumSeed, SeedError> {
        path.0.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }
}

/// A classical seed over `Q[x_1^{+-1}, ..., x_m^{+-1}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalSeed {
    b_tilde: IntMatrix,
    vars: Vec<Laurent>,
    path: MutationPath,
}

impl ClassicalSeed {
    pub fn initial(b_tilde: IntMatrix) -> Self {
        let m = b_tilde.rows();
        let vars = (0..m).map(|i| Laurent::var(m, i)).collect();
        ClassicalSeed { b_tilde, vars, path: MutationPath::default() }
    }

    pub fn b_tilde(&self) -> &IntMatrix {
        &self.b_tilde
    }

    pub fn vars(&self) -> &[Laurent] {
        &self.vars
    }

    pub fn path(&self) -> &MutationPath {
        &self.path
    }

    /// `x'_k = (prod x_i^{[b_ik]_+} + prod x_i^{[-b_ik]_+}) / x_k`.
    pub fn mutate(&self, k: usize) -> Result<ClassicalSeed, SeedError> {
        if k >= self.b_tilde.cols() {
            return Err(SeedError::IndexOutOfRange { k: k + 1, n_ex: self.b_tilde.cols() });
        }
        let m = self.vars.len();
        let col = self.b_tilde.col(k);
        let mono = |sign: i64| {
            let mut acc = Laurent::one(m);
            for (x, &b) in self.vars.iter().zip(&col) {
                let e = (sign * b).max(0);
                if e > 0 {
                    acc = &acc * &x.pow(e as u32);
                }
            }
            acc
        };
        let path = self.path.then(k);
        let numerator = &mono(1) + &mono(-1);
        let new_var = numerator.div_exact(&self.vars[k]).map_err(|e| SeedError::NonLaurent {
            path: path.to_string(),
            detail: e.to_string(),
        })?;
        let mut vars = self.vars.clone();
        vars[k] = new_var;
        Ok(ClassicalSeed { b_tilde: mutate_matrix(&self.b_tilde, k)?, vars, path })
    }

    pub fn mutate_path(&self, path: &MutationPath) -> Result<ClassicalSeed, SeedError> {
        path.0.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }
}

/// Desk-scale pairs used throughout the tests and examples.
pub mod bundled {
    use super::*;

    /// `L = [[0,-1],[1,0]]`, `B~ = [[0],[1]]`: one exchangeable, one frozen.
    pub fn rank_one_frozen() -> CompatiblePair {
        CompatiblePair::new(IntMatrix::new(&[&[0, -1], &[1, 0]]), IntMatrix::new(&[&[0], &[1]])).unwrap()
    }

    /// Type `A_2` without frozen variables.
    pub fn a2() -> CompatiblePair {
        CompatiblePair::new(IntMatrix::new(&[&[0, 1], &[-1, 0]]), IntMatrix::new(&[&[0, 1], &[-1, 0]])).unwrap()
    }

    /// Type `A_2` with principal coefficients (`m = 4`).
    pub fn a2_principal() -> CompatiblePair {
        CompatiblePair::principal(&IntMatrix::new(&[&[0, 1], &[-1, 0]])).unwrap()
    }

    /// Type `A_3` (linear orientation) with principal coefficients (`m = 6`).
    pub fn a3_principal() -> CompatiblePair {
        CompatiblePair::principal(&IntMatrix::new(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])).unwrap()
    }

    pub fn all() -> Vec<(&'static str, CompatiblePair)> {
        vec![
            ("rank1-frozen", rank_one_frozen()),
            ("A2", a2()),
            ("A2-principal", a2_principal()),
            ("A3-principal", a3_principal()),
        ]
    }
}
