//! Z-gradings: vectors `d` with `d^T B~ = 0`, degrees of elements, and
//! homogeneity along mutation.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::enumerate_exchange_graph;
use crate::intlin::{dot, left_kernel, IntMatrix};
use crate::laurent::Laurent;
use crate::qtorus::TorusElement;
use crate::seed::{ClassicalSeed, CompatiblePair, QuantumSeed, SeedError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("element is not homogeneous: degrees {0:?}")]
    NotHomogeneous(BTreeSet<i64>),
    #[error("the zero element has no degree")]
    ZeroElement,
    #[error("grading vector {0} is not in the grading lattice")]
    NotInLattice(GradingVector),
    #[error("grading vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("homogeneity violated along path [{path}]: {detail}")]
    HomogeneityViolation { path: String, detail: String },
    #[error(transparent)]
    Seed(#[from] SeedError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradingVector(pub Vec<i64>);

impl fmt::Display for GradingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A Z-basis of `{d : d^T B~ = 0}`, in row Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingLattice {
    b_tilde: IntMatrix,
    pub basis: Vec<GradingVector>,
}

pub fn grading_lattice(b_tilde: &IntMatrix) -> GradingLattice {
    let basis = left_kernel(b_tilde).into_iter().map(GradingVector).collect();
    GradingLattice { b_tilde: b_tilde.clone(), basis }
}

impl GradingLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership is decided by the defining equations, not the basis.
    pub fn contains(&self, d: &GradingVector) -> bool {
        d.0.len() == self.b_tilde.rows() && (0..self.b_tilde.cols()).all(|k| dot(&d.0, &self.b_tilde.col(k)) == 0)
    }
}

/// Anything with a support of exponent vectors.
pub trait Graded {
    fn support(&self) -> Vec<&Vec<i64>>;
}

impl Graded for TorusElement {
    fn support(&self) -> Vec<&Vec<i64>> {
        self.exponents().collect()
    }
}

impl Graded for Laurent {
    fn support(&self) -> Vec<&Vec<i64>> {
        self.terms().map(|(e, _)| e).collect()
    }
}

pub fn degree_of<G: Graded>(x: &G, d: &GradingVector) -> Result<i64, GradingError> {
    let support = x.support();
    let first = support.first().ok_or(GradingError::ZeroElement)?;
    if first.len() != d.0.len() {
        return Err(GradingError::DimensionMismatch { expected: first.len(), found: d.0.len() });
    }
    let degrees: BTreeSet<i64> = support.iter().map(|e| dot(e, &d.0)).collect();
    if degrees.len() == 1 {
        Ok(*degrees.iter().next().unwrap())
    } else {
        Err(GradingError::NotHomogeneous(degrees))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableDegree {
    /// 1-based comma-separated path of the first seed the variable was seen in.
    pub path: String,
    /// 1-based position in that seed.
    pub index: usize,
    pub variable: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub d: GradingVector,
    pub seeds: usize,
    pub relations_checked: usize,
    pub degrees: Vec<VariableDegree>,
}

fn violation(path: impl fmt::Display, detail: String) -> GradingError {
    GradingError::HomogeneityViolation { path: path.to_string(), detail }
}

/// Enumerates seeds to `max_depth` and checks, at every seed: quantum and
/// classical variables are homogeneous of equal degree, the degree vector
/// lies in the current grading lattice, and every exchange relation balances.
pub fn check_homogeneous_mutation(
    pair: &CompatiblePair,
    d: &GradingVector,
    max_depth: usize,
) -> Result<HomogeneityReport, GradingError> {
    if d.0.len() != pair.m() {
        return Err(GradingError::DimensionMismatch { expected: pair.m(), found: d.0.len() });
    }
    if !grading_lattice(pair.b_tilde()).contains(d) {
        return Err(GradingError::NotInLattice(d.clone()));
    }
    let graph = enumerate_exchange_graph(QuantumSeed::initial(pair.clone()), max_depth)?;
    let classical0 = ClassicalSeed::initial(pair.b_tilde().clone());
    let mut seen = BTreeSet::new();
    let mut degrees = Vec::new();
    let mut relations = 0;
    for s in &graph.seeds {
        let path = s.path();
        let c = classical0.mutate_path(path)?;
        let mut g = Vec::with_capacity(pair.m());
        for i in 0..pair.m() {
            let qd = degree_of(&s.vars()[i], d)
                .map_err(|e| violation(path, format!("quantum variable {}: {e}", i + 1)))?;
            let cd = degree_of(&c.vars()[i], d)
                .map_err(|e| violation(path, format!("classical variable {}: {e}", i + 1)))?;
            if qd != cd {
                return Err(violation(path, format!("variable {}: quantum degree {qd}, classical {cd}", i + 1)));
            }
            g.push(qd);
            let key = s.vars()[i].to_string();
            if i < pair.n_ex() && seen.insert(key.clone()) {
                degrees.push(VariableDegree { path: path.to_string(), index: i + 1, variable: key, degree: qd });
            }
        }
        let g = GradingVector(g);
        if !grading_lattice(s.pair().b_tilde()).contains(&g) {
            return Err(violation(path, format!("degree vector {g} is not in the mutated grading lattice")));
        }
        for k in 0..pair.n_ex() {
            let bin = s.exchange_binomial(k)?;
            let (dp, dm) = (dot(&g.0, &bin.b_plus), dot(&g.0, &bin.b_minus));
            let new = s.mutate(k)?;
            let dn = degree_of(&new.vars()[k], d)
                .map_err(|e| violation(new.path(), format!("quantum variable {}: {e}", k + 1)))?;
            if dp != dm || g.0[k] + dn != dp {
                return Err(violation(
                    new.path(),
                    format!("exchange at {}: deg x + deg x' = {}, monomial degrees {dp} and {dm}", k + 1, g.0[k] + dn),
                ));
            }
            relations += 1;
        }
    }
    Ok(HomogeneityReport { d: d.clone(), seeds: graph.num_seeds(), relations_checked: relations, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::bundled;

    #[test]
    fn lattice_examples() {
        let l = grading_lattice(&IntMatrix::new(&[&[0], &[1]]));
        assert_eq!(l.basis, vec![GradingVector(vec![1, 0])]);
        let l = grading_lattice(bundled::a2_principal().b_tilde());
        assert_eq!(l.basis, vec![GradingVector(vec![1, 0, 0, -1]), GradingVector(vec![0, 1, 1, 0])]);
        assert!(grading_lattice(bundled::a2().b_tilde()).is_zero());
    }

    #[test]
    fn degree_examples() {
        let s = QuantumSeed::initial(bundled::rank_one_frozen());
        let d = GradingVector(vec![1, 0]);
        assert_eq!(degree_of(&s.vars()[0], &d), Ok(1));
        let x1p = s.mutate(0).unwrap().vars()[0].clone();
        assert_eq!(degree_of(&x1p, &d), Ok(-1));
        let sum = &s.vars()[0] + &s.vars()[1];
        assert_eq!(degree_of(&sum, &d), Err(GradingError::NotHomogeneous([0, 1].into_iter().collect())));
        let zero = TorusElement::zero(s.frame());
        assert_eq!(degree_of(&zero, &d), Err(GradingError::ZeroElement));
    }

    #[test]
    fn homogeneity_examples() {
        let r = check_homogeneous_mutation(&bundled::rank_one_frozen(), &GradingVector(vec![1, 0]), 3).unwrap();
        assert_eq!(r.degrees.iter().map(|v| v.degree).collect::<Vec<_>>(), vec![1, -1]);
        let r = check_homogeneous_mutation(&bundled::a2_principal(), &GradingVector(vec![1, 0, 0, -1]), 6).unwrap();
        assert_eq!(r.degrees.len(), 5);
        let r = check_homogeneous_mutation(&bundled::a2(), &GradingVector(vec![0, 0]), 6).unwrap();
        assert!(r.degrees.iter().all(|v| v.degree == 0));
        assert!(matches!(
            check_homogeneous_mutation(&bundled::a2(), &GradingVector(vec![1, 0]), 2),
            Err(GradingError::NotInLattice(_))
        ));
    }
}
