//! Breadth-first enumeration of the exchange graph up to a depth bound.
//!
//! Seeds are identified up to simultaneous permutation of the exchangeable
//! indices (variables and `B~` together). Each BFS layer is mutated in
//! parallel; deduplication is sequential in a fixed order, so the result
//! does not depend on the thread count.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::intlin::IntMatrix;
use crate::laurent::Laurent;
use crate::seed::{ClassicalSeed, MutationPath, QuantumSeed, SeedError};

/// What the enumerator needs from a seed.
pub trait ExchangeSeed: Clone + Send + Sync {
    type Var: Clone;
    fn n_ex(&self) -> usize;
    fn b_tilde(&self) -> &IntMatrix;
    fn var(&self, i: usize) -> &Self::Var;
    fn var_key(&self, i: usize) -> String;
    fn path(&self) -> &MutationPath;
    fn mutate(&self, k: usize) -> Result<Self, SeedError>;
}

impl ExchangeSeed for QuantumSeed {
    type Var = crate::qtorus::TorusElement;
    fn n_ex(&self) -> usize {
        self.pair().n_ex()
    }
    fn b_tilde(&self) -> &IntMatrix {
        self.pair().b_tilde()
    }
    fn var(&self, i: usize) -> &Self::Var {
        &self.vars()[i]
    }
    fn var_key(&self, i: usize) -> String {
        self.vars()[i].to_string()
    }
    fn path(&self) -> &MutationPath {
        QuantumSeed::path(self)
    }
    fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        QuantumSeed::mutate(self, k)
    }
}

impl ExchangeSeed for ClassicalSeed {
    type Var = Laurent;
    fn n_ex(&self) -> usize {
        self.b_tilde().cols()
    }
    fn b_tilde(&self) -> &IntMatrix {
        ClassicalSeed::b_tilde(self)
    }
    fn var(&self, i: usize) -> &Self::Var {
        &self.vars()[i]
    }
    fn var_key(&self, i: usize) -> String {
        self.vars()[i].to_string()
    }
    fn path(&self) -> &MutationPath {
        ClassicalSeed::path(self)
    }
    fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        ClassicalSeed::mutate(self, k)
    }
}

/// Permutation-invariant identity of a seed: sorted exchangeable variable
/// keys, frozen keys in place, and `B~` permuted to match.
pub fn seed_key<S: ExchangeSeed>(s: &S) -> (Vec<String>, Vec<Vec<i64>>) {
    let n = s.n_ex();
    let m = s.b_tilde().rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let keys: Vec<String> = (0..m).map(|i| s.var_key(i)).collect();
    perm.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let rows: Vec<usize> = perm.iter().copied().chain(n..m).collect();
    let b = s.b_tilde().permuted(&rows, &perm);
    (rows.iter().map(|&i| keys[i].clone()).collect(), b.to_rows())
}

#[derive(Debug, Clone)]
pub struct ExchangeGraph<S: ExchangeSeed> {
    /// Seeds in discovery order; index 0 is the initial seed.
    pub seeds: Vec<S>,
    /// BFS depth of each seed.
    pub depth: Vec<usize>,
    /// `neighbors[i][k]` is the seed reached from `i` by `mu_k`, if expanded.
    pub neighbors: Vec<Vec<Option<usize>>>,
    /// True when every mutation of every seed found lands on a known seed.
    pub closed: bool,
    pub max_depth: usize,
}

impl<S: ExchangeSeed> ExchangeGraph<S> {
    pub fn num_seeds(&self) -> usize {
        self.seeds.len()
    }

    /// Distinct exchangeable (non-frozen) variables, in discovery order.
    pub fn variables(&self) -> Vec<(String, S::Var)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in &self.seeds {
            for i in 0..s.n_ex() {
                let key = s.var_key(i);
                if seen.insert(key.clone()) {
                    out.push((key, s.var(i).clone()));
                }
            }
        }
        out
    }

    pub fn num_variables(&self) -> usize {
        self.variables().len()
    }

    pub fn edges(&self) -> usize {
        self.neighbors.iter().flatten().filter(|x| x.is_some()).count()
    }
}

/// BFS to `max_depth` mutations. `closed` means closure was reached: the
/// last layer produced no new seeds.
pub fn enumerate_exchange_graph<S: ExchangeSeed>(initial: S, max_depth: usize) -> Result<ExchangeGraph<S>, SeedError> {
    let n = initial.n_ex();
    let mut index: BTreeMap<(Vec<String>, Vec<Vec<i64>>), usize> = BTreeMap::new();
    index.insert(seed_key(&initial), 0);
    let mut seeds = vec![initial];
    let mut depth = vec![0];
    let mut neighbors: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    let mut frontier = vec![0usize];
    let mut closed = false;
    for d in 0..=max_depth {
        if frontier.is_empty() {
            closed = true;
            break;
        }
        if d == max_depth {
            // check whether the last layer still leads anywhere new
            let jobs: Vec<(usize, usize)> =
                frontier.iter().flat_map(|&i| (0..n).map(move |k| (i, k))).collect();
            let keys: Vec<_> = jobs
                .par_iter()
                .map(|&(i, k)| seeds[i].mutate(k).map(|s| seed_key(&s)))
                .collect::<Result<_, _>>()?;
            closed = keys.iter().all(|key| index.contains_key(key));
            break;
        }
        let jobs: Vec<(usize, usize)> = frontier
            .iter()
            .flat_map(|&i| (0..n).map(move |k| (i, k)))
            .filter(|&(i, k)| neighbors[i][k].is_none())
            .collect();
        let results: Vec<S> = jobs
            .par_iter()
            .map(|&(i, k)| seeds[i].mutate(k))
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for ((i, k), s) in jobs.into_iter().zip(results) {
            let key = seed_key(&s);
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    let j = seeds.len();
                    index.insert(key, j);
                    seeds.push(s);
                    depth.push(d + 1);
                    neighbors.push(vec![None; n]);
                    next.push(j);
                    j
                }
            };
            neighbors[i][k] = Some(j);
        }
        frontier = next;
    }
    Ok(ExchangeGraph { seeds, depth, neighbors, closed, max_depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::bundled;

    #[test]
    fn a2_closes_at_five() {
        let g = enumerate_exchange_graph(QuantumSeed::initial(bundled::a2()), 10).unwrap();
        assert!(g.closed);
        assert_eq!((g.num_seeds(), g.num_variables()), (5, 5));
        let c = enumerate_exchange_graph(ClassicalSeed::initial(bundled::a2().b_tilde().clone()), 10).unwrap();
        assert!(c.closed);
        assert_eq!((c.num_seeds(), c.num_variables()), (5, 5));
    }

    #[test]
    fn rank_one_closes_at_two() {
        let g = enumerate_exchange_graph(QuantumSeed::initial(bundled::rank_one_frozen()), 4).unwrap();
        assert!(g.closed);
        assert_eq!((g.num_seeds(), g.num_variables()), (2, 2));
    }

    #[test]
    fn finite_type_counts() {
        let g = enumerate_exchange_graph(QuantumSeed::initial(bundled::a2_principal()), 8).unwrap();
        assert!(g.closed);
        assert_eq!((g.num_seeds(), g.num_variables()), (5, 5));
        let g = enumerate_exchange_graph(ClassicalSeed::initial(bundled::a3_principal().b_tilde().clone()), 12).unwrap();
        assert!(g.closed);
        assert_eq!((g.num_seeds(), g.num_variables()), (14, 9));
    }

    #[test]
    fn shallow_bound_is_not_closed() {
        let g = enumerate_exchange_graph(QuantumSeed::initial(bundled::a2()), 1).unwrap();
        assert!(!g.closed);
        assert_eq!(g.num_seeds(), 3);
    }
}
