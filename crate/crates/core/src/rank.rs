//! Exact ranks of spanning sets.
//!
//! Rows are elements, columns are monomials. Over `Q` plain Gaussian
//! elimination; over `R = Q[q^{+-1/2}]` fraction-free (Bareiss) elimination,
//! which gives the rank over `Frac(R)` with every division exact in `R`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::laurent::Laurent;
use crate::qcoeff::{QCoeff, Rational};
use crate::qtorus::TorusElement;

/// Dense coefficient rows over a shared, sorted column index.
fn dense<K: Ord + Clone, V: Clone>(rows: &[BTreeMap<K, V>], zero: V) -> Vec<Vec<V>> {
    let mut cols: BTreeMap<K, usize> = BTreeMap::new();
    for r in rows {
        for k in r.keys() {
            let n = cols.len();
            cols.entry(k.clone()).or_insert(n);
        }
    }
    rows.iter()
        .map(|r| {
            let mut v = vec![zero.clone(); cols.len()];
            for (k, x) in r {
                v[cols[k]] = x.clone();
            }
            v
        })
        .collect()
}

pub fn rational_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &pivot;
            for j in col..ncols {
                let t = &f * &a[rank][j];
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `Frac(R)`. Bareiss step: `a_ij <- (p a_ij - a_ic a_rj) / p_prev`.
pub fn qcoeff_rank(mut a: Vec<Vec<QCoeff>>) -> usize {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = QCoeff::one();
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..a.len() {
            let aic = a[i][col].clone();
            for j in col..ncols {
                let num = &(&pivot * &a[i][j]) - &(&aic * &a[rank][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss quotient is exact");
            }
        }
        // columns left of `col` below the pivot row are already zero
        prev = pivot;
        rank += 1;
    }
    rank
}

pub fn laurent_rank(elems: &[Laurent]) -> usize {
    let rows: Vec<BTreeMap<Vec<i64>, Rational>> =
        elems.iter().map(|x| x.terms().map(|(e, c)| (e.clone(), c.clone())).collect()).collect();
    rational_rank(dense(&rows, Rational::zero()))
}

pub fn torus_rank(elems: &[TorusElement]) -> usize {
    let rows: Vec<BTreeMap<Vec<i64>, QCoeff>> =
        elems.iter().map(|x| x.terms().map(|(e, c)| (e.clone(), c.clone())).collect()).collect();
    qcoeff_rank(dense(&rows, QCoeff::zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::rat;

    #[test]
    fn rational() {
        let r = |v: &[i64]| v.iter().map(|&x| rat(x)).collect::<Vec<_>>();
        assert_eq!(rational_rank(vec![r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(rational_rank(vec![r(&[0, 1, 1]), r(&[1, 0, 1]), r(&[1, 1, 2])]), 2);
        assert_eq!(rational_rank(vec![]), 0);
    }

    #[test]
    fn over_r_exceeds_specialized_rank() {
        // rows (1, 1) and (1, q): dependent at q = 1, independent over Frac(R)
        let rows = vec![vec![QCoeff::one(), QCoeff::one()], vec![QCoeff::one(), QCoeff::q_pow(2)]];
        assert_eq!(qcoeff_rank(rows), 2);
        let rows = vec![
            vec![QCoeff::q_pow(1), QCoeff::q_pow(3)],
            vec![QCoeff::one(), QCoeff::q_pow(2)],
            vec![QCoeff::p(), QCoeff::zero()],
        ];
        assert_eq!(qcoeff_rank(rows), 2);
    }
}
