//! Small dense integer matrices and exact integer lattice reductions.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
pub struct RaggedMatrix {
    pub row: usize,
    pub expected: usize,
    pub found: usize,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. An empty row list gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, RaggedMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(RaggedMatrix { row: i, expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    /// Panicking variant of [`IntMatrix::from_rows`] for literals.
    pub fn new(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// `u^T A v`.
    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> i64 {
        debug_assert_eq!(u.len(), self.rows);
        debug_assert_eq!(v.len(), self.cols);
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let row = self.row(i);
            acc += ui * row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>();
        }
        acc
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.first_skew_violation().is_none()
    }

    /// First `(i, j)` with `a_ij != -a_ji`, scanning rows then columns.
    pub fn first_skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if self[(i, j)] != -self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reorders rows and columns: `out[(i, j)] = self[(rp[i], cp[j])]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(row_perm.len(), col_perm.len());
        for (i, &ri) in row_perm.iter().enumerate() {
            for (j, &cj) in col_perm.iter().enumerate() {
                out[(i, j)] = self[(ri, cj)];
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = RaggedMatrix;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, RaggedMatrix> {
        IntMatrix::from_rows(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", r.join(","))?;
        }
        f.write_str("]")
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Output rows are echelon with strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`. Zero rows
/// are dropped, so the result is a basis of the row lattice.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..width {
        if pivot_row == a.len() {
            break;
        }
        // Euclid on the column until at most one nonzero entry remains below pivot_row.
        loop {
            let best = (pivot_row..a.len())
                .filter(|&r| a[r][col] != 0)
                .min_by_key(|&r| a[r][col].abs());
            let Some(best) = best else { break };
            a.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..a.len() {
                if a[r][col] != 0 {
                    let f = a[r][col].div_euclid(a[pivot_row][col]);
                    let (top, rest) = a.split_at_mut(r);
                    for (x, y) in rest[0].iter_mut().zip(&top[pivot_row]) {
                        *x -= f * y;
                    }
                    if a[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][col] == 0 {
            continue;
        }
        if a[pivot_row][col] < 0 {
            a[pivot_row].iter_mut().for_each(|x| *x = -*x);
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    for &(pr, pc) in &pivots {
        let p = a[pr][pc];
        for r in 0..pr {
            let f = a[r][pc].div_euclid(p);
            if f != 0 {
                let (top, rest) = a.split_at_mut(pr);
                for (x, y) in top[r].iter_mut().zip(&rest[0]) {
                    *x -= f * y;
                }
            }
        }
    }
    a
}

/// Basis of the integer left kernel `{d in Z^m : d^T A = 0}` in Hermite form.
///
/// Unimodular row reduction of `[A | I]`; rows whose `A` part vanishes carry
/// kernel vectors in their identity part.
pub fn left_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let (m, n) = (a.rows(), a.cols());
    let mut aug: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..m).map(|j| i64::from(i == j)));
            r
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        loop {
            let best = (pivot_row..m)
                .filter(|&r| aug[r][col] != 0)
                .min_by_key(|&r| aug[r][col].abs());
            let Some(best) = best else { break };
            aug.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..m {
                if aug[r][col] != 0 {
                    let f = aug[r][col].div_euclid(aug[pivot_row][col]);
                    let (top, rest) = aug.split_at_mut(r);
                    for (x, y) in rest[0].iter_mut().zip(&top[pivot_row]) {
                        *x -= f * y;
                    }
                    if aug[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if aug[pivot_row][col] != 0 {
            pivot_row += 1;
        }
    }
    let kernel: Vec<Vec<i64>> = aug[pivot_row..].iter().map(|r| r[n..].to_vec()).collect();
    hermite_normal_form(&kernel)
}
