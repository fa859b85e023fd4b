//! Exact linear algebra: a dense [`Matrix`], an incremental sparse row
//! reducer, and the derived rank / nullspace / solve / signature routines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn sparse_row(&self, i: usize) -> SparseRow<F> {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect()
    }
}

/// A sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

/// `row - factor * other`, both sorted.
fn sub_scaled<F: Field>(row: &[(usize, F)], factor: &F, other: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            out.push((other[j].0, -(factor.clone() * other[j].1.clone())));
            j += 1;
        } else {
            let v = row[i].1.clone() - factor.clone() * other[j].1.clone();
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `a - b` for sparse rows.
pub fn sub_rows<F: Field>(a: &[(usize, F)], b: &[(usize, F)]) -> SparseRow<F> {
    sub_scaled(a, &F::one(), b)
}

/// Incremental Gaussian elimination over sparse rows.
///
/// Rows are reduced against the pivots seen so far as they arrive, so
/// systems with many redundant equations never materialize as a dense
/// matrix. Every stored row is monic at its pivot and has no entries left
/// of it.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, pivots: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against every stored pivot column.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut pos = 0;
        while pos < row.len() {
            let col = row[pos].0;
            match self.pivots.get(&col) {
                Some(pivot) => {
                    let factor = row[pos].1.clone();
                    row = sub_scaled(&row, &factor, pivot);
                    // Entries left of `col` are untouched, so resume here.
                }
                None => pos += 1,
            }
        }
        row
    }

    /// Adds a row; returns whether it was independent of the previous ones.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        let row = self.reduce(row);
        let Some((lead, lead_value)) = row.first().cloned() else {
            return false;
        };
        let inv = F::one() / lead_value;
        let row = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn insert_dense(&mut self, row: &[F]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        self.insert(sparse)
    }

    /// Reduced row echelon form as `(pivot column, row)` pairs in pivot order.
    pub fn into_rref(self) -> Vec<(usize, SparseRow<F>)> {
        let mut done: BTreeMap<usize, SparseRow<F>> = BTreeMap::new();
        for (pivot, mut row) in self.pivots.into_iter().rev() {
            // Clear every later pivot column; those rows are already reduced.
            let mut pos = 1;
            while pos < row.len() {
                let col = row[pos].0;
                match done.get(&col) {
                    Some(other) => {
                        let factor = row[pos].1.clone();
                        row = sub_scaled(&row, &factor, other);
                    }
                    None => pos += 1,
                }
            }
            done.insert(pivot, row);
        }
        done.into_iter().collect()
    }

    /// Basis of the vectors orthogonal to every inserted row, i.e. the right
    /// kernel of the matrix whose rows were inserted. One vector per free
    /// column, with a 1 in that column.
    pub fn nullspace(self) -> Vec<Vec<F>> {
        let cols = self.cols;
        let rref = self.into_rref();
        let pivot_cols: Vec<usize> = rref.iter().map(|(p, _)| *p).collect();
        let mut is_pivot = vec![false; cols];
        for &p in &pivot_cols {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(cols - rref.len());
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (p, row) in &rref {
                if let Ok(at) = row.binary_search_by_key(&free, |(c, _)| *c) {
                    v[*p] = -row[at].1.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Rank over the field, by exact elimination.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut reducer = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        reducer.insert(m.sparse_row(i));
    }
    reducer.rank()
}

/// Basis of the right kernel; its length is `cols - rank`.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let mut reducer = RowReducer::new(m.cols());
    for i in 0..m.rows() {
        reducer.insert(m.sparse_row(i));
    }
    reducer.nullspace()
}

/// Some exact solution of `m x = b`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Option<Vec<F>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let mut reducer = RowReducer::new(n + 1);
    for (i, bi) in b.iter().enumerate() {
        let mut row = m.sparse_row(i);
        if !bi.is_zero() {
            row.push((n, bi.clone()));
        }
        reducer.insert(row);
    }
    let rref = reducer.into_rref();
    if rref.iter().any(|(p, _)| *p == n) {
        return Ok(None);
    }
    let mut x = vec![F::zero(); n];
    for (p, row) in rref {
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[p] = v.clone();
            }
        }
    }
    Ok(Some(x))
}

/// Inertia of a symmetric bilinear form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

impl Inertia {
    /// `positive - negative`.
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Diagonalizes a symmetric matrix by congruence and returns the diagonal.
///
/// A zero pivot is replaced by a nonzero diagonal entry further down when one
/// exists, and otherwise by `x_k + x_j` for some `j` with a nonzero coupling,
/// which makes the new pivot `2 a_kj`.
#[allow(clippy::needless_range_loop)] // row and column operations read clearer indexed
pub fn congruence_diagonal<F: Field>(m: &Matrix<F>) -> Result<Vec<F>> {
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = m.rows();
    let mut a: Vec<Vec<F>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Row and column operation: x_k <- x_k + x_j.
                for c in 0..n {
                    let v = a[k][c].clone() + a[j][c].clone();
                    a[k][c] = v;
                }
                for r in 0..n {
                    let v = a[r][k].clone() + a[r][j].clone();
                    a[r][k] = v;
                }
            }
        }
        let pivot = a[k][k].clone();
        if !pivot.is_zero() {
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone() / pivot.clone();
                for j in k + 1..n {
                    if !a[k][j].is_zero() {
                        let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                        a[i][j] = v;
                    }
                }
                a[i][k] = F::zero();
            }
            // Row k is still read above, so clear it only once the column is done.
            for j in k + 1..n {
                a[k][j] = F::zero();
            }
        }
        diag.push(pivot);
    }
    Ok(diag)
}

/// Exact inertia of a symmetric matrix over an ordered field.
pub fn signature<F: Field + PartialOrd>(m: &Matrix<F>) -> Result<Inertia> {
    let diag = congruence_diagonal(m)?;
    let zero = F::zero();
    let mut out = Inertia { positive: 0, negative: 0, null: 0 };
    for d in diag {
        if d > zero {
            out.positive += 1;
        } else if d < zero {
            out.negative += 1;
        } else {
            out.null += 1;
        }
    }
    Ok(out)
}
