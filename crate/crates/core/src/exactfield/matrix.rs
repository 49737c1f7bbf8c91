//! Dense exact matrices and Gaussian elimination.
//!
//! Elimination always picks the first usable row in the current column, so
//! every result (rank profile, kernel basis, particular solution) is a pure
//! function of the input entries.

use std::fmt;

use serde_json::Value;

use super::field::{Elem, FieldSpec};
use crate::error::{Error, Result};

pub type Vector = Vec<Elem>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

fn eliminate(field: &FieldSpec, rows: &mut [Vector], ncols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
        if !field.is_one(&inv) {
            for x in rows[rank][col..].iter_mut() {
                if !field.is_zero(x) {
                    *x = field.mul(x, &inv);
                }
            }
        }
        let support: Vec<usize> = (col..ncols).filter(|&j| !field.is_zero(&rows[rank][j])).collect();
        let pivot_row = rows[rank].clone();
        let start = if full { 0 } else { rank + 1 };
        for r in start..rows.len() {
            if r == rank || field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = rows[r][col].clone();
            for &j in &support {
                let t = field.mul(&factor, &pivot_row[j]);
                rows[r][j] = field.sub(&rows[r][j], &t);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

impl Echelon {
    /// Basis of the right null space, one vector per free column in
    /// increasing column order.
    pub fn kernel_basis(&self, field: &FieldSpec) -> Vec<Vector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![field.zero(); self.cols];
                v[free] = field.one();
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = field.neg(&self.rows[r][free]);
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(e)) {
            return Err(Error::input(format!("entry {bad:?} does not belong to {field}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Integer matrix mapped into `field`. All rows must have equal length.
    pub fn from_ints(field: &FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_int(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn from_rows(field: &FieldSpec, cols: usize, rows: &[Vector]) -> Self {
        Self::from_fn(field, rows.len(), cols, |i, j| rows[i][j].clone())
    }

    /// Elementary matrix with a single 1 at `(i, j)`.
    pub fn unit(field: &FieldSpec, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        self.field.is_one(e)
                    } else {
                        self.field.is_zero(e)
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !f.is_zero(a) && !f.is_zero(x) {
                        acc = f.add(&acc, &f.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&Elem, &Elem) -> Elem) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        self.map(|e| self.field.neg(e))
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        self.map(|e| self.field.mul(c, e))
    }

    pub fn map(&self, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product, left factor major: entry ((i,k),(j,l)) = a_ij b_kl.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let f = &self.field;
        let (r2, c2) = (other.rows, other.cols);
        Matrix::from_fn(f, self.rows * r2, self.cols * c2, |i, j| {
            f.mul(self.get(i / r2, j / c2), other.get(i % r2, j % c2))
        })
    }

    pub fn block_diag(field: &FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(&self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Submatrix of the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix::from_fn(&self.field, rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut r = Matrix::identity(&self.field, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn echelon(&self) -> Echelon {
        let mut rows = self.row_vectors();
        let pivots = eliminate(&self.field, &mut rows, self.cols, true);
        rows.truncate(pivots.len());
        Echelon { rows, pivots, cols: self.cols }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vectors();
        eliminate(&self.field, &mut rows, self.cols, false).len()
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.echelon().kernel_basis(&self.field)
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space(&self) -> Vec<Vector> {
        self.echelon().pivots.iter().map(|&j| self.column(j)).collect()
    }

    /// One solution of `self * x = b`, or `None` if the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::input(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = Matrix::from_fn(&self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(&self.field, n));
        let ech = aug.echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(&self.field, n, n, |i, j| ech.rows[i][n + j].clone()))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Characteristic polynomial det(xI - A), least degree first, via
    /// reduction to Hessenberg form.
    pub fn charpoly(&self) -> Vec<Elem> {
        assert!(self.is_square());
        let f = &self.field;
        let n = self.rows;
        let mut h = self.row_vectors();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(&h[i][m - 1])) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let t = h[m][m - 1].clone();
            for i in m + 1..n {
                if f.is_zero(&h[i][m - 1]) {
                    continue;
                }
                let u = f.div(&h[i][m - 1], &t).expect("nonzero pivot");
                for j in 0..n {
                    let d = f.mul(&u, &h[m][j]);
                    h[i][j] = f.sub(&h[i][j], &d);
                }
                for row in h.iter_mut() {
                    let d = f.mul(&u, &row[i]);
                    row[m] = f.add(&row[m], &d);
                }
            }
        }
        let mut polys: Vec<Vec<Elem>> = vec![vec![f.one()]];
        for k in 1..=n {
            // (x - h_kk) p_{k-1}
            let prev = &polys[k - 1];
            let mut pk = vec![f.zero(); k + 1];
            for (d, c) in prev.iter().enumerate() {
                pk[d + 1] = f.add(&pk[d + 1], c);
                pk[d] = f.sub(&pk[d], &f.mul(&h[k - 1][k - 1], c));
            }
            let mut t = f.one();
            for i in (1..k).rev() {
                t = f.mul(&t, &h[i][i - 1]);
                if f.is_zero(&t) {
                    break;
                }
                let coef = f.mul(&t, &h[i - 1][k - 1]);
                for (d, c) in polys[i - 1].iter().enumerate() {
                    pk[d] = f.sub(&pk[d], &f.mul(&coef, c));
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| {
                    Value::Array((0..self.cols).map(|j| self.field.elem_to_json(self.get(i, j))).collect())
                })
                .collect(),
        )
    }

    /// Parses a row-major nested array. `cols_hint` fixes the column count
    /// for matrices with zero rows.
    pub fn from_json(field: &FieldSpec, v: &Value, cols_hint: Option<usize>) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| Error::input("matrix must be an array of rows"))?;
        let cols = match rows.first() {
            Some(r) => r.as_array().map(|r| r.len()).ok_or_else(|| Error::input("matrix row must be an array"))?,
            None => cols_hint.unwrap_or(0),
        };
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_array().ok_or_else(|| Error::input("matrix row must be an array"))?;
            if r.len() != cols {
                return Err(Error::input(format!("matrix row {i} has {} entries, expected {cols}", r.len())));
            }
            for e in r {
                data.push(field.elem_from_json(e)?);
            }
        }
        Matrix::new(field.clone(), rows.len(), cols, data)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| match self.get(i, j) {
                    Elem::Q(r) => r.to_string(),
                    Elem::F(x) => x.to_string(),
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally grown basis of a subspace of k^n that can express
/// members as combinations of the inserted vectors.
#[derive(Clone, Debug)]
pub struct SpanTracker {
    field: FieldSpec,
    dim: usize,
    originals: Vec<Vector>,
    // Echelon rows e_l = sum_c coeff[l][c] * originals[c], e_l[pivot_l] = 1.
    reduced: Vec<Vector>,
    coeffs: Vec<Vector>,
    pivots: Vec<usize>,
}

impl SpanTracker {
    pub fn new(field: &FieldSpec, dim: usize) -> Self {
        SpanTracker {
            field: field.clone(),
            dim,
            originals: Vec::new(),
            reduced: Vec::new(),
            coeffs: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.originals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.originals.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.originals
    }

    fn reduce_raw(&self, v: &[Elem]) -> (Vector, Vec<(usize, Elem)>) {
        let f = &self.field;
        let mut w = v.to_vec();
        let mut used = Vec::new();
        for (l, row) in self.reduced.iter().enumerate() {
            let p = self.pivots[l];
            if f.is_zero(&w[p]) {
                continue;
            }
            let a = w[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !f.is_zero(x) {
                    w[j] = f.sub(&w[j], &f.mul(&a, x));
                }
            }
            used.push((l, a));
        }
        (w, used)
    }

    /// Coefficients expressing `v` in the inserted vectors, if `v` lies in
    /// their span.
    pub fn express(&self, v: &[Elem]) -> Option<Vector> {
        let f = &self.field;
        let (w, used) = self.reduce_raw(v);
        if w.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        let mut c = vec![f.zero(); self.originals.len()];
        for (l, a) in used {
            for (k, x) in self.coeffs[l].iter().enumerate() {
                if !f.is_zero(x) {
                    c[k] = f.add(&c[k], &f.mul(&a, x));
                }
            }
        }
        Some(c)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let (w, _) = self.reduce_raw(v);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v` if it is independent of the current span; returns
    /// whether it was inserted.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field.clone();
        let (w, used) = self.reduce_raw(&v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        let k = self.originals.len();
        for c in self.coeffs.iter_mut() {
            c.push(f.zero());
        }
        let mut coeff = vec![f.zero(); k + 1];
        coeff[k] = f.one();
        for (l, a) in used {
            for (c, x) in self.coeffs[l].iter().enumerate() {
                if !f.is_zero(x) {
                    coeff[c] = f.sub(&coeff[c], &f.mul(&a, x));
                }
            }
        }
        let coeff: Vector = coeff.iter().map(|x| f.mul(x, &inv)).collect();
        let row: Vector = w.iter().map(|x| f.mul(x, &inv)).collect();
        self.originals.push(v);
        self.reduced.push(row);
        self.coeffs.push(coeff);
        self.pivots.push(p);
        true
    }
}
